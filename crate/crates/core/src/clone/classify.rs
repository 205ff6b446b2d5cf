use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clone::galois::check_set;
use crate::error::Result;
use crate::relation::{relation_properties, BoolRelation, PropertyProfile};

/// Tractability conditions (a)-(f), each read as "every relation in S is ...".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchaeferCondition {
    ZeroValid,
    OneValid,
    Horn,
    Cohorn,
    Affine,
    Bijunctive,
}

impl SchaeferCondition {
    pub const ALL: [SchaeferCondition; 6] = [
        SchaeferCondition::ZeroValid,
        SchaeferCondition::OneValid,
        SchaeferCondition::Horn,
        SchaeferCondition::Cohorn,
        SchaeferCondition::Affine,
        SchaeferCondition::Bijunctive,
    ];

    pub fn letter(self) -> char {
        (b'a' + Self::ALL.iter().position(|&c| c == self).expect("listed") as u8) as char
    }

    pub fn name(self) -> &'static str {
        match self {
            SchaeferCondition::ZeroValid => "0-valid",
            SchaeferCondition::OneValid => "1-valid",
            SchaeferCondition::Horn => "horn",
            SchaeferCondition::Cohorn => "co-horn",
            SchaeferCondition::Affine => "affine",
            SchaeferCondition::Bijunctive => "bijunctive",
        }
    }

    fn holds(self, p: &PropertyProfile) -> bool {
        match self {
            SchaeferCondition::ZeroValid => p.zero_valid,
            SchaeferCondition::OneValid => p.one_valid,
            SchaeferCondition::Horn => p.horn,
            SchaeferCondition::Cohorn => p.cohorn,
            SchaeferCondition::Affine => p.affine,
            SchaeferCondition::Bijunctive => p.bijunctive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityClass {
    /// `witness` is the first condition in (a)-(f) order; `holds` lists all
    /// conditions satisfied by S.
    PolyTime {
        witness: SchaeferCondition,
        holds: Vec<SchaeferCondition>,
    },
    NpComplete,
}

impl ComplexityClass {
    pub fn satisfies(&self, c: SchaeferCondition) -> bool {
        matches!(self, ComplexityClass::PolyTime { holds, .. } if holds.contains(&c))
    }
}

/// Conditions (a)-(d) under which satisfiability needs no compactness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SatCondition {
    ZeroValid,
    OneValid,
    /// Every relation that is not 0-default is `[x]`.
    ZeroDefaultOrUnit,
    /// Every relation that is not 1-default is `[!x]`.
    OneDefaultOrNegUnit,
}

impl SatCondition {
    pub fn letter(self) -> char {
        match self {
            SatCondition::ZeroValid => 'a',
            SatCondition::OneValid => 'b',
            SatCondition::ZeroDefaultOrUnit => 'c',
            SatCondition::OneDefaultOrNegUnit => 'd',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SatStrength {
    ProvableRca0(SatCondition),
    EquivWkl,
}

/// Conditions under which the Ramsey-type principle is provable outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyCondition {
    ZeroValid,
    OneValid,
    Horn,
    Cohorn,
}

impl RamseyCondition {
    pub fn letter(self) -> char {
        match self {
            RamseyCondition::ZeroValid => 'a',
            RamseyCondition::OneValid => 'b',
            RamseyCondition::Horn => 'c',
            RamseyCondition::Cohorn => 'd',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyStrength {
    ProvableRca0(RamseyCondition),
    Rcolor2,
    Bijunctive,
    Affine,
    FullRwkl,
}

/// Output of any of the three classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrengthClass {
    Complexity(ComplexityClass),
    Sat(SatStrength),
    Ramsey(RamseyStrength),
}

fn profiles(s: &[BoolRelation]) -> Result<Vec<PropertyProfile>> {
    check_set(s)?;
    s.iter().map(relation_properties).collect()
}

pub fn classify_complexity(s: &[BoolRelation]) -> Result<ComplexityClass> {
    let ps = profiles(s)?;
    let holds: Vec<SchaeferCondition> = SchaeferCondition::ALL
        .into_iter()
        .filter(|c| ps.iter().all(|p| c.holds(p)))
        .collect();
    Ok(match holds.first() {
        Some(&witness) => ComplexityClass::PolyTime { witness, holds },
        None => ComplexityClass::NpComplete,
    })
}

fn is_unit(r: &BoolRelation, value: bool) -> bool {
    r.arity() == 1 && r.len() == 1 && r.contains(value as u32)
}

pub fn classify_sat(s: &[BoolRelation]) -> Result<SatStrength> {
    check_set(s)?;
    let cond = if s.iter().all(|r| r.is_valid_for(false)) {
        Some(SatCondition::ZeroValid)
    } else if s.iter().all(|r| r.is_valid_for(true)) {
        Some(SatCondition::OneValid)
    } else if s
        .iter()
        .all(|r| r.is_default_for(false) || is_unit(r, true))
    {
        Some(SatCondition::ZeroDefaultOrUnit)
    } else if s
        .iter()
        .all(|r| r.is_default_for(true) || is_unit(r, false))
    {
        Some(SatCondition::OneDefaultOrNegUnit)
    } else {
        None
    };
    Ok(cond.map_or(SatStrength::EquivWkl, SatStrength::ProvableRca0))
}

pub fn classify_ramsey(s: &[BoolRelation]) -> Result<RamseyStrength> {
    let ps = profiles(s)?;
    let all = |f: fn(&PropertyProfile) -> bool| ps.iter().all(f);
    let strength = if all(|p| p.zero_valid) {
        RamseyStrength::ProvableRca0(RamseyCondition::ZeroValid)
    } else if all(|p| p.one_valid) {
        RamseyStrength::ProvableRca0(RamseyCondition::OneValid)
    } else if all(|p| p.horn) {
        RamseyStrength::ProvableRca0(RamseyCondition::Horn)
    } else if all(|p| p.cohorn) {
        RamseyStrength::ProvableRca0(RamseyCondition::Cohorn)
    } else if all(|p| p.bijunctive) && all(|p| p.affine) {
        RamseyStrength::Rcolor2
    } else if all(|p| p.bijunctive) {
        RamseyStrength::Bijunctive
    } else if all(|p| p.affine) {
        RamseyStrength::Affine
    } else {
        RamseyStrength::FullRwkl
    };
    Ok(strength)
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityClass::PolyTime { witness, holds } => {
                write!(f, "PolyTime({}: {})", witness.letter(), witness.name())?;
                if holds.len() > 1 {
                    let all: Vec<&str> = holds.iter().map(|c| c.name()).collect();
                    write!(f, " [{}]", all.join(", "))?;
                }
                Ok(())
            }
            ComplexityClass::NpComplete => f.write_str("NPComplete"),
        }
    }
}

impl fmt::Display for SatStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatStrength::ProvableRca0(c) => write!(f, "ProvableRCA0({})", c.letter()),
            SatStrength::EquivWkl => f.write_str("EquivWKL"),
        }
    }
}

impl fmt::Display for RamseyStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamseyStrength::ProvableRca0(c) => write!(f, "ProvableRCA0({})", c.letter()),
            RamseyStrength::Rcolor2 => f.write_str("Rcolor2"),
            RamseyStrength::Bijunctive => f.write_str("Bijunctive"),
            RamseyStrength::Affine => f.write_str("Affine"),
            RamseyStrength::FullRwkl => f.write_str("FullRWKL"),
        }
    }
}

impl fmt::Display for StrengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrengthClass::Complexity(c) => c.fmt(f),
            StrengthClass::Sat(c) => c.fmt(f),
            StrengthClass::Ramsey(c) => c.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::relation::known;

    #[test]
    fn complexity_examples() {
        let c = classify_complexity(&[known::implies()]).unwrap();
        assert!(c.satisfies(SchaeferCondition::Horn));
        assert_eq!(
            classify_complexity(&[known::one_in_three()]).unwrap(),
            ComplexityClass::NpComplete
        );
        match classify_complexity(&[known::parity(3, true)]).unwrap() {
            ComplexityClass::PolyTime { witness, .. } => {
                assert_eq!(witness, SchaeferCondition::OneValid)
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn sat_examples() {
        assert_eq!(
            classify_sat(&[known::unit_pos(), known::unit_neg()]).unwrap(),
            SatStrength::ProvableRca0(SatCondition::ZeroDefaultOrUnit)
        );
        assert_eq!(
            classify_sat(&[known::and_not()]).unwrap(),
            SatStrength::EquivWkl
        );
        assert_eq!(
            classify_sat(&[known::one_in_three()]).unwrap(),
            SatStrength::EquivWkl
        );
    }

    #[test]
    fn ramsey_examples() {
        assert_eq!(
            classify_ramsey(&[known::neq()]).unwrap(),
            RamseyStrength::Rcolor2
        );
        assert_eq!(
            classify_ramsey(&[known::parity(3, true), known::neq()]).unwrap(),
            RamseyStrength::Affine
        );
        assert_eq!(
            classify_ramsey(&[known::one_in_three()]).unwrap(),
            RamseyStrength::FullRwkl
        );
        assert_eq!(
            classify_ramsey(&[known::and_not()]).unwrap(),
            RamseyStrength::ProvableRca0(RamseyCondition::Horn)
        );
    }

    #[test]
    fn empty_inputs() {
        assert!(matches!(classify_complexity(&[]), Err(Error::Invalid(_))));
        let e = BoolRelation::empty(2).unwrap();
        assert!(matches!(classify_ramsey(&[e]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn display_forms() {
        let c = classify_complexity(&[known::implies()]).unwrap();
        assert!(c.to_string().starts_with("PolyTime(a: 0-valid)"));
        assert!(c.to_string().contains("horn"));
    }
}
