use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::properties::closed_under;
use crate::relation::BoolRelation;

/// Arity cap for the clause-cover compilers.
pub const CNF_MAX_ARITY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }
}

/// A disjunction of literals over distinct variables, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(mut lits: Vec<Literal>) -> Result<Self> {
        lits.sort_unstable();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(Error::Invalid("clause repeats a variable".into()));
        }
        Ok(Clause { lits })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// At most one positive literal.
    pub fn is_horn(&self) -> bool {
        self.lits.iter().filter(|l| l.positive).count() <= 1
    }

    /// At most one negative literal.
    pub fn is_cohorn(&self) -> bool {
        self.lits.iter().filter(|l| !l.positive).count() <= 1
    }

    /// At most two literals.
    pub fn is_bijunctive(&self) -> bool {
        self.lits.len() <= 2
    }

    pub fn eval(&self, value: impl Fn(u32) -> bool) -> bool {
        self.lits.iter().any(|l| value(l.var) == l.positive)
    }

    pub fn flipped(&self) -> Self {
        Clause {
            lits: self.lits.iter().map(|l| l.negated()).collect(),
        }
    }

    /// Renames variable `j` to `map[j]`.
    pub fn remap(&self, map: &[u32]) -> Result<Self> {
        Clause::new(
            self.lits
                .iter()
                .map(|l| Literal {
                    var: map[l.var as usize],
                    positive: l.positive,
                })
                .collect(),
        )
    }
}

/// Coordinates print 1-based: `!x1 | x2`.
impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("false");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if !l.positive {
                f.write_str("!")?;
            }
            write!(f, "x{}", l.var + 1)?;
        }
        Ok(())
    }
}

/// The clause over coordinate set `s` that is false exactly when the
/// coordinates in `s` agree with `u`.
fn clause_against(u: u32, s: u32, n: usize) -> Clause {
    let lits = (0..n as u32)
        .filter(|j| s >> j & 1 == 1)
        .map(|j| Literal {
            var: j,
            positive: u >> j & 1 == 0,
        })
        .collect();
    Clause { lits }
}

/// For every non-tuple `u`, picks the first clause (shortest, then lowest
/// coordinate mask) accepted by `allowed`, true on all of `r` and false on
/// `u`. `None` if some non-tuple has no such clause.
fn clause_cover(
    r: &BoolRelation,
    max_len: usize,
    allowed: impl Fn(u32, u32) -> bool,
) -> Option<Vec<Clause>> {
    let n = r.arity();
    let members: Vec<u32> = r.tuples().collect();
    let mut masks: Vec<u32> = (1..1u32 << n)
        .filter(|s| s.count_ones() as usize <= max_len)
        .collect();
    masks.sort_by_key(|s| (s.count_ones(), *s));
    let mut chosen = HashSet::new();
    let mut out = Vec::new();
    for u in r.non_tuples() {
        let s = masks
            .iter()
            .copied()
            .find(|&s| allowed(u, s) && members.iter().all(|&t| (t ^ u) & s != 0))?;
        if chosen.insert((s, u & s)) {
            out.push(clause_against(u, s, n));
        }
    }
    Some(out)
}

/// Unguarded horn clause-cover search.
pub fn horn_clause_cover(r: &BoolRelation) -> Option<Vec<Clause>> {
    clause_cover(r, r.arity(), |u, s| (s & !u).count_ones() <= 1)
}

/// Unguarded co-horn clause-cover search.
pub fn cohorn_clause_cover(r: &BoolRelation) -> Option<Vec<Clause>> {
    clause_cover(r, r.arity(), |u, s| (s & u).count_ones() <= 1)
}

/// Unguarded 2-CNF clause-cover search.
pub fn two_cnf_clause_cover(r: &BoolRelation) -> Option<Vec<Clause>> {
    clause_cover(r, 2, |_, _| true)
}

fn check_arity(r: &BoolRelation) -> Result<()> {
    if r.arity() > CNF_MAX_ARITY {
        return Err(Error::ArityCap {
            arity: r.arity(),
            cap: CNF_MAX_ARITY,
        });
    }
    Ok(())
}

fn guarded(
    r: &BoolRelation,
    generator: &str,
    class: &'static str,
    search: fn(&BoolRelation) -> Option<Vec<Clause>>,
) -> Result<Vec<Clause>> {
    check_arity(r)?;
    if !closed_under(generator, r) {
        return Err(Error::NotInClass {
            relation: r.label(),
            class,
        });
    }
    search(r).ok_or_else(|| {
        Error::Internal(format!(
            "{class} relation `{}` has no clause cover",
            r.label()
        ))
    })
}

/// Horn clauses over coordinates `0..n` whose conjunction defines `r`.
pub fn compile_horn_cnf(r: &BoolRelation) -> Result<Vec<Clause>> {
    guarded(r, "conj", "horn", horn_clause_cover)
}

/// Co-horn clauses, via the horn compilation of the complement image.
pub fn compile_cohorn_cnf(r: &BoolRelation) -> Result<Vec<Clause>> {
    check_arity(r)?;
    match compile_horn_cnf(&r.complement_image()) {
        Ok(cs) => Ok(cs.iter().map(Clause::flipped).collect()),
        Err(Error::NotInClass { .. }) => Err(Error::NotInClass {
            relation: r.label(),
            class: "co-horn",
        }),
        Err(e) => Err(e),
    }
}

/// Clauses of at most two literals whose conjunction defines `r`.
pub fn compile_two_cnf(r: &BoolRelation) -> Result<Vec<Clause>> {
    guarded(r, "maj", "bijunctive", two_cnf_clause_cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::known;

    fn models(n: usize, clauses: &[Clause]) -> BoolRelation {
        BoolRelation::from_predicate(n, |k| clauses.iter().all(|c| c.eval(|v| k >> v & 1 == 1)))
            .unwrap()
    }

    #[test]
    fn impl_is_one_horn_clause() {
        let cs = compile_horn_cnf(&known::implies()).unwrap();
        assert_eq!(
            cs,
            vec![Clause::new(vec![Literal::neg(0), Literal::pos(1)]).unwrap()]
        );
        assert_eq!(cs[0].to_string(), "!x1 | x2");
    }

    #[test]
    fn neq_not_horn() {
        assert!(matches!(
            compile_horn_cnf(&known::neq()),
            Err(Error::NotInClass { class: "horn", .. })
        ));
    }

    #[test]
    fn full_relation_needs_nothing() {
        assert!(compile_horn_cnf(&BoolRelation::full(3).unwrap())
            .unwrap()
            .is_empty());
        assert!(compile_two_cnf(&BoolRelation::full(3).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn neq_two_cnf() {
        let cs = compile_two_cnf(&known::neq()).unwrap();
        let expect = vec![
            Clause::new(vec![Literal::pos(0), Literal::pos(1)]).unwrap(),
            Clause::new(vec![Literal::neg(0), Literal::neg(1)]).unwrap(),
        ];
        assert_eq!(cs, expect);
    }

    #[test]
    fn one_in_three_not_bijunctive() {
        assert!(compile_two_cnf(&known::one_in_three()).is_err());
    }

    #[test]
    fn unit_relation() {
        assert_eq!(
            compile_two_cnf(&known::unit_pos()).unwrap(),
            vec![Clause::new(vec![Literal::pos(0)]).unwrap()]
        );
    }

    #[test]
    fn cohorn_by_duality() {
        let or3 = BoolRelation::from_predicate(3, |k| k != 0).unwrap();
        let cs = compile_cohorn_cnf(&or3).unwrap();
        assert!(cs.iter().all(Clause::is_cohorn));
        assert_eq!(models(3, &cs), or3);
        assert!(compile_cohorn_cnf(&known::or2()).is_ok());
        assert!(compile_cohorn_cnf(&known::nand2()).is_err());
        assert!(compile_cohorn_cnf(&known::one_in_three()).is_err());
    }

    #[test]
    fn round_trip_exhaustive_arity3() {
        for n in 1..=3 {
            for code in 1..1u32 << (1 << n) {
                let r = BoolRelation::from_predicate(n, |k| code >> k & 1 == 1).unwrap();
                for (res, kind) in [
                    (compile_horn_cnf(&r), Clause::is_horn as fn(&Clause) -> bool),
                    (compile_cohorn_cnf(&r), Clause::is_cohorn),
                    (compile_two_cnf(&r), Clause::is_bijunctive),
                ] {
                    if let Ok(cs) = res {
                        assert!(cs.iter().all(kind));
                        assert_eq!(models(n, &cs), r);
                    }
                }
            }
        }
    }

    #[test]
    fn arity_cap() {
        let big = BoolRelation::full(9).unwrap();
        assert!(matches!(
            compile_horn_cnf(&big),
            Err(Error::ArityCap { .. })
        ));
    }

    #[test]
    fn duplicate_variable_rejected() {
        assert!(Clause::new(vec![Literal::pos(1), Literal::neg(1)]).is_err());
    }
}
