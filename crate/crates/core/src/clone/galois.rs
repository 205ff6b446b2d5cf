use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::properties::closed_under;
use crate::relation::{known, BoolRelation};

/// Which named generators are polymorphisms of every relation in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolProfile {
    pub has_const0: bool,
    pub has_const1: bool,
    pub has_neg: bool,
    pub has_conj: bool,
    pub has_disj: bool,
    pub has_maj: bool,
    pub has_aff: bool,
}

pub(crate) fn check_set(s: &[BoolRelation]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Invalid("relation set is empty".into()));
    }
    if let Some(r) = s.iter().find(|r| r.is_empty()) {
        return Err(Error::Degenerate(format!(
            "relation `{}` of arity {} is empty",
            r.label(),
            r.arity()
        )));
    }
    Ok(())
}

pub fn pol_profile(s: &[BoolRelation]) -> Result<PolProfile> {
    check_set(s)?;
    let all = |p: &dyn Fn(&BoolRelation) -> bool| s.iter().all(p);
    Ok(PolProfile {
        has_const0: all(&|r| r.is_valid_for(false)),
        has_const1: all(&|r| r.is_valid_for(true)),
        has_neg: all(&|r| r.is_complementive()),
        has_conj: all(&|r| closed_under("conj", r)),
        has_disj: all(&|r| closed_under("disj", r)),
        has_maj: all(&|r| closed_under("maj", r)),
        has_aff: all(&|r| closed_under("aff", r)),
    })
}

/// Largest tuple count accepted by [`in_coclone`].
pub const COCLONE_MAX_TUPLES: usize = 4;

/// Bound on the row combinations `sum |Q|^t` the coclone test may expand.
pub const COCLONE_BUDGET: u128 = 1_000_000;

/// Whether `r` lies in the coclone of `s`, i.e. is preserved by every
/// polymorphism of `s`.
///
/// With `t = |r|` it suffices to look at `t`-ary polymorphisms. A `t`-ary
/// function is an assignment to the `2^t` column patterns; each choice of
/// `t` rows of some `Q` in `s` yields a constraint over the patterns it
/// produces. A backtracking search looks for a polymorphism mapping the
/// rows of `r` outside `r`.
pub fn in_coclone(r: &BoolRelation, s: &[BoolRelation]) -> Result<bool> {
    let t = r.len();
    if t > COCLONE_MAX_TUPLES {
        return Err(Error::Budget {
            what: "coclone test tuple count",
            needed: t as u128,
            bound: COCLONE_MAX_TUPLES as u128,
        });
    }
    if t == 0 {
        return Ok(true);
    }
    let needed: u128 = s.iter().map(|q| (q.len() as u128).pow(t as u32)).sum();
    if needed > COCLONE_BUDGET {
        return Err(Error::Budget {
            what: "coclone row combinations",
            needed,
            bound: COCLONE_BUDGET,
        });
    }
    let patterns = 1usize << t;
    // column pattern of every coordinate over the rows of a t-tuple of rows
    let columns = |rows: &[u32], n: usize| -> Vec<u8> {
        (0..n)
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, row)| acc | ((row >> j & 1) as u8) << i)
            })
            .collect()
    };
    // constraints indexed by the largest pattern they mention
    let mut by_last: Vec<Vec<(usize, Vec<u8>)>> = vec![Vec::new(); patterns];
    let mut dedup = HashSet::new();
    for (qi, q) in s.iter().enumerate() {
        let rows: Vec<u32> = q.tuples().collect();
        if rows.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; t];
        loop {
            let chosen: Vec<u32> = idx.iter().map(|&i| rows[i]).collect();
            let cols = columns(&chosen, q.arity());
            if dedup.insert((qi, cols.clone())) {
                let last = *cols.iter().max().expect("arity >= 1") as usize;
                by_last[last].push((qi, cols));
            }
            let mut p = 0;
            while p < t {
                idx[p] += 1;
                if idx[p] < rows.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == t {
                break;
            }
        }
    }
    let target_rows: Vec<u32> = r.tuples().collect();
    let target_cols = columns(&target_rows, r.arity());

    let mut value = vec![false; patterns];
    fn search(
        k: usize,
        value: &mut [bool],
        by_last: &[Vec<(usize, Vec<u8>)>],
        s: &[BoolRelation],
        r: &BoolRelation,
        target_cols: &[u8],
    ) -> bool {
        if k == value.len() {
            let image = target_cols
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, &p)| acc | (value[p as usize] as u32) << j);
            return !r.contains(image);
        }
        for b in [false, true] {
            value[k] = b;
            let ok = by_last[k].iter().all(|(qi, cols)| {
                let image = cols
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &p)| acc | (value[p as usize] as u32) << j);
                s[*qi].contains(image)
            });
            if ok && search(k + 1, value, by_last, s, r, target_cols) {
                return true;
            }
        }
        false
    }
    let counterexample = search(0, &mut value, &by_last, s, r, &target_cols);
    Ok(!counterexample)
}

/// The first of the four cases that covers `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lemma43Case {
    /// Every relation is 0-valid.
    A,
    /// Every relation is 1-valid.
    B,
    /// Both unit relations are in the coclone.
    C,
    /// `NEQ` is in the coclone.
    D,
}

impl Lemma43Case {
    pub fn letter(self) -> char {
        match self {
            Lemma43Case::A => 'a',
            Lemma43Case::B => 'b',
            Lemma43Case::C => 'c',
            Lemma43Case::D => 'd',
        }
    }
}

pub fn lemma43_case(s: &[BoolRelation]) -> Result<Lemma43Case> {
    check_set(s)?;
    if s.iter().all(|r| r.is_valid_for(false)) {
        return Ok(Lemma43Case::A);
    }
    if s.iter().all(|r| r.is_valid_for(true)) {
        return Ok(Lemma43Case::B);
    }
    if in_coclone(&known::unit_pos(), s)? && in_coclone(&known::unit_neg(), s)? {
        return Ok(Lemma43Case::C);
    }
    if in_coclone(&known::neq(), s)? {
        return Ok(Lemma43Case::D);
    }
    Err(Error::Internal("lemma falsified: no case applies".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{is_polymorphism, TruthTable};

    #[test]
    fn neq_profile() {
        let p = pol_profile(&[known::neq()]).unwrap();
        assert!(p.has_neg && p.has_maj && p.has_aff);
        assert!(!p.has_conj && !p.has_disj && !p.has_const0 && !p.has_const1);
    }

    #[test]
    fn impl_profile() {
        let p = pol_profile(&[known::implies()]).unwrap();
        assert!(p.has_conj && p.has_disj && p.has_maj && p.has_const0 && p.has_const1);
        assert!(!p.has_aff && !p.has_neg);
    }

    #[test]
    fn full_relation_profile() {
        let p = pol_profile(&[BoolRelation::full(3).unwrap()]).unwrap();
        assert!(p.has_const0 && p.has_const1 && p.has_neg && p.has_conj);
        assert!(p.has_disj && p.has_maj && p.has_aff);
        assert!(pol_profile(&[]).is_err());
    }

    #[test]
    fn coclone_examples() {
        assert!(in_coclone(&known::eq(), &[known::neq()]).unwrap());
        assert!(!in_coclone(&known::unit_pos(), &[known::neq()]).unwrap());
        assert!(in_coclone(&known::neq(), &[known::one_in_three()]).unwrap());
    }

    /// Independent check: enumerate every t-ary function and test it with
    /// the polymorphism routine directly.
    fn naive_in_coclone(r: &BoolRelation, s: &[BoolRelation]) -> bool {
        let t = r.len();
        (0..1u32 << (1 << t)).all(|bits| {
            let f = TruthTable::new(t, bits as u16).unwrap();
            let pres_s = s.iter().all(|q| is_polymorphism(&f, q).unwrap());
            !pres_s || is_polymorphism(&f, r).unwrap()
        })
    }

    #[test]
    fn agrees_with_function_enumeration() {
        let targets = [
            known::unit_pos(),
            known::unit_neg(),
            known::neq(),
            known::eq(),
        ];
        for n in 1..=2 {
            for code in 1..1u32 << (1 << n) {
                let q = BoolRelation::from_predicate(n, |k| code >> k & 1 == 1).unwrap();
                for r in &targets {
                    assert_eq!(
                        in_coclone(r, std::slice::from_ref(&q)).unwrap(),
                        naive_in_coclone(r, std::slice::from_ref(&q)),
                        "{r} in <{q}>"
                    );
                }
            }
        }
        for code in (1..1u32 << 8).step_by(5) {
            let q = BoolRelation::from_predicate(3, |k| code >> k & 1 == 1).unwrap();
            for r in &targets {
                assert_eq!(
                    in_coclone(r, std::slice::from_ref(&q)).unwrap(),
                    naive_in_coclone(r, std::slice::from_ref(&q))
                );
            }
        }
    }

    #[test]
    fn lemma_cases() {
        assert_eq!(lemma43_case(&[known::implies()]).unwrap(), Lemma43Case::A);
        assert_eq!(lemma43_case(&[known::neq()]).unwrap(), Lemma43Case::D);
        let c = lemma43_case(&[known::one_in_three()]).unwrap();
        assert!(matches!(c, Lemma43Case::C | Lemma43Case::D));
    }

    #[test]
    fn too_many_tuples() {
        let r = BoolRelation::full(3).unwrap();
        assert!(matches!(
            in_coclone(&r, &[known::neq()]),
            Err(Error::Budget { .. })
        ));
    }
}
