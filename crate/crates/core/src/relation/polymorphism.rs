//! Coordinate-wise application of Boolean functions to relation tuples and
//! the closure (polymorphism) test built on it.

use crate::error::{Error, Result};
use crate::relation::{BoolRelation, TruthTable};

/// Default bound on the number of row combinations `|R|^m` a polymorphism
/// check may enumerate.
pub const DEFAULT_POLY_BUDGET: u128 = 1_000_000;

/// Applies `f` coordinate-wise to the `m` rows (tuple indices of arity `n`).
pub fn apply_pointwise(f: &TruthTable, rows: &[u32], n: usize) -> Result<u32> {
    if rows.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: rows.len(),
        });
    }
    if n > BoolRelation::MAX_ARITY {
        return Err(Error::ArityCap {
            arity: n,
            cap: BoolRelation::MAX_ARITY,
        });
    }
    if let Some(&bad) = rows.iter().find(|&&r| (r as u64) >= 1u64 << n) {
        return Err(Error::TupleOutOfRange {
            index: bad as u64,
            arity: n,
        });
    }
    Ok(apply_unchecked(f, rows, n))
}

#[inline]
pub(crate) fn apply_unchecked(f: &TruthTable, rows: &[u32], n: usize) -> u32 {
    let mut out = 0u32;
    for j in 0..n {
        let mut arg = 0usize;
        for (i, r) in rows.iter().enumerate() {
            arg |= ((r >> j) as usize & 1) << i;
        }
        if f.eval(arg) {
            out |= 1 << j;
        }
    }
    out
}

pub fn is_polymorphism(f: &TruthTable, r: &BoolRelation) -> Result<bool> {
    is_polymorphism_within(f, r, DEFAULT_POLY_BUDGET)
}

/// True iff every `m`-tuple of rows of `r` (with repetition) is mapped into
/// `r` by `f`.
pub fn is_polymorphism_within(f: &TruthTable, r: &BoolRelation, budget: u128) -> Result<bool> {
    let m = f.arity();
    let needed = (r.len() as u128).pow(m as u32);
    if needed > budget {
        return Err(Error::Budget {
            what: "polymorphism row combinations",
            needed,
            bound: budget,
        });
    }
    if r.is_empty() {
        return Ok(true);
    }
    let rows: Vec<u32> = r.tuples().collect();
    let n = r.arity();
    if m == 0 {
        let image = if f.eval(0) { r.all_ones() } else { 0 };
        return Ok(r.contains(image));
    }
    let mut idx = vec![0usize; m];
    let mut args = vec![0u32; m];
    loop {
        for (a, &i) in args.iter_mut().zip(&idx) {
            *a = rows[i];
        }
        if !r.contains(apply_unchecked(f, &args, n)) {
            return Ok(false);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(true);
            }
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Closure tests that avoid enumerating `|R|^m` combinations. They decide the
/// same property as [`is_polymorphism`] for the four generators and are used
/// when the enumeration would exceed its budget.
pub mod structural {
    use crate::relation::BoolRelation;

    /// Closed under coordinate-wise AND.
    ///
    /// `t` lies in the AND-closure iff the meet of all members above `t`
    /// equals `t`; the meets are computed with a superset transform.
    pub fn conj_closed(r: &BoolRelation) -> bool {
        const NONE: u32 = u32::MAX;
        let n = r.arity();
        let size = 1usize << n;
        let mut meet = vec![NONE; size];
        for t in r.tuples() {
            meet[t as usize] = t;
        }
        for bit in 0..n {
            for t in 0..size {
                if t >> bit & 1 == 0 {
                    meet[t] &= meet[t | 1 << bit];
                }
            }
        }
        (0..size as u32).all(|t| r.contains(t) || meet[t as usize] != t)
    }

    pub fn disj_closed(r: &BoolRelation) -> bool {
        conj_closed(&r.complement_image())
    }

    /// Closed under majority: equal to the models of its implied clauses of
    /// width at most two.
    pub fn maj_closed(r: &BoolRelation) -> bool {
        if r.is_empty() {
            return true;
        }
        let n = r.arity();
        // seen[i][j]: bitmask over the four value patterns (a_i, a_j).
        let mut seen = vec![0u8; n * n];
        for t in r.tuples() {
            for i in 0..n {
                let a = (t >> i) & 1;
                for j in i..n {
                    let b = (t >> j) & 1;
                    seen[i * n + j] |= 1 << (a | b << 1);
                }
            }
        }
        r.non_tuples().all(|t| {
            (0..n).any(|i| {
                let a = (t >> i) & 1;
                (i..n).any(|j| {
                    let b = (t >> j) & 1;
                    seen[i * n + j] & (1 << (a | b << 1)) == 0
                })
            })
        })
    }

    /// Closed under ternary XOR: a coset of a GF(2) subspace.
    pub fn aff_closed(r: &BoolRelation) -> bool {
        let Some(base) = r.tuples().next() else {
            return true;
        };
        if !r.len().is_power_of_two() {
            return false;
        }
        let mut basis: Vec<u32> = Vec::new();
        for t in r.tuples() {
            let mut v = t ^ base;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        1usize << basis.len() == r.len()
    }
}
