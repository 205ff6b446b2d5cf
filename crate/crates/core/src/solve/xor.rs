use crate::compile::{compile_xor_system, XorEquation};
use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, SolveResult};
use crate::solve::common::{compile_used, degenerate_check};

/// Bound on the dense elimination matrix, in 64-bit words.
pub const XOR_MAX_WORDS: usize = 1 << 27;

/// Ground parity equations of the instance, in constraint order.
pub fn ground_xor_system(instance: &Instance) -> Result<Vec<XorEquation>> {
    let compiled = compile_used(instance, compile_xor_system)?;
    let mut eqs = Vec::new();
    for c in instance.constraints() {
        for e in compiled[c.relation].as_ref().expect("compiled") {
            eqs.push(e.remap(&c.vars));
        }
    }
    Ok(eqs)
}

/// Gauss-Jordan elimination over GF(2) on dense bit rows. Columns are
/// scanned in increasing variable order, so every pivot is the lowest
/// variable still available; free variables are set to 0.
pub fn solve_xor_equations(num_vars: usize, eqs: &[XorEquation]) -> Result<SolveResult> {
    let words = num_vars.div_ceil(64).max(1);
    let needed = words.saturating_mul(eqs.len());
    if needed > XOR_MAX_WORDS {
        return Err(Error::Budget {
            what: "xor elimination matrix words",
            needed: needed as u128,
            bound: XOR_MAX_WORDS as u128,
        });
    }
    let m = eqs.len();
    let mut mat = vec![0u64; needed];
    let mut rhs: Vec<bool> = Vec::with_capacity(m);
    for (i, e) in eqs.iter().enumerate() {
        for &v in e.vars() {
            mat[i * words + v as usize / 64] ^= 1 << (v % 64);
        }
        rhs.push(e.parity);
    }
    let mut pivot_of_row: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..num_vars {
        if rank == m {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..m).find(|&r| mat[r * words + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..words {
                mat.swap(p * words + k, rank * words + k);
            }
            rhs.swap(p, rank);
        }
        let (before, rest) = mat.split_at_mut(rank * words);
        let (prow, after) = rest.split_at_mut(words);
        let prhs = rhs[rank];
        for (r, row) in before.chunks_exact_mut(words).enumerate() {
            if row[w] & bit != 0 {
                for k in w..words {
                    row[k] ^= prow[k];
                }
                rhs[r] ^= prhs;
            }
        }
        for (r, row) in after.chunks_exact_mut(words).enumerate() {
            if row[w] & bit != 0 {
                for k in w..words {
                    row[k] ^= prow[k];
                }
                rhs[rank + 1 + r] ^= prhs;
            }
        }
        pivot_of_row.push(col);
        rank += 1;
    }
    if rhs[rank..].iter().any(|&b| b) {
        return Ok(SolveResult::Unsat { failed: None });
    }
    let mut values = vec![false; num_vars];
    for (r, &col) in pivot_of_row.iter().enumerate() {
        values[col] = rhs[r];
    }
    Ok(SolveResult::Sat(Assignment::total(values)))
}

/// Affine instances: compile every relation to parity equations and
/// eliminate.
pub fn solve_xor(instance: &Instance) -> Result<SolveResult> {
    if let Some(unsat) = degenerate_check(instance) {
        return Ok(unsat);
    }
    let eqs = ground_xor_system(instance)?;
    solve_xor_equations(instance.num_vars(), &eqs)
}
