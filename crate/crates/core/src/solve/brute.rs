use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, SolveResult};

pub const BRUTE_FORCE_MAX_VARS: usize = 25;

/// Exhaustive scan in lexicographic order of `(x_0, x_1, ..)`: the assignment
/// index has variable 0 as its most significant bit. The first model wins.
pub fn brute_force_sat(instance: &Instance) -> Result<SolveResult> {
    let n = instance.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::ArityCap {
            arity: n,
            cap: BRUTE_FORCE_MAX_VARS,
        });
    }
    let cons: Vec<(&crate::relation::BoolRelation, &[u32])> = instance
        .constraints()
        .iter()
        .map(|c| (instance.relation(c.relation), c.vars.as_slice()))
        .collect();
    for k in 0..1u64 << n {
        let ok = cons.iter().all(|(r, vars)| {
            let t = vars.iter().enumerate().fold(0u32, |acc, (j, &v)| {
                acc | ((k >> (n - 1 - v as usize)) as u32 & 1) << j
            });
            r.contains(t)
        });
        if ok {
            return Ok(SolveResult::Sat(Assignment::total(
                (0..n).map(|v| k >> (n - 1 - v) & 1 == 1).collect(),
            )));
        }
    }
    Ok(SolveResult::Unsat { failed: None })
}
