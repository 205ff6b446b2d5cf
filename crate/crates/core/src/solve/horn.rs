use std::collections::VecDeque;

use crate::compile::compile_horn_cnf;
use crate::error::Result;
use crate::instance::{Assignment, Instance, SolveResult};
use crate::solve::common::{compile_used, degenerate_check, instantiate};

/// Result of horn propagation together with the forced set `F`: the
/// variables true in every model (all of them true in the minimal model).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornOutcome {
    pub result: SolveResult,
    pub forced: Vec<u32>,
}

/// Ground horn clauses in flat form: the body variables (negative literals)
/// and an optional head (the positive literal).
struct HornClauses {
    body_start: Vec<usize>,
    body: Vec<u32>,
    head: Vec<Option<u32>>,
    origin: Vec<usize>,
}

impl HornClauses {
    fn len(&self) -> usize {
        self.head.len()
    }

    fn body(&self, i: usize) -> &[u32] {
        &self.body[self.body_start[i]..self.body_start[i + 1]]
    }
}

fn ground(instance: &Instance) -> Result<HornClauses> {
    let compiled = compile_used(instance, compile_horn_cnf)?;
    let mut hc = HornClauses {
        body_start: vec![0],
        body: Vec::new(),
        head: Vec::new(),
        origin: Vec::new(),
    };
    for (ci, c) in instance.constraints().iter().enumerate() {
        for clause in compiled[c.relation].as_ref().expect("compiled") {
            let Some(lits) = instantiate(clause, &c.vars) else {
                continue;
            };
            let mut head = None;
            for l in lits {
                if l.positive {
                    head = Some(l.var);
                } else {
                    hc.body.push(l.var);
                }
            }
            hc.head.push(head);
            hc.body_start.push(hc.body.len());
            hc.origin.push(ci);
        }
    }
    Ok(hc)
}

/// Unit propagation to the minimal model with a FIFO queue: a clause whose
/// body is entirely true fires its head, or fails if it has none.
pub fn solve_horn(instance: &Instance) -> Result<HornOutcome> {
    if let Some(unsat) = degenerate_check(instance) {
        return Ok(HornOutcome {
            result: unsat,
            forced: Vec::new(),
        });
    }
    let hc = ground(instance)?;
    let n = instance.num_vars();
    let mut missing: Vec<u32> = (0..hc.len()).map(|i| hc.body(i).len() as u32).collect();
    // occurrence lists of body variables, CSR layout
    let mut occ_start = vec![0usize; n + 1];
    for &v in &hc.body {
        occ_start[v as usize + 1] += 1;
    }
    for v in 0..n {
        occ_start[v + 1] += occ_start[v];
    }
    let mut fill = occ_start.clone();
    let mut occ = vec![0u32; hc.body.len()];
    for i in 0..hc.len() {
        for &v in hc.body(i) {
            occ[fill[v as usize]] = i as u32;
            fill[v as usize] += 1;
        }
    }

    let mut value = vec![false; n];
    let mut forced = Vec::new();
    let mut queue = VecDeque::new();
    let mut conflict = None;
    let fire = |i: usize,
                value: &mut Vec<bool>,
                queue: &mut VecDeque<u32>,
                forced: &mut Vec<u32>|
     -> bool {
        match hc.head[i] {
            Some(h) => {
                if !value[h as usize] {
                    value[h as usize] = true;
                    forced.push(h);
                    queue.push_back(h);
                }
                true
            }
            None => false,
        }
    };
    for (i, &miss) in missing.iter().enumerate() {
        if miss == 0 && !fire(i, &mut value, &mut queue, &mut forced) {
            conflict = Some(hc.origin[i]);
            break;
        }
    }
    while conflict.is_none() {
        let Some(v) = queue.pop_front() else { break };
        for &i in &occ[occ_start[v as usize]..occ_start[v as usize + 1]] {
            let i = i as usize;
            missing[i] -= 1;
            if missing[i] == 0 && !fire(i, &mut value, &mut queue, &mut forced) {
                conflict = Some(hc.origin[i]);
                break;
            }
        }
    }
    let result = match conflict {
        Some(ci) => SolveResult::Unsat { failed: Some(ci) },
        None => SolveResult::Sat(Assignment::total(value)),
    };
    Ok(HornOutcome { result, forced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::relation::known;

    #[test]
    fn propagation_through_implication() {
        let mut inst = Instance::new(2);
        inst.constrain(&known::unit_pos(), &[0]).unwrap();
        inst.constrain(&known::implies(), &[0, 1]).unwrap();
        let out = solve_horn(&inst).unwrap();
        assert_eq!(
            out.result.model().unwrap(),
            &Assignment::total(vec![true, true])
        );
        let mut f = out.forced.clone();
        f.sort();
        assert_eq!(f, vec![0, 1]);
    }

    #[test]
    fn contradiction() {
        let mut inst = Instance::new(1);
        inst.constrain(&known::unit_pos(), &[0]).unwrap();
        inst.constrain(&known::unit_neg(), &[0]).unwrap();
        let out = solve_horn(&inst).unwrap();
        assert_eq!(out.result, SolveResult::Unsat { failed: Some(1) });
    }

    #[test]
    fn minimal_model_of_definite_clause() {
        let mut inst = Instance::new(2);
        inst.constrain(&known::implies(), &[0, 1]).unwrap();
        let out = solve_horn(&inst).unwrap();
        assert_eq!(
            out.result.model().unwrap(),
            &Assignment::total(vec![false, false])
        );
        assert!(out.forced.is_empty());
    }

    #[test]
    fn rejects_non_horn() {
        let mut inst = Instance::new(2);
        inst.constrain(&known::or2(), &[0, 1]).unwrap();
        assert!(matches!(solve_horn(&inst), Err(Error::WrongClass(_))));
    }

    #[test]
    fn repeated_variable() {
        // IMPL(x, x) is a tautology; NAND(x, x) forces x false
        let mut inst = Instance::new(1);
        inst.constrain(&known::implies(), &[0, 0]).unwrap();
        inst.constrain(&known::nand2(), &[0, 0]).unwrap();
        inst.constrain(&known::unit_pos(), &[0]).unwrap();
        assert!(!solve_horn(&inst).unwrap().result.is_sat());
    }
}
