use crate::instance::{Assignment, Instance, SolveResult};
use crate::solve::common::degenerate_check;

const UNASSIGNED: u8 = 2;

#[inline]
fn lit(var: u32, positive: bool) -> u32 {
    2 * var + (!positive) as u32
}

#[inline]
fn var_of(l: u32) -> usize {
    (l >> 1) as usize
}

/// Falsifying-tuple CNF: one clause per non-member tuple of each constraint,
/// literals opposite to the tuple's bits. Clauses made tautological by a
/// repeated variable are dropped.
fn ground(instance: &Instance) -> Vec<Vec<u32>> {
    let mut clauses = Vec::new();
    for c in instance.constraints() {
        let r = instance.relation(c.relation);
        'tuples: for t in r.non_tuples() {
            let mut cl: Vec<u32> = Vec::with_capacity(c.vars.len());
            for (j, &v) in c.vars.iter().enumerate() {
                let l = lit(v, t >> j & 1 == 0);
                if cl.contains(&(l ^ 1)) {
                    continue 'tuples;
                }
                if !cl.contains(&l) {
                    cl.push(l);
                }
            }
            clauses.push(cl);
        }
    }
    clauses
}

struct Dpll {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<u32>>,
    value: Vec<u8>,
    trail: Vec<u32>,
    head: usize,
}

impl Dpll {
    #[inline]
    fn lit_value(&self, l: u32) -> u8 {
        match self.value[var_of(l)] {
            UNASSIGNED => UNASSIGNED,
            v => v ^ (l & 1) as u8,
        }
    }

    fn assign(&mut self, l: u32) {
        self.value[var_of(l)] = 1 ^ (l & 1) as u8;
        self.trail.push(l);
    }

    /// Two-watched-literal propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head] ^ 1;
            self.head += 1;
            let mut ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i] as usize;
                let cl = &mut self.clauses[ci];
                if cl[0] == falsified {
                    cl.swap(0, 1);
                }
                let first = cl[0];
                let first_val = match self.value[var_of(first)] {
                    UNASSIGNED => UNASSIGNED,
                    v => v ^ (first & 1) as u8,
                };
                if first_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..cl.len() {
                    let l = cl[k];
                    let lv = match self.value[var_of(l)] {
                        UNASSIGNED => UNASSIGNED,
                        v => v ^ (l & 1) as u8,
                    };
                    if lv != 0 {
                        cl.swap(1, k);
                        self.watches[cl[1] as usize].push(ci as u32);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if first_val == 0 {
                    ok = false;
                    break;
                }
                self.assign(first);
                i += 1;
            }
            let slot = &mut self.watches[falsified as usize];
            ws.append(slot);
            *slot = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &l in &self.trail[len..] {
            self.value[var_of(l)] = UNASSIGNED;
        }
        self.trail.truncate(len);
        self.head = len;
    }
}

/// Complete DPLL over the falsifying-tuple CNF: watched-literal unit
/// propagation, branching on the lowest unassigned variable with value 0
/// first, chronological backtracking.
pub fn solve_generic(instance: &Instance) -> SolveResult {
    if let Some(unsat) = degenerate_check(instance) {
        return unsat;
    }
    let n = instance.num_vars();
    let clauses = ground(instance);
    let mut s = Dpll {
        watches: vec![Vec::new(); 2 * n],
        value: vec![UNASSIGNED; n],
        trail: Vec::new(),
        head: 0,
        clauses: Vec::with_capacity(clauses.len()),
    };
    for cl in clauses {
        match cl.len() {
            0 => return SolveResult::unsat(),
            1 => match s.lit_value(cl[0]) {
                0 => return SolveResult::unsat(),
                1 => {}
                _ => s.assign(cl[0]),
            },
            _ => {
                let ci = s.clauses.len() as u32;
                s.watches[cl[0] as usize].push(ci);
                s.watches[cl[1] as usize].push(ci);
                s.clauses.push(cl);
            }
        }
    }
    // (trail length before the decision, decision literal, flipped already)
    let mut decisions: Vec<(usize, u32, bool)> = Vec::new();
    let mut next_var = 0usize;
    let mut ok = s.propagate();
    loop {
        if !ok {
            loop {
                let Some((len, l, flipped)) = decisions.pop() else {
                    return SolveResult::unsat();
                };
                s.undo_to(len);
                if !flipped {
                    decisions.push((len, l ^ 1, true));
                    s.assign(l ^ 1);
                    next_var = var_of(l);
                    break;
                }
            }
            ok = s.propagate();
            continue;
        }
        while next_var < n && s.value[next_var] != UNASSIGNED {
            next_var += 1;
        }
        if next_var == n {
            break;
        }
        let l = lit(next_var as u32, false);
        decisions.push((s.trail.len(), l, false));
        s.assign(l);
        ok = s.propagate();
    }
    SolveResult::Sat(Assignment::total(s.value.iter().map(|&v| v == 1).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::known;

    #[test]
    fn one_in_three_branch_order() {
        let mut inst = Instance::new(3);
        inst.constrain(&known::one_in_three(), &[0, 1, 2]).unwrap();
        let r = solve_generic(&inst);
        assert_eq!(
            r.model().unwrap(),
            &Assignment::total(vec![false, false, true])
        );
    }

    #[test]
    fn contradiction() {
        let mut inst = Instance::new(1);
        inst.constrain(&known::unit_pos(), &[0]).unwrap();
        inst.constrain(&known::unit_neg(), &[0]).unwrap();
        assert!(!solve_generic(&inst).is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two() {
        // variable p*2+h: pigeon p in hole h
        let mut inst = Instance::new(6);
        for p in 0..3u32 {
            inst.constrain(&known::or2(), &[2 * p, 2 * p + 1]).unwrap();
        }
        for h in 0..2u32 {
            for a in 0..3u32 {
                for b in a + 1..3 {
                    inst.constrain(&known::nand2(), &[2 * a + h, 2 * b + h])
                        .unwrap();
                }
            }
        }
        assert!(!solve_generic(&inst).is_sat());
    }
}
