//! Reference implementations the library is checked against.
#![allow(dead_code)]

use std::collections::HashMap;

use dichotomy_core::gen::rng;
use dichotomy_core::{BoolRelation, Instance};
use rand::Rng;

/// Whether the assignment `a` (variable `v` at bit `v`) satisfies every
/// constraint.
pub fn satisfies(inst: &Instance, a: u64) -> bool {
    inst.constraints().iter().all(|c| {
        let t = c
            .vars
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &v)| acc | ((a >> v & 1) as u32) << j);
        inst.relation(c.relation).contains(t)
    })
}

/// Every model, as bitmasks.
pub fn all_models(inst: &Instance) -> Vec<u64> {
    assert!(inst.num_vars() <= 20, "enumeration is for small instances");
    (0..1u64 << inst.num_vars())
        .filter(|&a| satisfies(inst, a))
        .collect()
}

pub fn to_mask(values: &[bool]) -> u64 {
    values
        .iter()
        .enumerate()
        .fold(0, |acc, (v, &b)| acc | (b as u64) << v)
}

/// Evaluates every constraint on a total valuation.
pub fn check_values(inst: &Instance, values: &[bool]) -> bool {
    inst.constraints().iter().all(|c| {
        let t = c
            .vars
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &v)| acc | (values[v as usize] as u32) << j);
        inst.relation(c.relation).contains(t)
    })
}

/// Same constraints with every relation replaced by `f(relation)`.
pub fn map_relations(inst: &Instance, f: impl Fn(&BoolRelation) -> BoolRelation) -> Instance {
    let mut out = Instance::new(inst.num_vars());
    for c in inst.constraints() {
        out.constrain(&f(inst.relation(c.relation)), &c.vars)
            .unwrap();
    }
    out
}

/// The relation whose tuple `k` is a member iff bit `k` of `mask` is set.
pub fn mask_relation(arity: usize, mask: u64) -> BoolRelation {
    BoolRelation::from_predicate(arity, |k| mask >> k & 1 == 1).unwrap()
}

/// Random horn clauses of width 1 to 3, keeping only those a hidden
/// assignment satisfies.
pub fn planted_horn(n: usize, m: usize, seed: u64) -> Instance {
    let mut rng = rng(seed);
    let hidden: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.3)).collect();
    let mut inst = Instance::new(n);
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    while inst.constraints().len() < m {
        let w = rng.gen_range(1..=3usize).min(n);
        let pos = rng.gen_range(0..=w); // w: no positive literal
        let vars: Vec<u32> = rand::seq::index::sample(&mut rng, n, w)
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let lit = |j: usize, b: bool| if j == pos { b } else { !b };
        if !(0..w).any(|j| lit(j, hidden[vars[j] as usize])) {
            continue;
        }
        let id = *ids.entry((w, pos)).or_insert_with(|| {
            let r = BoolRelation::from_predicate(w, |k| (0..w).any(|j| lit(j, k >> j & 1 == 1)))
                .unwrap();
            inst.add_relation(r)
        });
        inst.add_constraint(id, vars).unwrap();
    }
    inst
}
