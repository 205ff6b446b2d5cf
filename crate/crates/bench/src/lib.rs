//! Fixtures shared by the criterion benchmarks.

use dichotomy_core::gen::{gen_random_instance, GenKind};
use dichotomy_core::{BoolRelation, Instance};

/// A generated instance; panics on a bad generator name.
pub fn instance(kind: &str, vars: usize, constraints: usize, seed: u64) -> Instance {
    let kind: GenKind = kind.parse().expect("known generator");
    gen_random_instance(&kind, vars, constraints, seed).expect("sizes within bounds")
}

/// Every nonempty relation of the given arity.
pub fn relations_of_arity(arity: usize) -> Vec<BoolRelation> {
    let size = 1u64 << (1u32 << arity);
    (1..size)
        .map(|code| {
            BoolRelation::from_predicate(arity, |k| code >> k & 1 == 1).expect("small arity")
        })
        .collect()
}
