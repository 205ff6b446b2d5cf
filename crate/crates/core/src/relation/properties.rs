use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::polymorphism::{is_polymorphism_within, structural, DEFAULT_POLY_BUDGET};
use crate::relation::{named_function, BoolRelation, TruthTable};

/// The per-relation predicates every classifier is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PropertyProfile {
    pub zero_valid: bool,
    pub one_valid: bool,
    pub zero_default: bool,
    pub one_default: bool,
    pub horn: bool,
    pub cohorn: bool,
    pub affine: bool,
    pub bijunctive: bool,
    pub complementive: bool,
}

impl BoolRelation {
    /// `i`-valid: the all-`i` tuple is a member.
    pub fn is_valid_for(&self, value: bool) -> bool {
        self.contains(if value { self.all_ones() } else { 0 })
    }

    /// `i`-default: setting any single coordinate of a member to `i` stays
    /// inside the relation.
    pub fn is_default_for(&self, value: bool) -> bool {
        self.tuples().all(|t| {
            (0..self.arity()).all(|j| {
                let flipped = if value { t | 1 << j } else { t & !(1 << j) };
                self.contains(flipped)
            })
        })
    }

    pub fn is_complementive(&self) -> bool {
        let full = self.all_ones();
        self.tuples().all(|t| self.contains(!t & full))
    }
}

pub(crate) fn closed_under(name: &str, r: &BoolRelation) -> bool {
    let f: TruthTable = named_function(name, None).expect("catalogue name");
    match is_polymorphism_within(&f, r, DEFAULT_POLY_BUDGET) {
        Ok(v) => v,
        Err(_) => match name {
            "conj" => structural::conj_closed(r),
            "disj" => structural::disj_closed(r),
            "maj" => structural::maj_closed(r),
            "aff" => structural::aff_closed(r),
            _ => unreachable!("only generator closures are profiled"),
        },
    }
}

/// Computes the property profile of a nonempty relation.
///
/// The four syntactic classes are decided by closure under conj, disj, maj
/// and aff. Small relations go through [`is_polymorphism`]; once `|R|^m`
/// exceeds the polymorphism budget the equivalent structural test is used.
///
/// [`is_polymorphism`]: crate::relation::is_polymorphism
pub fn relation_properties(r: &BoolRelation) -> Result<PropertyProfile> {
    if r.is_empty() {
        return Err(Error::Degenerate(format!(
            "relation `{}` of arity {} is empty",
            r.label(),
            r.arity()
        )));
    }
    Ok(PropertyProfile {
        zero_valid: r.is_valid_for(false),
        one_valid: r.is_valid_for(true),
        zero_default: r.is_default_for(false),
        one_default: r.is_default_for(true),
        horn: closed_under("conj", r),
        cohorn: closed_under("disj", r),
        affine: closed_under("aff", r),
        bijunctive: closed_under("maj", r),
        complementive: r.is_complementive(),
    })
}
