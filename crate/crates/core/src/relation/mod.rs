//! Boolean relations, Boolean functions and the closure machinery shared by
//! every classifier and solver.

mod bool_relation;
mod formula;
pub mod polymorphism;
pub(crate) mod properties;
mod table;

pub use bool_relation::{known, parse_tuple, tuple_to_bitstring, BoolRelation};
pub use formula::{relation_of_formula, Formula, FormulaAst};
pub use polymorphism::{
    apply_pointwise, is_polymorphism, is_polymorphism_within, DEFAULT_POLY_BUDGET,
};
pub use properties::{relation_properties, PropertyProfile};
pub use table::{dual_function, named_function, TruthTable};
