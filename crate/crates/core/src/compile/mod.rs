//! Formula parsing, compilation of relations into horn/2-CNF/XOR normal
//! forms, and DIMACS export.

mod cnf;
mod dimacs;
mod parse;
mod xor;

pub use cnf::{
    cohorn_clause_cover, compile_cohorn_cnf, compile_horn_cnf, compile_two_cnf, horn_clause_cover,
    two_cnf_clause_cover, Clause, Literal, CNF_MAX_ARITY,
};
pub use dimacs::export_dimacs;
pub use parse::parse_formula;
pub use xor::{compile_xor_system, xor_equation_cover, XorEquation};
