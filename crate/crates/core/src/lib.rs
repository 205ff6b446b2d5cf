//! Boolean constraint satisfaction: relation classification under the
//! complexity, compactness and Ramsey-type dichotomies, specialised solvers
//! for each tractable class, and finite-prefix versions of the compactness,
//! homogeneity and diagonalization constructions built on them.

pub mod bench;
pub mod clone;
pub mod compile;
pub mod error;
pub mod gen;
pub mod instance;
pub mod io;
pub mod lab;
pub mod relation;
pub mod solve;

pub use error::{Error, Result};
pub use instance::{verify_model, Assignment, Constraint, Instance, SolveResult};
pub use relation::{BoolRelation, FormulaAst, PropertyProfile, TruthTable};
