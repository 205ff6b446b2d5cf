//! Satisfiability engines for the tractable classes, a brute-force oracle,
//! a DPLL fallback and the dispatcher routing between them.

mod brute;
mod common;
mod default;
mod dispatch;
mod dpll;
mod horn;
mod two_sat;
mod xor;

pub use brute::{brute_force_sat, BRUTE_FORCE_MAX_VARS};
pub use default::solve_default;
pub use dispatch::{
    select_engine, solve_dispatch, solve_with_assumptions, solve_with_engine, Engine,
};
pub use dpll::solve_generic;
pub use horn::{solve_horn, HornOutcome};
pub use two_sat::solve_two_sat;
pub use xor::{ground_xor_system, solve_xor, solve_xor_equations, XOR_MAX_WORDS};
