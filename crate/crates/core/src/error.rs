use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {arity} exceeds the cap of {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("tuple index {index} out of range for arity {arity}")]
    TupleOutOfRange { index: u64, arity: usize },

    #[error("budget exceeded: {what} needs {needed}, bound is {bound}")]
    Budget {
        what: &'static str,
        needed: u128,
        bound: u128,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("relation `{relation}` is not {class}")]
    NotInClass {
        relation: String,
        class: &'static str,
    },

    #[error("instance is outside the engine's class: {0}")]
    WrongClass(String),

    #[error("assignment is partial: variable {0} is unassigned")]
    PartialAssignment(u32),

    #[error("variable {var} outside universe of {universe}")]
    VariableOutOfRange { var: u32, universe: usize },

    #[error("no gadget: {0}")]
    NoGadget(String),

    #[error("definition for `{0}` does not represent the target relation")]
    DefinitionMismatch(String),

    #[error("encoding violation: {0}")]
    Encoding(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
