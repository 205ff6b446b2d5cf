use std::fmt;

use crate::error::{Error, Result};
use crate::relation::BoolRelation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// Index into [`FormulaAst::vars`].
    Var(usize),
    Const(bool),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    /// `=`, Boolean equivalence.
    Equiv(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Evaluates under the assignment packed little-endian into `bits`.
    pub fn eval(&self, bits: u32) -> bool {
        match self {
            Formula::Var(i) => bits >> i & 1 == 1,
            Formula::Const(b) => *b,
            Formula::Not(a) => !a.eval(bits),
            Formula::And(a, b) => a.eval(bits) && b.eval(bits),
            Formula::Or(a, b) => a.eval(bits) || b.eval(bits),
            Formula::Implies(a, b) => !a.eval(bits) || b.eval(bits),
            Formula::Xor(a, b) => a.eval(bits) != b.eval(bits),
            Formula::Equiv(a, b) => a.eval(bits) == b.eval(bits),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Var(i) => Some(*i),
            Formula::Const(_) => None,
            Formula::Not(a) => a.max_var(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Xor(a, b)
            | Formula::Equiv(a, b) => a.max_var().max(b.max_var()),
        }
    }
}

/// A parsed formula together with its ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaAst {
    pub root: Formula,
    pub vars: Vec<String>,
}

impl FormulaAst {
    pub const MAX_VARS: usize = 16;

    pub fn new(root: Formula, vars: Vec<String>) -> Result<Self> {
        if vars.len() > Self::MAX_VARS {
            return Err(Error::ArityCap {
                arity: vars.len(),
                cap: Self::MAX_VARS,
            });
        }
        if let Some(m) = root.max_var() {
            if m >= vars.len() {
                return Err(Error::Invalid(format!(
                    "variable index {m} missing from the variable list"
                )));
            }
        }
        Ok(FormulaAst { root, vars })
    }
}

/// `[phi]`: tuple `k` is a member iff `phi` holds under the assignment `k`
/// (variable `j` in the AST's list is coordinate `j + 1`).
pub fn relation_of_formula(ast: &FormulaAst) -> Result<BoolRelation> {
    let n = ast.vars.len();
    if n == 0 {
        return Err(Error::Degenerate("formula has no variables".into()));
    }
    BoolRelation::from_predicate(n, |k| ast.root.eval(k))
}

impl fmt::Display for FormulaAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Formula, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let bin = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
                f.write_str("(")?;
                go(a, vars, f)?;
                write!(f, " {op} ")?;
                go(b, vars, f)?;
                f.write_str(")")
            };
            match node {
                Formula::Var(i) => f.write_str(&vars[*i]),
                Formula::Const(b) => f.write_str(if *b { "1" } else { "0" }),
                Formula::Not(a) => {
                    f.write_str("!")?;
                    go(a, vars, f)
                }
                Formula::And(a, b) => bin(f, a, "&", b),
                Formula::Or(a, b) => bin(f, a, "|", b),
                Formula::Implies(a, b) => bin(f, a, "->", b),
                Formula::Xor(a, b) => bin(f, a, "+", b),
                Formula::Equiv(a, b) => bin(f, a, "=", b),
            }
        }
        go(&self.root, &self.vars, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> Box<Formula> {
        Box::new(Formula::Var(i))
    }

    #[test]
    fn implication_relation() {
        let ast = FormulaAst::new(
            Formula::Implies(var(0), var(1)),
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let r = relation_of_formula(&ast).unwrap();
        assert_eq!(
            r,
            BoolRelation::from_bitstrings(2, &["00", "01", "11"]).unwrap()
        );
    }

    #[test]
    fn contradiction_is_degenerate() {
        let ast = FormulaAst::new(
            Formula::And(var(0), Box::new(Formula::Not(var(0)))),
            vec!["x".into()],
        )
        .unwrap();
        assert!(relation_of_formula(&ast).unwrap().is_degenerate());
    }

    #[test]
    fn rejects_unknown_variable() {
        assert!(FormulaAst::new(Formula::Var(2), vec!["x".into()]).is_err());
        let many = (0..17).map(|i| format!("v{i}")).collect();
        assert!(FormulaAst::new(Formula::Const(true), many).is_err());
    }
}
