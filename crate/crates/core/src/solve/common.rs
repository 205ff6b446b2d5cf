use crate::compile::{Clause, Literal};
use crate::error::{Error, Result};
use crate::instance::{Instance, SolveResult};

/// Renames a relation-level clause onto instance variables. Repeated
/// variables merge; `None` when the clause becomes a tautology.
pub(crate) fn instantiate(clause: &Clause, vars: &[u32]) -> Option<Vec<Literal>> {
    let mut lits: Vec<Literal> = clause
        .literals()
        .iter()
        .map(|l| Literal {
            var: vars[l.var as usize],
            positive: l.positive,
        })
        .collect();
    lits.sort_unstable();
    lits.dedup();
    if lits.windows(2).any(|w| w[0].var == w[1].var) {
        return None;
    }
    Some(lits)
}

/// Immediate Unsat when a constraint uses an empty relation.
pub(crate) fn degenerate_check(instance: &Instance) -> Option<SolveResult> {
    instance
        .constraints()
        .iter()
        .position(|c| instance.relation(c.relation).is_empty())
        .map(|i| SolveResult::Unsat { failed: Some(i) })
}

/// Compiles every catalogue relation referenced by a constraint, once.
pub(crate) fn compile_used<T>(
    instance: &Instance,
    compile: impl Fn(&crate::relation::BoolRelation) -> Result<T>,
) -> Result<Vec<Option<T>>> {
    let mut out: Vec<Option<T>> = (0..instance.relations().len()).map(|_| None).collect();
    for id in instance.used_relation_ids() {
        let compiled = compile(instance.relation(id)).map_err(|e| match e {
            Error::NotInClass { relation, class } => {
                Error::WrongClass(format!("relation `{relation}` is not {class}"))
            }
            other => other,
        })?;
        out[id] = Some(compiled);
    }
    Ok(out)
}
