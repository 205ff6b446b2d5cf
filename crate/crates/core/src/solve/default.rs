use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, SolveResult};
use crate::relation::BoolRelation;

/// `[x]` when `value` is false, `[!x]` when true.
fn is_forcing_unit(r: &BoolRelation, value: bool) -> bool {
    r.arity() == 1 && r.len() == 1 && r.contains(!value as u32)
}

/// Whether every relation is `value`-default or the opposite unit relation.
pub(crate) fn default_applies(relations: &[&BoolRelation], value: bool) -> bool {
    relations
        .iter()
        .all(|r| is_forcing_unit(r, value) || (!r.is_empty() && r.is_default_for(value)))
}

/// Every variable gets `value` except those under a unit constraint forcing
/// the opposite value; the result is checked before being returned.
pub fn solve_default(instance: &Instance, value: bool) -> Result<SolveResult> {
    let used = instance.used_relations();
    if !default_applies(&used, value) {
        let unit = if value { "[!x]" } else { "[x]" };
        return Err(Error::WrongClass(format!(
            "some relation is neither {}-default nor {unit}",
            value as u8
        )));
    }
    let mut values = vec![value; instance.num_vars()];
    for c in instance.constraints() {
        if is_forcing_unit(instance.relation(c.relation), value) {
            values[c.vars[0] as usize] = !value;
        }
    }
    Ok(match instance.first_violation(&values) {
        None => SolveResult::Sat(Assignment::total(values)),
        Some(i) => SolveResult::Unsat { failed: Some(i) },
    })
}
