use std::fmt::Write;

use crate::instance::Instance;

/// DIMACS CNF with one clause per falsifying tuple of every constraint.
/// Variable `k` is DIMACS variable `k + 1`; constraints keep their order and
/// tuples are ascending.
pub fn export_dimacs(instance: &Instance) -> String {
    let mut body = String::new();
    let mut clauses = 0usize;
    for c in instance.constraints() {
        let r = instance.relation(c.relation);
        for t in r.non_tuples() {
            for (j, &v) in c.vars.iter().enumerate() {
                let id = v as i64 + 1;
                let lit = if t >> j & 1 == 1 { -id } else { id };
                write!(body, "{lit} ").unwrap();
            }
            body.push_str("0\n");
            clauses += 1;
        }
    }
    format!("p cnf {} {clauses}\n{body}", instance.num_vars())
}
