use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compile::CNF_MAX_ARITY;
use crate::error::{Error, Result};
use crate::instance::{verify_model, Assignment, Instance, SolveResult};
use crate::relation::{known, relation_properties, BoolRelation, PropertyProfile};
use crate::solve::default::default_applies;
use crate::solve::{solve_default, solve_generic, solve_horn, solve_two_sat, solve_xor};

/// Which engine produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Some constraint uses the empty relation.
    Degenerate,
    Const0,
    Const1,
    Default0,
    Default1,
    Horn,
    Cohorn,
    TwoSat,
    Xor,
    Generic,
}

impl Engine {
    pub const ALL: [Engine; 10] = [
        Engine::Degenerate,
        Engine::Const0,
        Engine::Const1,
        Engine::Default0,
        Engine::Default1,
        Engine::Horn,
        Engine::Cohorn,
        Engine::TwoSat,
        Engine::Xor,
        Engine::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Degenerate => "degenerate",
            Engine::Const0 => "const0",
            Engine::Const1 => "const1",
            Engine::Default0 => "default0",
            Engine::Default1 => "default1",
            Engine::Horn => "horn",
            Engine::Cohorn => "cohorn",
            Engine::TwoSat => "two_sat",
            Engine::Xor => "xor",
            Engine::Generic => "generic",
        }
    }

    /// Whether the engine's class precondition holds for all the profiles.
    pub fn admits(self, relations: &[&BoolRelation]) -> bool {
        let profiles: Option<Vec<PropertyProfile>> = relations
            .iter()
            .map(|r| relation_properties(r).ok())
            .collect();
        let Some(ps) = profiles else {
            return self == Engine::Degenerate || self == Engine::Generic;
        };
        let max_arity = relations.iter().map(|r| r.arity()).max().unwrap_or(0);
        match self {
            Engine::Degenerate => false,
            Engine::Const0 => ps.iter().all(|p| p.zero_valid),
            Engine::Const1 => ps.iter().all(|p| p.one_valid),
            Engine::Default0 => default_applies(relations, false),
            Engine::Default1 => default_applies(relations, true),
            Engine::Horn => max_arity <= CNF_MAX_ARITY && ps.iter().all(|p| p.horn),
            Engine::Cohorn => max_arity <= CNF_MAX_ARITY && ps.iter().all(|p| p.cohorn),
            Engine::TwoSat => max_arity <= CNF_MAX_ARITY && ps.iter().all(|p| p.bijunctive),
            Engine::Xor => ps.iter().all(|p| p.affine),
            Engine::Generic => true,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown engine `{s}`")))
    }
}

/// Routing order: constant 0, constant 1, default 0, default 1, horn,
/// co-horn, 2-SAT, XOR, generic. Engines whose compilers cannot take the
/// instance's arities are skipped.
pub fn select_engine(instance: &Instance) -> Engine {
    let used = instance.used_relations();
    if used.iter().any(|r| r.is_empty()) {
        return Engine::Degenerate;
    }
    [
        Engine::Const0,
        Engine::Const1,
        Engine::Default0,
        Engine::Default1,
        Engine::Horn,
        Engine::Cohorn,
        Engine::TwoSat,
        Engine::Xor,
    ]
    .into_iter()
    .find(|e| e.admits(&used))
    .unwrap_or(Engine::Generic)
}

/// Same instance over the complement images of its relations.
pub(crate) fn complement_instance(instance: &Instance) -> Instance {
    let mut out = Instance::new(instance.num_vars());
    let ids: Vec<usize> = instance
        .relations()
        .iter()
        .map(|r| out.add_relation(r.complement_image()))
        .collect();
    for c in instance.constraints() {
        out.add_constraint(ids[c.relation], c.vars.clone())
            .expect("same shape");
    }
    out
}

/// Runs one engine. Sat answers are checked against the instance.
pub fn solve_with_engine(instance: &Instance, engine: Engine) -> Result<SolveResult> {
    let result = match engine {
        Engine::Degenerate => match crate::solve::common::degenerate_check(instance) {
            Some(r) => r,
            None => {
                return Err(Error::WrongClass(
                    "no constraint uses an empty relation".into(),
                ))
            }
        },
        Engine::Const0 | Engine::Const1 => {
            let value = engine == Engine::Const1;
            if !engine.admits(&instance.used_relations()) {
                return Err(Error::WrongClass(format!(
                    "instance is not {}-valid",
                    value as u8
                )));
            }
            SolveResult::Sat(Assignment::total(vec![value; instance.num_vars()]))
        }
        Engine::Default0 => solve_default(instance, false)?,
        Engine::Default1 => solve_default(instance, true)?,
        Engine::Horn => solve_horn(instance)?.result,
        Engine::Cohorn => match solve_horn(&complement_instance(instance))?.result {
            SolveResult::Sat(m) => SolveResult::Sat(Assignment::total(
                m.to_bools()?.into_iter().map(|b| !b).collect(),
            )),
            unsat => unsat,
        },
        Engine::TwoSat => solve_two_sat(instance)?,
        Engine::Xor => solve_xor(instance)?,
        Engine::Generic => solve_generic(instance),
    };
    if let SolveResult::Sat(m) = &result {
        if !verify_model(instance, m)? {
            return Err(Error::Internal(format!(
                "{engine} engine returned a non-model"
            )));
        }
    }
    Ok(result)
}

/// Classifies the instance's relations and runs the matching engine.
pub fn solve_dispatch(instance: &Instance) -> Result<(SolveResult, Engine)> {
    let engine = select_engine(instance);
    Ok((solve_with_engine(instance, engine)?, engine))
}

/// Satisfiability with the assigned variables of `partial` pinned through
/// unit constraints.
pub fn solve_with_assumptions(
    instance: &Instance,
    partial: &Assignment,
) -> Result<(SolveResult, Engine)> {
    let mut pinned = instance.clone();
    pinned.clear_localized();
    for (v, b) in partial.assigned() {
        if v as usize >= instance.num_vars() {
            return Err(Error::VariableOutOfRange {
                var: v,
                universe: instance.num_vars(),
            });
        }
        let unit = if b {
            known::unit_pos()
        } else {
            known::unit_neg()
        };
        pinned.constrain(&unit, &[v])?;
    }
    solve_dispatch(&pinned)
}
