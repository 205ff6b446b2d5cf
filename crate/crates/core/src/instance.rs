//! Constraint instances, assignments and solver results.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::BoolRelation;

/// `R(y_1, .., y_n)`: a catalogue relation applied to a variable tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub relation: usize,
    pub vars: Vec<u32>,
}

/// Variables `0..num_vars`, a relation catalogue, constraints over the
/// catalogue and an optional localized set `L`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    relations: Vec<BoolRelation>,
    num_vars: usize,
    constraints: Vec<Constraint>,
    localized: Option<Vec<u32>>,
}

impl Instance {
    pub fn new(num_vars: usize) -> Self {
        Instance {
            num_vars,
            ..Self::default()
        }
    }

    /// Adds `r` to the catalogue, reusing an entry with the same tuples and
    /// name. Returns its catalogue index.
    pub fn add_relation(&mut self, r: BoolRelation) -> usize {
        if let Some(i) = self
            .relations
            .iter()
            .position(|q| q == &r && q.name() == r.name())
        {
            return i;
        }
        self.relations.push(r);
        self.relations.len() - 1
    }

    pub fn add_constraint(&mut self, relation: usize, vars: Vec<u32>) -> Result<usize> {
        let r = self.relations.get(relation).ok_or_else(|| {
            Error::Invalid(format!("relation index {relation} not in the catalogue"))
        })?;
        if vars.len() != r.arity() {
            return Err(Error::ArityMismatch {
                expected: r.arity(),
                got: vars.len(),
            });
        }
        if let Some(&v) = vars.iter().find(|&&v| v as usize >= self.num_vars) {
            return Err(Error::VariableOutOfRange {
                var: v,
                universe: self.num_vars,
            });
        }
        self.constraints.push(Constraint { relation, vars });
        Ok(self.constraints.len() - 1)
    }

    /// Catalogues `r` if needed and applies it to `vars`.
    pub fn constrain(&mut self, r: &BoolRelation, vars: &[u32]) -> Result<usize> {
        let id = match self
            .relations
            .iter()
            .position(|q| q == r && q.name() == r.name())
        {
            Some(i) => i,
            None => self.add_relation(r.clone()),
        };
        self.add_constraint(id, vars.to_vec())
    }

    /// Appends a fresh variable and returns its id.
    pub fn fresh_var(&mut self) -> u32 {
        self.num_vars += 1;
        (self.num_vars - 1) as u32
    }

    pub fn ensure_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    pub fn set_localized(&mut self, mut l: Vec<u32>) -> Result<()> {
        l.sort_unstable();
        l.dedup();
        if let Some(&v) = l.iter().find(|&&v| v as usize >= self.num_vars) {
            return Err(Error::VariableOutOfRange {
                var: v,
                universe: self.num_vars,
            });
        }
        self.localized = Some(l);
        Ok(())
    }

    pub fn clear_localized(&mut self) {
        self.localized = None;
    }

    pub fn relations(&self) -> &[BoolRelation] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &BoolRelation {
        &self.relations[i]
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn localized(&self) -> Option<&[u32]> {
        self.localized.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Catalogue indices referenced by at least one constraint, ascending.
    pub fn used_relation_ids(&self) -> Vec<usize> {
        let mut used = vec![false; self.relations.len()];
        for c in &self.constraints {
            used[c.relation] = true;
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn used_relations(&self) -> Vec<&BoolRelation> {
        self.used_relation_ids()
            .into_iter()
            .map(|i| &self.relations[i])
            .collect()
    }

    /// Tuple index the constraint sees under a total valuation.
    #[inline]
    pub fn tuple_under(c: &Constraint, value: impl Fn(u32) -> bool) -> u32 {
        c.vars
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &v)| acc | (value(v) as u32) << j)
    }

    /// The first constraint violated by `values`, if any.
    pub fn first_violation(&self, values: &[bool]) -> Option<usize> {
        self.constraints.iter().position(|c| {
            !self.relations[c.relation].contains(Self::tuple_under(c, |v| values[v as usize]))
        })
    }
}

/// A partial or total map from variable ids to truth values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    /// Nothing assigned over a universe of `n` variables.
    pub fn partial(n: usize) -> Self {
        Assignment {
            values: vec![None; n],
        }
    }

    pub fn total(values: Vec<bool>) -> Self {
        Assignment {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(u32, bool)]) -> Self {
        let mut a = Self::partial(n);
        for &(v, b) in pairs {
            a.set(v, b);
        }
        a
    }

    /// Universe size.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: u32) -> Option<bool> {
        self.values.get(v as usize).copied().flatten()
    }

    /// Sets `v`, growing the universe if needed.
    pub fn set(&mut self, v: u32, b: bool) {
        let i = v as usize;
        if i >= self.values.len() {
            self.values.resize(i + 1, None);
        }
        self.values[i] = Some(b);
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Assigned `(variable, value)` pairs in id order.
    pub fn assigned(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| (i as u32, b)))
    }

    /// All values, or the first unassigned variable.
    pub fn to_bools(&self) -> Result<Vec<bool>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(Error::PartialAssignment(i as u32)))
            .collect()
    }

    /// Values of the first `n` variables as a bitstring, unassigned as `-`.
    pub fn prefix_string(&self, n: usize) -> String {
        (0..n as u32)
            .map(|v| match self.get(v) {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            })
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, b)) in self.assigned().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={}", b as u8)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    /// `failed` names the first constraint found unsatisfiable in the
    /// engine's own processing order, when the engine can tell.
    Unsat {
        failed: Option<usize>,
    },
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat(a) => Some(a),
            SolveResult::Unsat { .. } => None,
        }
    }

    pub fn into_model(self) -> Option<Assignment> {
        match self {
            SolveResult::Sat(a) => Some(a),
            SolveResult::Unsat { .. } => None,
        }
    }

    pub(crate) fn unsat() -> Self {
        SolveResult::Unsat { failed: None }
    }
}

/// True iff the total assignment `nu` satisfies every constraint.
pub fn verify_model(instance: &Instance, nu: &Assignment) -> Result<bool> {
    if nu.len() < instance.num_vars() {
        return Err(Error::PartialAssignment(nu.len() as u32));
    }
    for c in instance.constraints() {
        let mut t = 0u32;
        for (j, &v) in c.vars.iter().enumerate() {
            match nu.get(v) {
                Some(b) => t |= (b as u32) << j,
                None => return Err(Error::PartialAssignment(v)),
            }
        }
        if !instance.relation(c.relation).contains(t) {
            return Ok(false);
        }
    }
    if let Some(v) = (0..instance.num_vars() as u32).find(|&v| nu.get(v).is_none()) {
        return Err(Error::PartialAssignment(v));
    }
    Ok(true)
}
