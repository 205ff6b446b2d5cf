use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::relation::BoolRelation;

/// Constraints released in stages. The batch of stage `s` only mentions
/// variables `< s + 1`, so a prefix of stages is an instance over an initial
/// segment of the variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintStream {
    relations: Vec<BoolRelation>,
    batches: Vec<Vec<Constraint>>,
}

impl ConstraintStream {
    pub fn new(relations: Vec<BoolRelation>) -> Self {
        ConstraintStream {
            relations,
            batches: Vec::new(),
        }
    }

    /// Releases every constraint of `instance` at the stage of its largest
    /// variable.
    pub fn from_instance(instance: &Instance) -> Self {
        let mut s = Self::new(instance.relations().to_vec());
        for c in instance.constraints() {
            let top = c.vars.iter().copied().max().unwrap_or(0) as usize;
            s.push_at(top, c.clone());
        }
        s
    }

    /// Stream whose stage `s` batch is `gen(s)`, for `stages` stages.
    pub fn generate(
        relations: Vec<BoolRelation>,
        stages: usize,
        mut gen: impl FnMut(usize) -> Vec<Constraint>,
    ) -> Result<Self> {
        let mut s = Self::new(relations);
        for stage in 0..stages {
            for c in gen(stage) {
                s.push(stage, c)?;
            }
        }
        Ok(s)
    }

    /// Adds `c` to the batch of `stage`, enforcing the variable bound.
    pub fn push(&mut self, stage: usize, c: Constraint) -> Result<()> {
        let r = self
            .relations
            .get(c.relation)
            .ok_or_else(|| Error::Invalid(format!("relation index {} unknown", c.relation)))?;
        if r.arity() != c.vars.len() {
            return Err(Error::ArityMismatch {
                expected: r.arity(),
                got: c.vars.len(),
            });
        }
        if let Some(&v) = c.vars.iter().find(|&&v| v as usize > stage) {
            return Err(Error::VariableOutOfRange {
                var: v,
                universe: stage + 1,
            });
        }
        self.push_at(stage, c);
        Ok(())
    }

    fn push_at(&mut self, stage: usize, c: Constraint) {
        if self.batches.len() <= stage {
            self.batches.resize(stage + 1, Vec::new());
        }
        self.batches[stage].push(c);
    }

    pub fn relations(&self) -> &[BoolRelation] {
        &self.relations
    }

    /// Number of stages with a (possibly empty) batch.
    pub fn stages(&self) -> usize {
        self.batches.len()
    }

    pub fn batch(&self, stage: usize) -> &[Constraint] {
        self.batches.get(stage).map_or(&[], Vec::as_slice)
    }

    /// Stages `0..n` as an instance over variables `0..n`.
    pub fn prefix(&self, n: usize) -> Instance {
        let mut inst = Instance::new(n);
        for r in &self.relations {
            inst.add_relation(r.clone());
        }
        for stage in 0..n.min(self.batches.len()) {
            for c in &self.batches[stage] {
                inst.add_constraint(c.relation, c.vars.clone())
                    .expect("stream constraints respect the stage bound");
            }
        }
        inst
    }

    /// Stages `0..n`, in release order.
    pub fn constraints_before(&self, n: usize) -> impl Iterator<Item = &Constraint> {
        self.batches.iter().take(n).flatten()
    }
}

/// Largest depth accepted by [`compactness_path`].
pub const COMPACTNESS_MAX_DEPTH: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompactnessOutcome {
    /// Leftmost surviving string of the requested length, i.e. values of
    /// `x_0 .. x_{d-1}`.
    Path(Vec<bool>),
    /// No string of this length survives.
    DiesAt(usize),
}

/// Depth-first search for the leftmost length-`depth` string `σ` such that
/// no constraint released before stage `|τ|` is falsified by any prefix `τ`
/// of `σ`.
pub fn compactness_path(stream: &ConstraintStream, depth: usize) -> Result<CompactnessOutcome> {
    if depth > COMPACTNESS_MAX_DEPTH {
        return Err(Error::Budget {
            what: "compactness depth",
            needed: depth as u128,
            bound: COMPACTNESS_MAX_DEPTH as u128,
        });
    }
    let ok = |sigma: &[bool]| {
        let n = sigma.len();
        // constraints of the newest stage; older ones were checked on the way
        n == 0
            || stream.batch(n - 1).iter().all(|c| {
                let t = Instance::tuple_under(c, |v| sigma[v as usize]);
                stream.relations[c.relation].contains(t)
            })
    };
    let mut sigma = Vec::with_capacity(depth);
    let mut deepest = 0;
    fn dfs(
        sigma: &mut Vec<bool>,
        depth: usize,
        deepest: &mut usize,
        ok: &dyn Fn(&[bool]) -> bool,
    ) -> bool {
        *deepest = (*deepest).max(sigma.len());
        if sigma.len() == depth {
            return true;
        }
        for b in [false, true] {
            sigma.push(b);
            if ok(sigma) && dfs(sigma, depth, deepest, ok) {
                return true;
            }
            sigma.pop();
        }
        false
    }
    Ok(if dfs(&mut sigma, depth, &mut deepest, &ok) {
        CompactnessOutcome::Path(sigma)
    } else {
        CompactnessOutcome::DiesAt(deepest + 1)
    })
}
