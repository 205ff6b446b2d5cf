use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::lab::homog::verify_homogeneous;
use crate::relation::{known, BoolRelation};
use crate::solve::solve_dispatch;

/// A position inside a defining formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// Coordinate of the defined relation.
    Param(usize),
    /// Existentially quantified variable.
    Exists(usize),
    Const(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Rel(BoolRelation, Vec<Term>),
    Eq(Term, Term),
}

/// `target(x_1..x_n) <-> exists z_1..z_k. atom_1 & .. & atom_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub target: BoolRelation,
    pub exists: usize,
    pub atoms: Vec<Atom>,
}

/// Bound on `arity + exists` for the extensional check.
pub const REPRESENTATION_MAX_VARS: usize = 16;

impl Representation {
    /// `R(x_1..x_n) <-> R(x_1..x_n)`.
    pub fn identity(r: &BoolRelation) -> Self {
        Representation {
            target: r.clone(),
            exists: 0,
            atoms: vec![Atom::Rel(
                r.clone(),
                (0..r.arity()).map(Term::Param).collect(),
            )],
        }
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.atoms.iter().flat_map(|a| match a {
            Atom::Rel(_, ts) => ts.iter().collect::<Vec<_>>(),
            Atom::Eq(a, b) => vec![a, b],
        })
    }

    fn uses_constants(&self) -> bool {
        self.terms().any(|t| matches!(t, Term::Const(_)))
    }

    /// Brute-force projection: the defined tuples are exactly `target`.
    pub fn check(&self) -> Result<()> {
        let n = self.target.arity();
        let total = n + self.exists;
        if total > REPRESENTATION_MAX_VARS {
            return Err(Error::Budget {
                what: "representation check variables",
                needed: total as u128,
                bound: REPRESENTATION_MAX_VARS as u128,
            });
        }
        let mismatch = || Error::DefinitionMismatch(self.target.label());
        for t in self.terms() {
            let bad = match *t {
                Term::Param(i) => i >= n,
                Term::Exists(k) => k >= self.exists,
                Term::Const(_) => false,
            };
            if bad {
                return Err(mismatch());
            }
        }
        for a in &self.atoms {
            if let Atom::Rel(r, ts) = a {
                if r.arity() != ts.len() {
                    return Err(Error::ArityMismatch {
                        expected: r.arity(),
                        got: ts.len(),
                    });
                }
            }
        }
        let value = |t: Term, x: u32, z: u32| match t {
            Term::Param(i) => x >> i & 1 == 1,
            Term::Exists(k) => z >> k & 1 == 1,
            Term::Const(b) => b,
        };
        let holds = |x: u32, z: u32| {
            self.atoms.iter().all(|a| match a {
                Atom::Rel(r, ts) => r.contains(
                    ts.iter()
                        .enumerate()
                        .fold(0, |acc, (j, &t)| acc | (value(t, x, z) as u32) << j),
                ),
                Atom::Eq(a, b) => value(*a, x, z) == value(*b, x, z),
            })
        };
        for x in 0..1u32 << n {
            let defined = (0..1u32 << self.exists).any(|z| holds(x, z));
            if defined != self.target.contains(x) {
                return Err(mismatch());
            }
        }
        Ok(())
    }
}

/// Rewrites every constraint through the representation of its relation
/// (matched by tuples and name). Each quantifier gets a fresh variable, each
/// equation `a = b` becomes `NEQ(a, m), NEQ(m, b)` through a fresh `m`, and
/// constants are two fresh variables `c_0 != c_1`. Original variable ids and
/// the localized set are kept.
pub fn reduce_via_representation(instance: &Instance, defs: &[Representation]) -> Result<Instance> {
    for d in defs {
        d.check()?;
    }
    let find = |r: &BoolRelation| {
        defs.iter()
            .find(|d| &d.target == r && d.target.name() == r.name())
            .or_else(|| defs.iter().find(|d| &d.target == r))
    };
    let mut out = Instance::new(instance.num_vars());
    let neq = known::neq();
    let mut consts: Option<[u32; 2]> = None;
    if instance
        .constraints()
        .iter()
        .any(|c| find(instance.relation(c.relation)).is_some_and(Representation::uses_constants))
    {
        let c0 = out.fresh_var();
        let c1 = out.fresh_var();
        out.constrain(&neq, &[c0, c1])?;
        consts = Some([c0, c1]);
    }
    for c in instance.constraints() {
        let r = instance.relation(c.relation);
        let d = find(r).ok_or_else(|| {
            Error::Invalid(format!("no representation for relation `{}`", r.label()))
        })?;
        let fresh: Vec<u32> = (0..d.exists).map(|_| out.fresh_var()).collect();
        let var = |t: Term| match t {
            Term::Param(i) => c.vars[i],
            Term::Exists(k) => fresh[k],
            Term::Const(b) => consts.expect("constants allocated")[b as usize],
        };
        for a in &d.atoms {
            match a {
                Atom::Rel(q, ts) => {
                    let vars: Vec<u32> = ts.iter().map(|&t| var(t)).collect();
                    out.constrain(q, &vars)?;
                }
                Atom::Eq(a, b) => {
                    let (a, b) = (var(*a), var(*b));
                    let m = out.fresh_var();
                    out.constrain(&neq, &[a, m])?;
                    out.constrain(&neq, &[m, b])?;
                }
            }
        }
    }
    if let Some(l) = instance.localized() {
        out.set_localized(l.to_vec())?;
    }
    Ok(out)
}

/// Bound on entailment checks made by [`unlocalize`].
pub const UNLOCALIZE_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unlocalized {
    /// `C_L`: non-trivial catalogue formulas over distinct `L`-variables
    /// entailed by the instance.
    pub entailed: Vec<Constraint>,
    /// Without a localized set: the original instance when `C_L` is empty,
    /// otherwise the staged instance over `L` and fresh `y_s`.
    pub instance: Instance,
    /// `(y_s, x)` for every equation `x = y_s` of the staged instance.
    pub links: Vec<(u32, u32)>,
    /// When `C_L` is empty, `L` itself with both colors checked.
    pub tail: Option<Vec<u32>>,
    pub tail_verified: bool,
}

impl Unlocalized {
    /// Sends a set homogeneous for `instance` to a subset of `L`: the members
    /// already in `L` plus every `x` linked to a member `y_s`.
    pub fn back_map(&self, h: &[u32], l: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = h.iter().copied().filter(|v| l.contains(v)).collect();
        for &(y, x) in &self.links {
            if h.contains(&y) {
                out.push(x);
            }
        }
        if let Some(tail) = &self.tail {
            out.retain(|v| tail.contains(v));
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn entails(instance: &Instance, r: &BoolRelation, vars: &[u32]) -> Result<bool> {
    let mut probe = instance.clone();
    probe.clear_localized();
    probe.constrain(&r.complement(), vars)?;
    Ok(!solve_dispatch(&probe)?.0.is_sat())
}

/// Replaces a localized instance by an unlocalized one with the same
/// homogeneous sets inside `L`.
pub fn unlocalize(instance: &Instance, budget: u128) -> Result<Unlocalized> {
    let l: Vec<u32> = instance
        .localized()
        .ok_or_else(|| Error::Invalid("instance has no localized set".into()))?
        .to_vec();
    let candidates: Vec<&BoolRelation> = instance
        .relations()
        .iter()
        .filter(|r| !r.is_full())
        .collect();
    let needed: u128 = candidates
        .iter()
        .map(|r| {
            (l.len() as u128)
                .checked_pow(r.arity() as u32)
                .unwrap_or(u128::MAX)
        })
        .fold(0, u128::saturating_add);
    if needed > budget {
        return Err(Error::Budget {
            what: "unlocalize entailment checks",
            needed,
            bound: budget,
        });
    }
    let mut entailed = Vec::new();
    let mut by_relation: HashMap<usize, usize> = HashMap::new();
    let mut out = Instance::new(0);
    for (ri, r) in instance.relations().iter().enumerate() {
        if r.is_full() {
            continue;
        }
        let k = r.arity();
        if k > l.len() {
            continue;
        }
        // ordered k-tuples of L, first coordinate most significant
        for code in 0..(l.len() as u64).pow(k as u32) {
            let mut rest = code;
            let mut vars = vec![0u32; k];
            for slot in vars.iter_mut().rev() {
                *slot = l[(rest % l.len() as u64) as usize];
                rest /= l.len() as u64;
            }
            let distinct = (0..k).all(|a| (a + 1..k).all(|b| vars[a] != vars[b]));
            if distinct && entails(instance, r, &vars)? {
                let id = *by_relation
                    .entry(ri)
                    .or_insert_with(|| out.add_relation(r.clone()));
                entailed.push(Constraint { relation: id, vars });
            }
        }
    }

    if entailed.is_empty() {
        let mut inst = instance.clone();
        inst.clear_localized();
        let tail_verified =
            verify_homogeneous(&inst, &l, false)? && verify_homogeneous(&inst, &l, true)?;
        return Ok(Unlocalized {
            entailed,
            instance: inst,
            links: Vec::new(),
            tail: Some(l),
            tail_verified,
        });
    }

    let base = l.iter().max().map_or(0, |&v| v as usize + 1);
    out.ensure_vars(base);
    let eq = out.add_relation(known::eq());
    let mut links = Vec::new();
    for phi in &entailed {
        let y = out.fresh_var();
        let (i, &x) = phi
            .vars
            .iter()
            .enumerate()
            .max_by_key(|&(_, v)| *v)
            .expect("arity >= 1");
        out.add_constraint(eq, vec![x, y])?;
        let mut vars = phi.vars.clone();
        vars[i] = y;
        out.add_constraint(phi.relation, vars)?;
        links.push((y, x));
    }
    Ok(Unlocalized {
        entailed,
        instance: out,
        links,
        tail: None,
        tail_verified: false,
    })
}

/// Checks that `h` is homogeneous with `color` for `instance`, restricted to
/// the localized set when there is one.
pub fn verify_back_map(instance: &Instance, h: &[u32], color: bool) -> Result<bool> {
    if let Some(l) = instance.localized() {
        if h.iter().any(|v| !l.contains(v)) {
            return Ok(false);
        }
    }
    verify_homogeneous(instance, h, color)
}
