use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::lab::stream::ConstraintStream;
use crate::relation::relation_properties;
use crate::solve::{solve_horn, solve_with_assumptions};

/// A set `H` claimed homogeneous with color `color` for the first `prefix`
/// stages of a stream (or a whole instance), and whether that was checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityCertificate {
    pub set: Vec<u32>,
    pub color: bool,
    pub prefix: usize,
    pub verified: bool,
}

/// Whether `instance` has a model sending every variable of `h` to `color`.
pub fn verify_homogeneous(instance: &Instance, h: &[u32], color: bool) -> Result<bool> {
    let mut inst = instance.clone();
    if let Some(&top) = h.iter().max() {
        inst.ensure_vars(top as usize + 1);
    }
    let pins: Vec<(u32, bool)> = h.iter().map(|&v| (v, color)).collect();
    let partial = Assignment::from_pairs(inst.num_vars(), &pins);
    Ok(solve_with_assumptions(&inst, &partial)?.0.is_sat())
}

/// The larger color class of `nu` on `l`; ties go to color 0.
pub fn model_to_homogeneous(nu: &Assignment, l: &[u32]) -> Result<(Vec<u32>, bool)> {
    let mut classes = (Vec::new(), Vec::new());
    for &v in l {
        match nu.get(v) {
            Some(false) => classes.0.push(v),
            Some(true) => classes.1.push(v),
            None => return Err(Error::PartialAssignment(v)),
        }
    }
    Ok(if classes.1.len() > classes.0.len() {
        (classes.1, true)
    } else {
        (classes.0, false)
    })
}

fn prefix_instance(stream: &ConstraintStream, l: &[u32], n: usize) -> Instance {
    let mut inst = stream.prefix(n);
    if let Some(&top) = l.iter().max() {
        inst.ensure_vars(top as usize + 1);
    }
    inst
}

/// [`homog_horn_threshold`] with threshold `|L| / 2`.
pub fn homog_horn(
    stream: &ConstraintStream,
    l: &[u32],
    n: usize,
) -> Result<HomogeneityCertificate> {
    homog_horn_threshold(stream, l, n, l.len() / 2)
}

/// Homogeneous set for a horn stream from its forced set `F` on the first
/// `n` stages: `F ∩ L` with color 1 when it has more than `threshold`
/// elements, otherwise `L \ F` with color 0.
pub fn homog_horn_threshold(
    stream: &ConstraintStream,
    l: &[u32],
    n: usize,
    threshold: usize,
) -> Result<HomogeneityCertificate> {
    let inst = prefix_instance(stream, l, n);
    for r in inst.used_relations() {
        if !relation_properties(r)?.horn {
            return Err(Error::WrongClass(format!(
                "relation `{}` is not horn",
                r.label()
            )));
        }
    }
    let outcome = solve_horn(&inst)?;
    let mut forced = vec![false; inst.num_vars()];
    for &v in &outcome.forced {
        forced[v as usize] = true;
    }
    let inside: Vec<u32> = l.iter().copied().filter(|&v| forced[v as usize]).collect();
    let (set, color) = if inside.len() > threshold {
        (inside, true)
    } else {
        (
            l.iter().copied().filter(|&v| !forced[v as usize]).collect(),
            false,
        )
    };
    let verified = outcome.result.is_sat() && verify_homogeneous(&inst, &set, color)?;
    Ok(HomogeneityCertificate {
        set,
        color,
        prefix: n,
        verified,
    })
}

/// Default bound on solver calls made by [`homog_search`].
pub const HOMOG_SEARCH_BUDGET: u64 = 100_000;

/// A largest subset of `l` homogeneous for `instance` with a single color,
/// found by branch and bound over `l` in ascending order; ties go to color 0.
///
/// Every node pins one more variable and calls the solver; the model it
/// returns gives a lower bound, and a branch is cut once the pinned count
/// plus the remaining candidates cannot beat the best set found.
pub fn homog_search(instance: &Instance, l: &[u32], budget: u64) -> Result<HomogeneityCertificate> {
    let mut inst = instance.clone();
    inst.clear_localized();
    let mut l = l.to_vec();
    l.sort_unstable();
    l.dedup();
    if let Some(&top) = l.last() {
        inst.ensure_vars(top as usize + 1);
    }
    let mut calls = 0u64;
    let mut solve = |pins: &[(u32, bool)]| -> Result<Option<Assignment>> {
        calls += 1;
        if calls > budget {
            return Err(Error::Budget {
                what: "homogeneity search solver calls",
                needed: calls as u128,
                bound: budget as u128,
            });
        }
        let partial = Assignment::from_pairs(inst.num_vars(), pins);
        Ok(solve_with_assumptions(&inst, &partial)?.0.into_model())
    };
    let Some(first) = solve(&[])? else {
        return Ok(HomogeneityCertificate {
            set: Vec::new(),
            color: false,
            prefix: instance.constraints().len(),
            verified: false,
        });
    };

    type PinnedSolve<'a> = dyn FnMut(&[(u32, bool)]) -> Result<Option<Assignment>> + 'a;
    let mut best: Option<(Vec<u32>, bool)> = None;
    for color in [false, true] {
        let seed: Vec<u32> = l
            .iter()
            .copied()
            .filter(|&v| first.get(v) == Some(color))
            .collect();
        let mut best_c = seed;
        let mut pins: Vec<(u32, bool)> = Vec::new();
        fn go(
            i: usize,
            l: &[u32],
            color: bool,
            pins: &mut Vec<(u32, bool)>,
            best: &mut Vec<u32>,
            solve: &mut PinnedSolve,
        ) -> Result<()> {
            if pins.len() + (l.len() - i) <= best.len() {
                return Ok(());
            }
            if i == l.len() {
                *best = pins.iter().map(|p| p.0).collect();
                return Ok(());
            }
            pins.push((l[i], color));
            if let Some(model) = solve(pins)? {
                let reach: Vec<u32> = l
                    .iter()
                    .copied()
                    .filter(|&v| model.get(v) == Some(color))
                    .collect();
                if reach.len() > best.len() {
                    *best = reach;
                }
                go(i + 1, l, color, pins, best, solve)?;
            }
            pins.pop();
            go(i + 1, l, color, pins, best, solve)
        }
        go(0, &l, color, &mut pins, &mut best_c, &mut solve)?;
        if best.as_ref().is_none_or(|b| best_c.len() > b.0.len()) {
            best = Some((best_c, color));
        }
    }
    let (set, color) = best.expect("two colors tried");
    let verified = verify_homogeneous(&inst, &set, color)?;
    Ok(HomogeneityCertificate {
        set,
        color,
        prefix: instance.constraints().len(),
        verified,
    })
}
