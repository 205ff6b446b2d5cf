use std::collections::BTreeMap;

use crate::clone::UnitGadget;
use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::lab::tree::{bits_to_string, BinaryTree};
use crate::relation::known;

/// Instance whose models steer a walk through a tree, with one variable
/// `x_σ` per member `σ` shorter than the target depth.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub instance: Instance,
    /// `σ ↦ x_σ`.
    pub vars: BTreeMap<Vec<bool>, u32>,
    /// Strings pinned by a gadget, with the direction forced.
    pub pins: Vec<(Vec<bool>, bool)>,
    depth: usize,
    tree: BinaryTree,
}

impl GadgetInstance {
    /// Follows `σ_{s+1} = σ_s ⌢ ν(x_{σ_s})` from the empty string.
    pub fn extract(&self, nu: &Assignment) -> Result<Vec<bool>> {
        let mut sigma = Vec::with_capacity(self.depth);
        while sigma.len() < self.depth {
            let &x = self.vars.get(&sigma).ok_or_else(|| {
                Error::Encoding(format!(
                    "walk left the tree at `{}`",
                    bits_to_string(&sigma)
                ))
            })?;
            sigma.push(nu.get(x).ok_or(Error::PartialAssignment(x))?);
        }
        if !self.tree.contains(&sigma) {
            return Err(Error::Encoding(format!(
                "walk ended outside the tree at `{}`",
                bits_to_string(&sigma)
            )));
        }
        Ok(sigma)
    }
}

/// Applies `g` with its pinned coordinate on `x` and fresh variables for the
/// side coordinates. A side constant the relation does not force by itself
/// is enforced with a unit constraint.
fn apply_gadget(inst: &mut Instance, g: &UnitGadget, x: u32) -> Result<()> {
    let mut vars = vec![0u32; g.relation.arity()];
    vars[g.pinned] = x;
    let mut units = Vec::new();
    for &(j, c) in &g.sides {
        let y = inst.fresh_var();
        vars[j] = y;
        let forced = g.relation.tuples().all(|t| (t >> j & 1 == 1) == c);
        if !forced {
            units.push((y, c));
        }
    }
    inst.constrain(&g.relation, &vars)?;
    for (y, c) in units {
        let unit = if c {
            known::unit_pos()
        } else {
            known::unit_neg()
        };
        inst.constrain(&unit, &[y])?;
    }
    Ok(())
}

/// Stagewise construction: at stage `s = 1 ..= depth`, every `σ` of length
/// `< s` with survivors of length `s` above exactly one child gets pinned
/// toward that child, `pos` forcing `x_σ = 1` and `neg` forcing `x_σ = 0`.
/// Each `σ` is pinned at most once. Pins are emitted in `(length, string)`
/// order of `σ`.
pub fn tree_to_gadget_instance(
    tree: &BinaryTree,
    pos: &UnitGadget,
    neg: &UnitGadget,
    depth: usize,
) -> Result<GadgetInstance> {
    if !pos.value || neg.value {
        return Err(Error::NoGadget(
            "gadgets must force 1 and 0 respectively".into(),
        ));
    }
    let mut inst = Instance::new(0);
    let mut vars = BTreeMap::new();
    let mut order: Vec<&[bool]> = tree.iter().filter(|s| s.len() < depth).collect();
    order.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in &order {
        vars.insert(s.to_vec(), inst.fresh_var());
    }
    // σ is pinned at the first stage where exactly one child still has
    // survivors; with m_b the longest extension through child b (capped at
    // depth), that happens iff m_0 != m_1, at stage min(m_0, m_1) + 1
    let ext = tree.extension_lengths();
    let mut pins = Vec::new();
    for s in &order {
        let reach = |b: bool| {
            let mut c = s.to_vec();
            c.push(b);
            ext.get(&c).map_or(s.len(), |&m| m.min(depth))
        };
        let (left, right) = (reach(false), reach(true));
        if left != right {
            pins.push((s.to_vec(), right > left));
        }
    }
    for (s, dir) in &pins {
        let g = if *dir { pos } else { neg };
        apply_gadget(&mut inst, g, vars[s])?;
    }
    Ok(GadgetInstance {
        instance: inst,
        vars,
        pins,
        depth,
        tree: tree.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clone::{find_unit_gadget, GadgetTarget};
    use crate::solve::solve_dispatch;

    fn gadgets() -> (UnitGadget, UnitGadget) {
        let s = [known::and_not()];
        (
            find_unit_gadget(&s, GadgetTarget::Pos).unwrap(),
            find_unit_gadget(&s, GadgetTarget::Neg).unwrap(),
        )
    }

    fn run(tree: &BinaryTree, depth: usize) -> Vec<bool> {
        let (pos, neg) = gadgets();
        let g = tree_to_gadget_instance(tree, &pos, &neg, depth).unwrap();
        let nu = solve_dispatch(&g.instance).unwrap().0.into_model().unwrap();
        g.extract(&nu).unwrap()
    }

    #[test]
    fn right_branching_path() {
        let t = BinaryTree::from_predicate(4, |s| s.iter().all(|&b| b));
        assert_eq!(run(&t, 4), vec![true; 4]);
    }

    #[test]
    fn full_tree_goes_left() {
        let t = BinaryTree::full(4);
        let (pos, neg) = gadgets();
        let g = tree_to_gadget_instance(&t, &pos, &neg, 4).unwrap();
        assert!(g.pins.is_empty());
        assert_eq!(run(&t, 4), vec![false; 4]);
    }

    #[test]
    fn avoiding_11() {
        let t = BinaryTree::from_predicate(6, |s| !s.windows(2).any(|w| w[0] && w[1]));
        let p = run(&t, 6);
        assert!(t.contains(&p));
    }

    #[test]
    fn dead_left_subtree() {
        // "0" exists but stops at depth 2; the walk must turn right
        let t = BinaryTree::from_predicate(5, |s| s.len() <= 2 || s[0]);
        let p = run(&t, 5);
        assert!(p[0] && t.contains(&p));
    }

    #[test]
    fn gadget_polarity_checked() {
        let (pos, neg) = gadgets();
        assert!(tree_to_gadget_instance(&BinaryTree::full(1), &neg, &pos, 1).is_err());
    }
}
