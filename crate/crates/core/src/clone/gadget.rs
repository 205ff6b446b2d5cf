use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clone::galois::check_set;
use crate::error::{Error, Result};
use crate::relation::BoolRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetTarget {
    /// Force the pinned variable to 1.
    Pos,
    /// Force the pinned variable to 0.
    Neg,
}

impl GadgetTarget {
    pub fn value(self) -> bool {
        self == GadgetTarget::Pos
    }
}

impl FromStr for GadgetTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" => Ok(GadgetTarget::Pos),
            "neg" => Ok(GadgetTarget::Neg),
            other => Err(Error::Invalid(format!("gadget target `{other}`"))),
        }
    }
}

/// A relation from `S` with every coordinate but one fixed to a constant, so
/// that the remaining coordinate is forced to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGadget {
    /// Position of the relation inside the input set.
    pub relation_index: usize,
    pub relation: BoolRelation,
    pub pinned: usize,
    pub value: bool,
    /// `(coordinate, constant)` for every other coordinate, ascending.
    pub sides: Vec<(usize, bool)>,
}

impl UnitGadget {
    /// Values of the pinned coordinate compatible with the side constants.
    pub fn pinned_values(&self) -> Vec<bool> {
        [false, true]
            .into_iter()
            .filter(|&b| {
                let mut t = (b as u32) << self.pinned;
                for &(j, c) in &self.sides {
                    t |= (c as u32) << j;
                }
                self.relation.contains(t)
            })
            .collect()
    }

    /// Whether the side constants leave exactly the pinned value.
    pub fn is_sound(&self) -> bool {
        self.sides.len() + 1 == self.relation.arity()
            && self.sides.iter().all(|&(j, _)| j != self.pinned)
            && self.pinned_values() == [self.value]
    }

    fn flipped(mut self) -> Self {
        self.value = !self.value;
        for s in &mut self.sides {
            s.1 = !s.1;
        }
        self
    }
}

impl fmt::Display for UnitGadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: x{} = {}",
            self.relation.label(),
            self.pinned + 1,
            self.value as u8
        )?;
        for &(j, c) in &self.sides {
            write!(f, ", x{} = {}", j + 1, c as u8)?;
        }
        Ok(())
    }
}

fn gadget(index: usize, r: &BoolRelation, tuple: u32, pinned: usize) -> UnitGadget {
    UnitGadget {
        relation_index: index,
        relation: r.clone(),
        pinned,
        value: true,
        sides: (0..r.arity())
            .filter(|&j| j != pinned)
            .map(|j| (j, tuple >> j & 1 == 1))
            .collect(),
    }
}

fn is_pos_unit(r: &BoolRelation) -> bool {
    r.arity() == 1 && r.len() == 1 && r.contains(1)
}

/// Positive gadget search on an already complemented set, if needed.
fn find_pos(s: &[BoolRelation], originals: &[BoolRelation]) -> Option<UnitGadget> {
    // a relation that is not 0-valid and not [x]: pin a one-coordinate of a
    // minimal member
    for (i, r) in s.iter().enumerate() {
        if r.is_valid_for(false) || is_pos_unit(r) {
            continue;
        }
        let members: Vec<u32> = r.tuples().collect();
        let minimal = members
            .iter()
            .copied()
            .find(|&t| !members.iter().any(|&m| m != t && m & !t == 0))
            .expect("finite nonempty relation has a minimal member");
        let j = minimal.trailing_zeros() as usize;
        return Some(gadget(i, &originals[i], minimal, j));
    }
    // a 0-valid relation that is not 0-default: a non-member u with member
    // supersets, and a minimal such superset
    for (i, r) in s.iter().enumerate() {
        if !r.is_valid_for(false) || r.is_default_for(false) {
            continue;
        }
        let members: Vec<u32> = r.tuples().collect();
        for u in r.non_tuples() {
            let above: Vec<u32> = members.iter().copied().filter(|&m| m & u == u).collect();
            let Some(min) = above
                .iter()
                .copied()
                .find(|&t| !above.iter().any(|&m| m != t && m & !t == 0))
            else {
                continue;
            };
            let j = (min & !u).trailing_zeros() as usize;
            return Some(gadget(i, &originals[i], min, j));
        }
    }
    None
}

/// Finds a relation of `s` and constants for all but one coordinate that
/// force the last coordinate to 1 (`Pos`) or 0 (`Neg`).
///
/// Relations are scanned in order; within a relation, members are taken
/// lowest index first and the pinned coordinate is the lowest admissible one.
/// The negative case runs the positive search on complemented relations.
pub fn find_unit_gadget(s: &[BoolRelation], target: GadgetTarget) -> Result<UnitGadget> {
    check_set(s)?;
    let found = match target {
        GadgetTarget::Pos => find_pos(s, s),
        GadgetTarget::Neg => {
            let dual: Vec<BoolRelation> = s.iter().map(BoolRelation::complement_image).collect();
            find_pos(&dual, s).map(UnitGadget::flipped)
        }
    };
    let g = found.ok_or_else(|| {
        Error::NoGadget(match target {
            GadgetTarget::Pos => "every relation is 0-valid and 0-default, or [x]".into(),
            GadgetTarget::Neg => "every relation is 1-valid and 1-default, or [!x]".into(),
        })
    })?;
    if !g.is_sound() {
        return Err(Error::Internal(format!("unsound gadget {g}")));
    }
    Ok(g)
}
