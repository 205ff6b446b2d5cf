//! Post's lattice of clones, Galois tests and the classification procedures.

mod atlas;
mod classify;
mod gadget;
mod galois;

pub use atlas::{
    atlas, atlas_table, clone_by_name, clone_contains, generate_clone_functions, CloneDescriptor,
    MAX_THRESHOLD_N,
};
pub use classify::{
    classify_complexity, classify_ramsey, classify_sat, ComplexityClass, RamseyCondition,
    RamseyStrength, SatCondition, SatStrength, SchaeferCondition, StrengthClass,
};
pub use gadget::{find_unit_gadget, GadgetTarget, UnitGadget};
pub use galois::{
    in_coclone, lemma43_case, pol_profile, Lemma43Case, PolProfile, COCLONE_BUDGET,
    COCLONE_MAX_TUPLES,
};
