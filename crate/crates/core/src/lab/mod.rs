//! Finite-prefix versions of the infinitary constructions: trees and
//! streams, the encodings between them, homogeneous sets, instance
//! transformations and the diagonalization against a halting table.

mod dnr;
mod encode;
mod gadget_tree;
mod homog;
mod reduce;
mod stream;
mod tree;

pub use dnr::{
    colex_rank, colex_unrank, dnr_build, dnr_extract, dnr_set, dnr_t, DnrExtraction, MockOracle,
    OracleEntry, DNR_MAX_VARS,
};
pub use encode::{
    bipartition, graph_to_neq, neq_to_graph, path_from_model, tree_to_sat, Graph, TREE_MAX_DEPTH,
};
pub use gadget_tree::{tree_to_gadget_instance, GadgetInstance};
pub use homog::{
    homog_horn, homog_horn_threshold, homog_search, model_to_homogeneous, verify_homogeneous,
    HomogeneityCertificate, HOMOG_SEARCH_BUDGET,
};
pub use reduce::{
    reduce_via_representation, unlocalize, verify_back_map, Atom, Representation, Term,
    Unlocalized, REPRESENTATION_MAX_VARS, UNLOCALIZE_BUDGET,
};
pub use stream::{compactness_path, CompactnessOutcome, ConstraintStream, COMPACTNESS_MAX_DEPTH};
pub use tree::{bits_to_string, parse_bits, BinaryTree};
