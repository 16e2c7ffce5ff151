//! Canonical 2-sum decomposition trees and the bicircularity decision built
//! on them.

mod canonical;
mod decide;
mod rooted;
mod separation;
mod tree;

pub use canonical::{canonical_tree, canonical_tree_with};
pub use decide::{is_bicircular, ComponentWitness, Decision, Witness};
pub use rooted::{graph_of_family, rooted_bicircular_3conn, rooted_representation, RootedCase};
pub use separation::{
    good_separation, has_degree3_circuit_node, has_degree3_circuit_node_by_wedges, transduce, TransducedMatroid,
};
pub use tree::{DecompositionTree, NodeKind, TreeEdge, TreeNode};
