//! Kalmanson dissimilarities, circular split systems, pyramids, and PQ-/PC-trees.

pub mod error;
pub mod families;
pub mod matrices;
pub mod pipeline;
pub mod rational;
pub mod splits;
pub mod taxa;
pub mod trees;
mod textio;

pub use error::{Error, Result};
pub use families::{FamilyWitness, IndexedFamily, PredecessorReport, SetFamily};
pub use matrices::{DissimilarityMap, QuartetWitness, StrongWitness, SymmetricMatrix};
pub use pipeline::{best_fit_pc_tree, verify_diagram, AnalysisReport, DiagramCheck, RING_SEARCH_LIMIT};
pub use rational::Rational;
pub use splits::{Split, SplitSystem, WeightedSplitSystem};
pub use taxa::{CircularOrdering, LinearOrdering, Rooting, Subset, TaxonSet};
pub use trees::{
    parse_newick, trees_equivalent, PcKind, PcTree, PqKind, PqNode, PqTree, Tree,
    DEFAULT_ENUMERATION_LIMIT,
};
