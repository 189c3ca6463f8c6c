//! Brute-force reference implementations and seeded instance generators.
//!
//! Everything here trades speed for directness: orderings are enumerated in
//! full, subsets are scanned one by one and closures are found by checking
//! every candidate family. Size caps keep the enumerations finite.

mod brute;
mod definitional;
mod generate;
mod shapes;

pub use brute::{
    all_rings, brute_maximally_linked, is_kalmanson_brute, kalmanson_rings, minimal_rooted_closure_bruteforce,
    minimal_split_closure_bruteforce, path_sum_metric,
};
pub use definitional::{con_pc, con_pq, definitional_alpha, definitional_beta};
pub use generate::{gen_kalmanson, gen_pq_tree, gen_robinsonian, gen_tree_metric, gen_wcss, rng, TreeMetric};
pub use shapes::{all_pc_shapes, all_pq_shapes};

/// Maximum taxa for subset scans.
pub const MAX_SUBSET_TAXA: usize = 16;
/// Maximum taxa for ring enumeration.
pub const MAX_RING_TAXA: usize = 8;
/// Maximum taxa for split-closure brute force.
pub const MAX_SPLIT_CLOSURE_TAXA: usize = 5;
/// Maximum taxa for rooted-closure brute force.
pub const MAX_ROOTED_CLOSURE_TAXA: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("{what} refuses {n} taxa (at most {max})")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error(transparent)]
    Core(#[from] kalmanson::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;

fn refuse(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(OracleError::TooLarge { what, n, max })
    } else {
        Ok(())
    }
}
