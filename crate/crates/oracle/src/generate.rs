//! Seeded instance generators. Each draws from a ChaCha8 stream seeded with
//! `seed` through `SeedableRng::seed_from_u64`, so a seed and size always
//! reproduce the same instance.

use std::collections::BTreeSet;

use kalmanson::{
    CircularOrdering, DissimilarityMap, IndexedFamily, LinearOrdering, PcKind, PcTree, PqNode, PqTree, Rational,
    Subset, SymmetricMatrix, TaxonSet, WeightedSplitSystem, SplitSystem,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brute::path_sum_metric;
use crate::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// A rational in `(0, 10]` with denominator at most 4.
fn weight(rng: &mut ChaCha8Rng) -> Rational {
    let d: i128 = rng.random_range(1..=4);
    Rational::new(rng.random_range(1..=10 * d), d)
}

/// A random ring and a weighted system of its splits: every split of the
/// ring is kept with probability one half and given a weight in `(0, 10]`.
/// Trivial splits left out carry weight zero.
pub fn gen_wcss(seed: u64, n: usize) -> Result<(WeightedSplitSystem, CircularOrdering)> {
    let mut rng = rng(seed);
    let taxa = TaxonSet::numbered(n);
    let ring = CircularOrdering::new(shuffled(&mut rng, n))?;
    let mut weighted = Vec::new();
    for s in SplitSystem::circular_splits_of(taxa.clone(), &ring)?.iter() {
        if rng.random_bool(0.5) {
            weighted.push((s, weight(&mut rng)));
        }
    }
    Ok((WeightedSplitSystem::new(taxa, weighted)?, ring))
}

/// `evaluate` of [`gen_wcss`]: a Kalmanson map with a certifying ring.
pub fn gen_kalmanson(seed: u64, n: usize) -> Result<(DissimilarityMap, CircularOrdering)> {
    let (w, ring) = gen_wcss(seed, n)?;
    Ok((w.evaluate(), ring))
}

/// A random binary tree with positive edge weights and its path metric.
#[derive(Clone, Debug)]
pub struct TreeMetric {
    pub map: DissimilarityMap,
    /// The generating tree with every internal vertex a P-vertex.
    pub tree: PcTree,
    /// Edges `(u, v, length)`; vertices below `n` are the leaves.
    pub edges: Vec<(usize, usize, Rational)>,
}

/// Grows a binary tree by attaching leaves to random edges, then weighs
/// every edge with a rational in `(0, 10]`. Needs at least two taxa.
pub fn gen_tree_metric(seed: u64, n: usize) -> Result<TreeMetric> {
    let mut rng = rng(seed);
    let taxa = TaxonSet::numbered(n);
    let mut topology: Vec<(usize, usize)> = Vec::new();
    let mut next = n;
    if n == 2 {
        topology.push((0, 1));
    } else if n >= 3 {
        let order = shuffled(&mut rng, n);
        let hub = next;
        next += 1;
        topology.extend(order[..3].iter().map(|&l| (l, hub)));
        for &leaf in &order[3..] {
            let k = rng.random_range(0..topology.len());
            let (u, v) = topology.swap_remove(k);
            let w = next;
            next += 1;
            topology.extend([(u, w), (w, v), (leaf, w)]);
        }
    }
    let edges: Vec<(usize, usize, Rational)> = topology.iter().map(|&(u, v)| (u, v, weight(&mut rng))).collect();
    let map = path_sum_metric(&taxa, &edges)?;
    let mut rotations = vec![Vec::new(); next.saturating_sub(n)];
    for &(u, v) in &topology {
        for (a, b) in [(u, v), (v, u)] {
            if a >= n {
                rotations[a - n].push(b);
            }
        }
    }
    let tree = PcTree::new(taxa, rotations.into_iter().map(|r| (PcKind::P, r)).collect())?;
    Ok(TreeMetric { map, tree, edges })
}

/// A Robinsonian matrix built as the matrix of a random indexed prepyramid:
/// random intervals of a random order, closed under intersection half the
/// time, with an index that strictly increases along inclusion. Returns the
/// matrix, the order and the family it came from.
pub fn gen_robinsonian(seed: u64, n: usize) -> Result<(SymmetricMatrix, LinearOrdering, IndexedFamily)> {
    let mut rng = rng(seed);
    let taxa = TaxonSet::numbered(n);
    let ord = LinearOrdering::new(shuffled(&mut rng, n))?;
    let mut members: BTreeSet<Subset> = (0..n).map(Subset::singleton).collect();
    members.insert(Subset::full(n));
    let density = rng.random_range(1..=4) as f64 / 10.0;
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                members.insert(ord.interval(i, j));
            }
        }
    }
    if rng.random_bool(0.5) {
        loop {
            let list: Vec<Subset> = members.iter().copied().collect();
            let before = members.len();
            for a in &list {
                for b in &list {
                    let c = *a & *b;
                    if !c.is_empty() {
                        members.insert(c);
                    }
                }
            }
            if members.len() == before {
                break;
            }
        }
    }
    let mut sorted: Vec<Subset> = members.into_iter().collect();
    sorted.sort_by_key(|s| s.len());
    let mut index: Vec<(Subset, Rational)> = Vec::with_capacity(sorted.len());
    for s in sorted {
        let floor = index.iter().filter(|(b, _)| b.is_subset(s)).map(|(_, f)| *f).max();
        let step = Rational::new(rng.random_range(1..=4), 2);
        let f = match floor {
            Some(f) => f + step,
            None => Rational::from_integer(rng.random_range(-20..=-10)),
        };
        index.push((s, f));
    }
    let family = IndexedFamily::new(taxa, index)?;
    Ok((family.to_matrix()?, ord, family))
}

/// A random PQ-tree: leaves shuffled, each internal vertex splitting its
/// run of leaves into two to four blocks, Q with probability one half when
/// there are at least three.
pub fn gen_pq_tree(seed: u64, n: usize) -> Result<PqTree> {
    fn build(rng: &mut ChaCha8Rng, leaves: &[usize]) -> PqNode {
        if leaves.len() == 1 {
            return PqNode::Leaf(leaves[0]);
        }
        let k = rng.random_range(2..=leaves.len().min(4));
        let mut cuts: Vec<usize> = (1..leaves.len()).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
        cuts.sort_unstable();
        let bounds: Vec<usize> = std::iter::once(0).chain(cuts).chain([leaves.len()]).collect();
        let children = bounds.windows(2).map(|w| build(rng, &leaves[w[0]..w[1]])).collect();
        if k >= 3 && rng.random_bool(0.5) {
            PqNode::q(children)
        } else {
            PqNode::p(children)
        }
    }
    let mut rng = rng(seed);
    let leaves = shuffled(&mut rng, n);
    Ok(PqTree::new(TaxonSet::numbered(n), build(&mut rng, &leaves))?)
}
