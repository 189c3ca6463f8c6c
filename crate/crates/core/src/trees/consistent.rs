//! Frontiers and the orderings consistent with a tree.

use std::collections::BTreeSet;

use super::{PcTree, PqKind, PqNode, PqTree};
use crate::error::{Error, Result};
use crate::taxa::{CircularOrdering, LinearOrdering, Rooting};

/// Default cap on the number of orderings an enumeration may produce.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;

fn factorial(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

impl PqTree {
    /// Leaves read from left to right.
    pub fn frontier(&self) -> LinearOrdering {
        let mut out = Vec::with_capacity(self.taxa.len());
        self.root.push_frontier(&mut out);
        LinearOrdering::new(out).expect("leaves are a permutation")
    }

    /// Product of `k!` over P-vertices with `k` children and `2` over
    /// Q-vertices, saturating.
    pub fn consistent_count(&self) -> u128 {
        self.internal_vertices()
            .iter()
            .map(|v| match v {
                PqNode::Internal(PqKind::P, c) => factorial(c.len()),
                _ => 2,
            })
            .fold(1u128, |acc, x| acc.saturating_mul(x))
    }

    /// Every frontier of a tree equivalent to this one, sorted.
    pub fn enumerate_consistent(&self, limit: u128) -> Result<Vec<LinearOrdering>> {
        let count = self.consistent_count();
        if count > limit {
            return Err(Error::LimitExceeded { count, limit });
        }
        let orders: BTreeSet<Vec<usize>> = node_orders(&self.root).into_iter().collect();
        Ok(orders
            .into_iter()
            .map(|o| LinearOrdering::new(o).expect("frontiers are permutations"))
            .collect())
    }
}

fn node_orders(v: &PqNode) -> Vec<Vec<usize>> {
    match v {
        PqNode::Leaf(i) => vec![vec![*i]],
        PqNode::Internal(kind, children) => {
            let per_child: Vec<Vec<Vec<usize>>> = children.iter().map(node_orders).collect();
            let arrangements: Vec<Vec<usize>> = match kind {
                PqKind::P => permutations(children.len()),
                PqKind::Q => {
                    let forward: Vec<usize> = (0..children.len()).collect();
                    let backward = forward.iter().rev().copied().collect();
                    vec![forward, backward]
                }
            };
            let mut out = Vec::new();
            for arrangement in arrangements {
                let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
                for &c in &arrangement {
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            per_child[c].iter().map(move |tail| {
                                let mut p = prefix.clone();
                                p.extend_from_slice(tail);
                                p
                            })
                        })
                        .collect();
                }
                out.extend(partial);
            }
            out
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

impl PcTree {
    /// Leaves in the order met when walking around the tree from taxon 0.
    pub fn frontier(&self) -> CircularOrdering {
        let n = self.taxa.len();
        if n <= 2 {
            return CircularOrdering::identity(n);
        }
        let mut out = vec![0];
        let mut stack = vec![(self.adj[0][0], 0)];
        while let Some((v, parent)) = stack.pop() {
            if v < n {
                out.push(v);
                continue;
            }
            for w in self.rotation_after(v, parent).into_iter().rev() {
                stack.push((w, v));
            }
        }
        CircularOrdering::new(out).expect("leaves are a permutation")
    }

    /// Number of distinct circular orderings from equivalent trees:
    /// `(d−1)!` per P-vertex of degree `d` and `2` per C-vertex, halved for
    /// the reflection of the whole tree.
    pub fn consistent_count(&self) -> u128 {
        if self.taxa.len() <= 3 {
            return 1;
        }
        let product = self
            .internal_vertices()
            .map(|v| match self.kinds[v] {
                Some(super::PcKind::P) => factorial(self.adj[v].len() - 1),
                _ => 2,
            })
            .fold(1u128, |acc, x| acc.saturating_mul(x));
        product / 2
    }

    /// Every circular frontier of a tree equivalent to this one, in
    /// canonical form and sorted.
    pub fn enumerate_consistent(&self, limit: u128) -> Result<Vec<CircularOrdering>> {
        let count = self.consistent_count();
        if count > limit {
            return Err(Error::LimitExceeded { count, limit });
        }
        let n = self.taxa.len();
        if n <= 2 {
            return Ok(vec![CircularOrdering::identity(n)]);
        }
        let rooting = Rooting::new(&self.taxa, 0)?;
        let rooted = self.root_at(0)?;
        let rings: BTreeSet<Vec<usize>> = node_orders(rooted.root())
            .into_iter()
            .map(|o| {
                let order = LinearOrdering::new(o).expect("frontier");
                rooting.close(&order).canonical()
            })
            .collect();
        Ok(rings
            .into_iter()
            .map(|r| CircularOrdering::new(r).expect("canonical rings are permutations"))
            .collect())
    }
}
