//! Rooted PQ-trees and unrooted PC-trees over a taxon set.

mod consistent;
mod convert;
mod newick;

use crate::error::{Error, Result};
use crate::taxa::{Subset, TaxonSet};

pub use consistent::DEFAULT_ENUMERATION_LIMIT;
pub use newick::{parse_newick, trees_equivalent, Tree};

/// Kind of an internal PQ-tree vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PqKind {
    /// Children may be permuted freely.
    P,
    /// Children may only be reversed.
    Q,
}

/// A vertex of a PQ-tree; leaves carry taxon indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PqNode {
    Leaf(usize),
    Internal(PqKind, Vec<PqNode>),
}

impl PqNode {
    pub fn p(children: Vec<PqNode>) -> Self {
        Self::Internal(PqKind::P, children)
    }

    pub fn q(children: Vec<PqNode>) -> Self {
        Self::Internal(PqKind::Q, children)
    }

    /// Leaves below this vertex.
    pub fn leaves(&self) -> Subset {
        match self {
            Self::Leaf(i) => Subset::singleton(*i),
            Self::Internal(_, children) => children.iter().fold(Subset::EMPTY, |acc, c| acc | c.leaves()),
        }
    }

    pub fn children(&self) -> &[PqNode] {
        match self {
            Self::Leaf(_) => &[],
            Self::Internal(_, children) => children,
        }
    }

    fn push_frontier(&self, out: &mut Vec<usize>) {
        match self {
            Self::Leaf(i) => out.push(*i),
            Self::Internal(_, children) => children.iter().for_each(|c| c.push_frontier(out)),
        }
    }

    fn validate(&self, n: usize, seen: &mut Vec<bool>) -> Result<()> {
        match self {
            Self::Leaf(i) => {
                if *i >= n || seen[*i] {
                    return Err(Error::InvalidTree(format!("leaf {i} repeated or out of range")));
                }
                seen[*i] = true;
            }
            Self::Internal(kind, children) => {
                let needed = if *kind == PqKind::Q { 3 } else { 2 };
                if children.len() < needed {
                    return Err(Error::InvalidTree(format!(
                        "{kind:?}-vertex with {} children",
                        children.len()
                    )));
                }
                for c in children {
                    c.validate(n, seen)?;
                }
            }
        }
        Ok(())
    }
}

/// A rooted tree whose leaves are the taxa and whose internal vertices are
/// P- or Q-vertices with ordered children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqTree {
    taxa: TaxonSet,
    root: PqNode,
}

impl PqTree {
    /// Checks that leaves match the taxa bijectively, every internal vertex
    /// has at least two children and every Q-vertex at least three.
    pub fn new(taxa: TaxonSet, root: PqNode) -> Result<Self> {
        let n = taxa.len();
        if n == 0 {
            return Err(Error::TooFewTaxa { needed: 1, found: 0 });
        }
        let mut seen = vec![false; n];
        root.validate(n, &mut seen)?;
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidTree(format!("taxon {} has no leaf", taxa.label(i))));
        }
        Ok(Self { taxa, root })
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn root(&self) -> &PqNode {
        &self.root
    }

    /// Internal vertices in preorder.
    pub fn internal_vertices(&self) -> Vec<&PqNode> {
        fn walk<'a>(v: &'a PqNode, out: &mut Vec<&'a PqNode>) {
            if let PqNode::Internal(_, children) = v {
                out.push(v);
                children.iter().for_each(|c| walk(c, out));
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn count_kind(&self, kind: PqKind) -> usize {
        self.internal_vertices()
            .iter()
            .filter(|v| matches!(v, PqNode::Internal(k, _) if *k == kind))
            .count()
    }
}

/// Kind of an internal PC-tree vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PcKind {
    /// The rotation may be permuted freely.
    P,
    /// The rotation may only be reversed.
    C,
}

/// An unrooted tree with a rotation at every vertex. Vertices `0..n` are
/// the leaves, vertex `i` carrying taxon `i`; internal vertices follow.
#[derive(Clone, Debug)]
pub struct PcTree {
    taxa: TaxonSet,
    kinds: Vec<Option<PcKind>>,
    adj: Vec<Vec<usize>>,
}

impl PcTree {
    /// Builds a tree from the rotations of its internal vertices, given as
    /// `(kind, neighbours in cyclic order)` and numbered from `n` upwards.
    /// Leaf adjacency is inferred. With two taxa and no internal vertices the
    /// two leaves are joined directly.
    pub fn new(taxa: TaxonSet, internal: Vec<(PcKind, Vec<usize>)>) -> Result<Self> {
        let n = taxa.len();
        let total = n + internal.len();
        let mut kinds: Vec<Option<PcKind>> = vec![None; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        if n == 2 && internal.is_empty() {
            adj = vec![vec![1], vec![0]];
            return Self::checked(taxa, kinds, adj);
        }
        for (k, (kind, rotation)) in internal.into_iter().enumerate() {
            for &w in &rotation {
                if w >= total || w == n + k {
                    return Err(Error::InvalidTree(format!("vertex {} has bad neighbour {w}", n + k)));
                }
                if w < n {
                    adj[w].push(n + k);
                }
            }
            kinds.push(Some(kind));
            adj.push(rotation);
        }
        Self::checked(taxa, kinds, adj)
    }

    pub(crate) fn checked(taxa: TaxonSet, kinds: Vec<Option<PcKind>>, adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = taxa.len();
        let total = adj.len();
        let bad = |m: String| Err(Error::InvalidTree(m));
        if n == 0 {
            return Err(Error::TooFewTaxa { needed: 1, found: 0 });
        }
        let edges: usize = adj.iter().map(Vec::len).sum();
        if edges != 2 * (total - 1) {
            return bad(format!("{} vertices but {} edge ends", total, edges));
        }
        for v in 0..total {
            for &w in &adj[v] {
                if !adj[w].contains(&v) {
                    return bad(format!("edge {v}-{w} is not symmetric"));
                }
            }
            let mut sorted = adj[v].clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != adj[v].len() {
                return bad(format!("vertex {v} lists a neighbour twice"));
            }
            let d = adj[v].len();
            match kinds[v] {
                None if n >= 2 && d != 1 => return bad(format!("leaf {} has degree {d}", taxa.label(v))),
                Some(_) if d < 3 => return bad(format!("internal vertex of degree {d}")),
                Some(PcKind::C) if d < 4 => return bad("C-vertex of degree 3".into()),
                _ => {}
            }
        }
        // connected with total − 1 edges, hence a tree
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("graph is disconnected".into());
        }
        Ok(Self { taxa, kinds, adj })
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// `None` for leaves.
    pub fn kind(&self, v: usize) -> Option<PcKind> {
        self.kinds[v]
    }

    /// Neighbours of `v` in rotation order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (self.taxa.len()..self.adj.len()).filter(|&v| self.kinds[v].is_some())
    }

    pub fn count_kind(&self, kind: PcKind) -> usize {
        self.internal_vertices().filter(|&v| self.kinds[v] == Some(kind)).count()
    }

    /// Leaves reached from `to` without passing through `from`.
    pub fn side(&self, from: usize, to: usize) -> Subset {
        let n = self.taxa.len();
        let mut out = Subset::EMPTY;
        let mut stack = vec![(to, from)];
        while let Some((v, parent)) = stack.pop() {
            if v < n {
                out.insert(v);
            }
            for &w in &self.adj[v] {
                if w != parent {
                    stack.push((w, v));
                }
            }
        }
        out
    }

    /// Neighbours of `v` in rotation order, starting just after `parent`.
    pub fn rotation_after(&self, v: usize, parent: usize) -> Vec<usize> {
        let rot = &self.adj[v];
        let k = rot.iter().position(|&w| w == parent).expect("parent is a neighbour");
        rot[k + 1..].iter().chain(&rot[..k]).copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.adj.len() {
            for &w in &self.adj[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }
}
