//! Exhaustive tree shapes: every plane PQ-tree with leaves `0..n` in
//! left-to-right order and every assignment of kinds, and the PC-trees
//! obtained from them by attaching one more leaf at the root.

use kalmanson::{PcTree, PqNode, PqTree, Rooting, TaxonSet};

use crate::Result;

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 1..=n - (parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn nodes(start: usize, len: usize) -> Vec<PqNode> {
    if len == 1 {
        return vec![PqNode::Leaf(start)];
    }
    let mut out = Vec::new();
    for k in 2..=len {
        for sizes in compositions(len, k) {
            let mut partial: Vec<Vec<PqNode>> = vec![Vec::new()];
            let mut at = start;
            for &s in &sizes {
                let options = nodes(at, s);
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut p = prefix.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
                at += s;
            }
            for children in partial {
                if k >= 3 {
                    out.push(PqNode::q(children.clone()));
                }
                out.push(PqNode::p(children));
            }
        }
    }
    out
}

/// Every PQ-tree on `n` leaves whose frontier is `0..n`.
pub fn all_pq_shapes(n: usize) -> Result<Vec<PqTree>> {
    let taxa = TaxonSet::numbered(n);
    nodes(0, n)
        .into_iter()
        .map(|root| Ok(PqTree::new(taxa.clone(), root)?))
        .collect()
}

/// Every PC-tree on `n ≥ 2` leaves, as the unrooting of each shape in
/// [`all_pq_shapes`]`(n − 1)` at a new last taxon.
pub fn all_pc_shapes(n: usize) -> Result<Vec<PcTree>> {
    let reduced = TaxonSet::numbered(n - 1);
    let rooting = Rooting::append(&reduced, &n.to_string())?;
    all_pq_shapes(n - 1)?
        .iter()
        .map(|t| Ok(t.unroot(&rooting)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        // plane trees with no unary vertices, weighted by the Q option
        assert_eq!(all_pq_shapes(1).unwrap().len(), 1);
        assert_eq!(all_pq_shapes(2).unwrap().len(), 1);
        assert_eq!(all_pq_shapes(3).unwrap().len(), 4);
        assert_eq!(all_pc_shapes(4).unwrap().len(), 4);
    }
}
