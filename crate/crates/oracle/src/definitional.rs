//! α and β read straight off their definitions: the sets that are intervals
//! (arcs) of every ordering consistent with the tree.

use std::collections::BTreeSet;

use itertools::Itertools;
use kalmanson::{PcKind, PcTree, PqKind, PqNode, PqTree, SetFamily, Split, SplitSystem, Subset};

use crate::{refuse, Result, MAX_SUBSET_TAXA};

/// Every linear order obtainable by permuting P-children and reversing
/// Q-children, without deduplication beyond the final set.
pub fn con_pq(tree: &PqTree) -> BTreeSet<Vec<usize>> {
    fn orders(v: &PqNode) -> Vec<Vec<usize>> {
        match v {
            PqNode::Leaf(i) => vec![vec![*i]],
            PqNode::Internal(kind, children) => {
                let sub: Vec<Vec<Vec<usize>>> = children.iter().map(orders).collect();
                let k = children.len();
                let arrangements: Vec<Vec<usize>> = match kind {
                    PqKind::P => (0..k).permutations(k).collect(),
                    PqKind::Q => vec![(0..k).collect(), (0..k).rev().collect()],
                };
                let mut out = Vec::new();
                for arr in arrangements {
                    for pick in arr.iter().map(|&c| sub[c].iter()).multi_cartesian_product() {
                        out.push(pick.into_iter().flatten().copied().collect());
                    }
                }
                out
            }
        }
    }
    orders(tree.root()).into_iter().collect()
}

/// Every circular order read from a tree whose rotations are any
/// permutation at P-vertices and either direction at C-vertices. Rings are
/// normalised to start at taxon 0 with the smaller neighbour second.
pub fn con_pc(tree: &PcTree) -> BTreeSet<Vec<usize>> {
    let n = tree.taxa().len();
    if n <= 3 {
        return [normalise((0..n).collect())].into_iter().collect();
    }
    let internal: Vec<usize> = (n..tree.vertex_count()).collect();
    let choices: Vec<Vec<Vec<usize>>> = internal
        .iter()
        .map(|&v| {
            let rot = tree.neighbors(v).to_vec();
            match tree.kind(v) {
                Some(PcKind::C) => vec![rot.clone(), rot.into_iter().rev().collect()],
                _ => {
                    let d = rot.len();
                    rot.into_iter().permutations(d).collect()
                }
            }
        })
        .collect();
    let mut out = BTreeSet::new();
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let mut rotation: Vec<Vec<usize>> = (0..tree.vertex_count()).map(|v| tree.neighbors(v).to_vec()).collect();
        for (k, &v) in internal.iter().enumerate() {
            rotation[v] = pick[k].clone();
        }
        let mut ring = vec![0];
        walk(&rotation, n, rotation[0][0], 0, &mut ring);
        out.insert(normalise(ring));
    }
    out
}

fn walk(rotation: &[Vec<usize>], n: usize, v: usize, parent: usize, out: &mut Vec<usize>) {
    if v < n {
        out.push(v);
        return;
    }
    let rot = &rotation[v];
    let at = rot.iter().position(|&w| w == parent).expect("parent adjacent");
    for k in 1..rot.len() {
        walk(rotation, n, rot[(at + k) % rot.len()], v, out);
    }
}

fn normalise(ring: Vec<usize>) -> Vec<usize> {
    let n = ring.len();
    let at = ring.iter().position(|&x| x == 0).expect("ring contains 0");
    let rotated: Vec<usize> = (0..n).map(|k| ring[(at + k) % n]).collect();
    if n >= 3 && rotated[1] > rotated[n - 1] {
        std::iter::once(0).chain(rotated[1..].iter().rev().copied()).collect()
    } else {
        rotated
    }
}

fn is_interval(order: &[usize], s: Subset) -> bool {
    let pos: Vec<usize> = order.iter().enumerate().filter(|(_, x)| s.contains(**x)).map(|(p, _)| p).collect();
    pos.last().is_none_or(|last| last - pos[0] + 1 == pos.len())
}

fn is_arc(ring: &[usize], s: Subset) -> bool {
    let n = ring.len();
    let inside = |k: usize| s.contains(ring[k % n]);
    // an arc has at most one position where membership switches on
    (0..n).filter(|&k| !inside(k) && inside(k + 1)).count() <= 1
}

/// Subsets that are intervals of every order in `con_pq(tree)`.
pub fn definitional_alpha(tree: &PqTree) -> Result<SetFamily> {
    let n = tree.taxa().len();
    refuse("definitional alpha", n, MAX_SUBSET_TAXA)?;
    let orders = con_pq(tree);
    let members = (1..1u128 << n)
        .map(Subset::from_bits)
        .filter(|s| orders.iter().all(|o| is_interval(o, *s)));
    Ok(SetFamily::new(tree.taxa().clone(), members)?)
}

/// Splits that are arcs of every ring in `con_pc(tree)`.
pub fn definitional_beta(tree: &PcTree) -> Result<SplitSystem> {
    let n = tree.taxa().len();
    refuse("definitional beta", n, MAX_SUBSET_TAXA)?;
    let rings = con_pc(tree);
    let mut splits = Vec::new();
    if n >= 2 {
        // blocks containing taxon 0, excluding the full set
        for bits in 0..(1u128 << (n - 1)) - 1 {
            let block = Subset::from_bits((bits << 1) | 1);
            if rings.iter().all(|r| is_arc(r, block)) {
                splits.push(Split::new(block, n)?);
            }
        }
    }
    Ok(SplitSystem::new(tree.taxa().clone(), splits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kalmanson::{LinearOrdering, TaxonSet};

    #[test]
    fn q_root_alpha_is_all_intervals() {
        let t = PqTree::new(
            TaxonSet::numbered(4),
            PqNode::q((0..4).map(PqNode::Leaf).collect()),
        )
        .unwrap();
        let a = definitional_alpha(&t).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a, SetFamily::intervals(TaxonSet::numbered(4), &LinearOrdering::identity(4)).unwrap());
        assert_eq!(con_pq(&t).len(), 2);
    }

    #[test]
    fn star_rings() {
        let t = PcTree::new(TaxonSet::numbered(5), vec![(PcKind::P, vec![0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(con_pc(&t).len(), 12);
        assert_eq!(definitional_beta(&t).unwrap(), SplitSystem::trivial(TaxonSet::numbered(5)));
        let ring = PcTree::new(TaxonSet::numbered(5), vec![(PcKind::C, vec![0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(con_pc(&ring).len(), 1);
        assert_eq!(definitional_beta(&ring).unwrap().len(), 10);
    }

    #[test]
    fn arcs_and_intervals() {
        assert!(is_arc(&[0, 1, 2, 3], Subset::from_iter([3, 0])));
        assert!(!is_arc(&[0, 1, 2, 3], Subset::from_iter([0, 2])));
        assert!(is_interval(&[2, 0, 1], Subset::from_iter([0, 2])));
        assert!(!is_interval(&[0, 1, 2], Subset::from_iter([0, 2])));
    }
}
