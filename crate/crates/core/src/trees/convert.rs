//! Conversions between trees, set families and split systems.

use std::collections::BTreeSet;

use super::{PcKind, PcTree, PqKind, PqNode, PqTree};
use crate::error::{Error, Result};
use crate::families::SetFamily;
use crate::splits::{Split, SplitSystem};
use crate::taxa::{CircularOrdering, LinearOrdering, Rooting, Subset, TaxonSet};

/// Builds the tree of a laminar family containing the full set and all
/// singletons. Children are ordered by their first position in `ord`; a
/// vertex becomes a Q-vertex when its set is in `q_sets` and it has at
/// least three children.
fn laminar_tree(
    taxa: &TaxonSet,
    members: &[Subset],
    q_sets: &BTreeSet<Subset>,
    ord: &LinearOrdering,
) -> PqNode {
    fn build(
        set: Subset,
        members: &[Subset],
        q_sets: &BTreeSet<Subset>,
        ord: &LinearOrdering,
    ) -> PqNode {
        if set.len() == 1 {
            return PqNode::Leaf(set.min().expect("non-empty"));
        }
        let inside: Vec<Subset> = members
            .iter()
            .copied()
            .filter(|m| *m != set && m.is_subset(set))
            .collect();
        let mut children: Vec<Subset> = inside
            .iter()
            .copied()
            .filter(|m| !inside.iter().any(|o| o != m && m.is_subset(*o)))
            .collect();
        children.sort_by_key(|c| ord.span(*c).0);
        let kind = if children.len() >= 3 && q_sets.contains(&set) {
            PqKind::Q
        } else {
            PqKind::P
        };
        let nodes = children
            .into_iter()
            .map(|c| build(c, members, q_sets, ord))
            .collect();
        PqNode::Internal(kind, nodes)
    }
    build(taxa.full(), members, q_sets, ord)
}

impl PqTree {
    /// The all-P tree of a hierarchy, children ordered by smallest taxon.
    pub fn from_hierarchy(h: &SetFamily) -> Result<Self> {
        h.is_hierarchy()
            .map_err(|w| Error::NotHierarchy(w.describe(h.taxa())))?;
        let members: Vec<Subset> = h.iter().collect();
        let ord = LinearOrdering::identity(h.taxa().len());
        let root = laminar_tree(h.taxa(), &members, &BTreeSet::new(), &ord);
        PqTree::new(h.taxa().clone(), root)
    }

    /// Leaf sets of all vertices.
    pub fn to_hierarchy(&self) -> SetFamily {
        fn walk(v: &PqNode, out: &mut Vec<Subset>) -> Subset {
            let s = match v {
                PqNode::Leaf(i) => Subset::singleton(*i),
                PqNode::Internal(_, children) => {
                    children.iter().fold(Subset::EMPTY, |acc, c| acc | walk(c, out))
                }
            };
            out.push(s);
            s
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        SetFamily::new(self.taxa.clone(), out).expect("leaf sets are non-empty")
    }

    /// Sets that are intervals of every consistent ordering: every vertex's
    /// leaf set, plus unions of two or more consecutive children of each
    /// Q-vertex.
    pub fn alpha(&self) -> SetFamily {
        fn walk(v: &PqNode, out: &mut Vec<Subset>) -> Subset {
            let s = match v {
                PqNode::Leaf(i) => Subset::singleton(*i),
                PqNode::Internal(kind, children) => {
                    let sets: Vec<Subset> = children.iter().map(|c| walk(c, out)).collect();
                    if *kind == PqKind::Q {
                        for i in 0..sets.len() {
                            for j in i + 1..sets.len() {
                                out.push(sets[i..=j].iter().fold(Subset::EMPTY, |a, b| a | *b));
                            }
                        }
                    }
                    sets.iter().fold(Subset::EMPTY, |a, b| a | *b)
                }
            };
            out.push(s);
            s
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        SetFamily::new(self.taxa.clone(), out).expect("leaf sets are non-empty")
    }

    /// The PQ-tree whose interval family is `f`. Members compatible with all
    /// of `f` form the vertex sets; a vertex is a Q-vertex when its set is
    /// the union of an overlapping pair. Children follow `ord`.
    pub fn from_family(f: &SetFamily, ord: &LinearOrdering) -> Result<Self> {
        if ord.len() != f.taxa().len() {
            return Err(Error::TaxaMismatch);
        }
        f.is_prepyramid(ord)
            .map_err(|w| Error::NotPrepyramid(w.describe(f.taxa())))?;
        f.is_rooted_family()
            .map_err(|w| Error::NotRootedFamily(w.describe(f.taxa())))?;
        let core: Vec<Subset> = f.compatible_core().iter().collect();
        let all: Vec<Subset> = f.iter().collect();
        let mut q_sets = BTreeSet::new();
        for (k, a) in all.iter().enumerate() {
            for b in &all[k + 1..] {
                if !a.compatible(*b) {
                    q_sets.insert(*a | *b);
                }
            }
        }
        let tree = PqTree::new(f.taxa().clone(), laminar_tree(f.taxa(), &core, &q_sets, ord))?;
        if tree.alpha() != *f {
            return Err(Error::Internal(
                "constructed tree does not reproduce the family".into(),
            ));
        }
        Ok(tree)
    }

    /// Attaches the base leaf of `rooting` to the root. Each rotation lists
    /// the children followed by the parent; Q-vertices become C-vertices.
    pub fn unroot(&self, rooting: &Rooting) -> Result<PcTree> {
        if rooting.reduced() != &self.taxa {
            return Err(Error::TaxaMismatch);
        }
        let full = rooting.full();
        let n = full.len();
        let r = rooting.base();
        let mut kinds: Vec<Option<PcKind>> = vec![None; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        fn add(
            v: &PqNode,
            parent: usize,
            rooting: &Rooting,
            kinds: &mut Vec<Option<PcKind>>,
            adj: &mut Vec<Vec<usize>>,
        ) -> usize {
            match v {
                PqNode::Leaf(j) => {
                    let id = rooting.to_full(*j);
                    adj[id].push(parent);
                    id
                }
                PqNode::Internal(kind, children) => {
                    let id = adj.len();
                    kinds.push(Some(match kind {
                        PqKind::P => PcKind::P,
                        PqKind::Q => PcKind::C,
                    }));
                    adj.push(Vec::new());
                    let ids: Vec<usize> = children
                        .iter()
                        .map(|c| add(c, id, rooting, kinds, adj))
                        .collect();
                    adj[id] = ids;
                    adj[id].push(parent);
                    id
                }
            }
        }
        let top = add(&self.root, r, rooting, &mut kinds, &mut adj);
        adj[r].push(top);
        PcTree::checked(full.clone(), kinds, adj)
    }

    /// [`Self::unroot`] with a fresh label appended after the taxa.
    pub fn unroot_with(&self, label: &str) -> Result<PcTree> {
        self.unroot(&Rooting::append(&self.taxa, label)?)
    }
}

impl PcTree {
    /// Edge splits plus, at each C-vertex, unions of two or more consecutive
    /// neighbouring subtrees.
    pub fn beta(&self) -> SplitSystem {
        let n = self.taxa.len();
        let mut splits = Vec::new();
        for (u, v) in self.edges() {
            if let Ok(s) = Split::new(self.side(u, v), n) {
                splits.push(s);
            }
        }
        for c in self.internal_vertices() {
            if self.kinds[c] != Some(PcKind::C) {
                continue;
            }
            let rot = &self.adj[c];
            let d = rot.len();
            let sides: Vec<Subset> = rot.iter().map(|&w| self.side(c, w)).collect();
            for start in 0..d {
                for len in 2..d - 1 {
                    let arc = (0..len).fold(Subset::EMPTY, |acc, k| acc | sides[(start + k) % d]);
                    splits.push(Split::new(arc, n).expect("proper arc"));
                }
            }
        }
        SplitSystem::new(self.taxa.clone(), splits).expect("splits over the tree's taxa")
    }

    /// Roots the tree at the neighbour of leaf `r` and deletes `r`. Children
    /// follow the rotation after the parent; C-vertices become Q-vertices.
    pub fn root_at(&self, r: usize) -> Result<PqTree> {
        let n = self.taxa.len();
        if r >= n {
            return Err(Error::NotALeaf(r.to_string()));
        }
        let rooting = Rooting::new(&self.taxa, r)?;
        if n == 1 {
            return Err(Error::TooFewTaxa { needed: 2, found: 1 });
        }
        fn build(t: &PcTree, v: usize, parent: usize, rooting: &Rooting) -> PqNode {
            match t.kinds[v] {
                None => PqNode::Leaf(rooting.to_reduced(v).expect("not the base")),
                Some(kind) => PqNode::Internal(
                    match kind {
                        PcKind::P => PqKind::P,
                        PcKind::C => PqKind::Q,
                    },
                    t.rotation_after(v, parent)
                        .into_iter()
                        .map(|w| build(t, w, v, rooting))
                        .collect(),
                ),
            }
        }
        let top = self.adj[r][0];
        PqTree::new(rooting.reduced().clone(), build(self, top, r, &rooting))
    }

    /// [`Self::root_at`] by label.
    pub fn root_at_label(&self, label: &str) -> Result<PqTree> {
        let r = self
            .taxa
            .index_of(label)
            .ok_or_else(|| Error::NotALeaf(label.to_string()))?;
        self.root_at(r)
    }
}

impl SplitSystem {
    /// The PC-tree whose split system is this circular unrooted family,
    /// obtained by rooting at the ring's last taxon, building the PQ-tree of
    /// the rooted family, and unrooting again.
    pub fn to_pc_tree(&self, ring: &CircularOrdering) -> Result<PcTree> {
        let taxa = self.taxa();
        if ring.len() != taxa.len() {
            return Err(Error::TaxaMismatch);
        }
        if let Err(s) = self.is_circular(ring) {
            return Err(Error::NotCircular(s.format(taxa)));
        }
        if let Err((a, b)) = self.is_unrooted_family() {
            return Err(Error::NotUnrootedFamily(a.format(taxa), b.format(taxa)));
        }
        if taxa.len() == 1 {
            return PcTree::new(taxa.clone(), Vec::new());
        }
        let rooting = Rooting::new(taxa, ring.last().expect("non-empty ring"))?;
        let family = self.to_rooted_family(&rooting)?;
        let tree = PqTree::from_family(&family, &rooting.cut(ring)?)?;
        let pc = tree.unroot(&rooting)?;
        if pc.beta() != *self {
            return Err(Error::Internal(
                "constructed tree does not reproduce the split system".into(),
            ));
        }
        Ok(pc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::tests::{family, set};
    use crate::splits::tests::{e5_system, ring, split};
    use crate::trees::tests::{leaf, pq};

    #[test]
    fn hierarchy_round_trips() {
        let h = family(3, &["1", "2", "3", "1,2", "1,2,3"]);
        let t = PqTree::from_hierarchy(&h).unwrap();
        assert_eq!(t.root(), &PqNode::p(vec![PqNode::p(vec![leaf(0), leaf(1)]), leaf(2)]));
        assert_eq!(t.to_hierarchy(), h);
        let star = family(4, &["1", "2", "3", "4", "1,2,3,4"]);
        let t = PqTree::from_hierarchy(&star).unwrap();
        assert_eq!(t.root(), &PqNode::p(vec![leaf(0), leaf(1), leaf(2), leaf(3)]));
        let chain = family(4, &["1", "2", "3", "4", "1,2", "1,2,3", "1,2,3,4"]);
        let t = PqTree::from_hierarchy(&chain).unwrap();
        assert_eq!(
            t.root(),
            &PqNode::p(vec![PqNode::p(vec![PqNode::p(vec![leaf(0), leaf(1)]), leaf(2)]), leaf(3)])
        );
        assert_eq!(t.to_hierarchy(), chain);
        assert!(matches!(
            PqTree::from_hierarchy(&family(3, &["1", "2", "3", "1,2", "2,3", "1,2,3"])),
            Err(Error::NotHierarchy(_))
        ));
    }

    #[test]
    fn alpha_cases() {
        let q = pq(4, PqNode::q(vec![leaf(0), leaf(1), leaf(2), leaf(3)]));
        let a = q.alpha();
        assert_eq!(a, SetFamily::intervals(TaxonSet::numbered(4), &LinearOrdering::identity(4)).unwrap());
        let h = family(4, &["1", "2", "3", "4", "3,4", "1,2,3,4"]);
        let t = PqTree::from_hierarchy(&h).unwrap();
        assert_eq!(t.alpha(), h);
        let mixed = pq(4, PqNode::p(vec![PqNode::q(vec![leaf(0), leaf(1), leaf(2)]), leaf(3)]));
        assert_eq!(
            mixed.alpha(),
            family(4, &["1", "2", "3", "4", "1,2", "2,3", "1,2,3", "1,2,3,4"])
        );
    }

    #[test]
    fn family_to_tree_cases() {
        let ord = LinearOrdering::identity(4);
        let intervals = SetFamily::intervals(TaxonSet::numbered(4), &ord).unwrap();
        let t = PqTree::from_family(&intervals, &ord).unwrap();
        assert_eq!(t.root(), &PqNode::q(vec![leaf(0), leaf(1), leaf(2), leaf(3)]));

        let h = family(4, &["1", "2", "3", "4", "1,2", "1,2,3,4"]);
        assert_eq!(PqTree::from_family(&h, &ord).unwrap(), PqTree::from_hierarchy(&h).unwrap());

        let e5 = family(4, &["1", "2", "3", "4", "1,2", "2,3", "1,2,3,4"]).rooted_closure();
        let t = PqTree::from_family(&e5, &ord).unwrap();
        assert_eq!(
            t.root(),
            &PqNode::p(vec![PqNode::q(vec![leaf(0), leaf(1), leaf(2)]), leaf(3)])
        );

        let unclosed = family(4, &["1", "2", "3", "4", "1,2", "2,3", "1,2,3,4"]);
        assert!(matches!(PqTree::from_family(&unclosed, &ord), Err(Error::NotRootedFamily(_))));
        let gap = family(3, &["1", "2", "3", "1,3", "1,2,3"]);
        assert!(matches!(
            PqTree::from_family(&gap, &LinearOrdering::identity(3)),
            Err(Error::NotPrepyramid(_))
        ));
    }

    #[test]
    fn unroot_and_root_are_inverse() {
        let cherry = pq(3, PqNode::p(vec![PqNode::p(vec![leaf(0), leaf(1)]), leaf(2)]));
        let pc = cherry.unroot_with("4").unwrap();
        assert_eq!(pc.count_kind(PcKind::P), 2);
        assert_eq!(pc.count_kind(PcKind::C), 0);
        let t = TaxonSet::numbered(4);
        assert_eq!(pc.beta(), SplitSystem::new(t.clone(), [split(&t, "1,2")]).unwrap());
        assert_eq!(pc.root_at_label("4").unwrap(), cherry);

        let mixed = pq(4, PqNode::p(vec![PqNode::q(vec![leaf(0), leaf(1), leaf(2)]), leaf(3)]));
        let pc = mixed.unroot_with("5").unwrap();
        assert_eq!(pc.count_kind(PcKind::C), 1);
        let c = pc.internal_vertices().find(|&v| pc.kind(v) == Some(PcKind::C)).unwrap();
        assert_eq!(pc.neighbors(c).len(), 4);
        let p = pc.internal_vertices().find(|&v| pc.kind(v) == Some(PcKind::P)).unwrap();
        assert!(pc.neighbors(p).contains(&3) && pc.neighbors(p).contains(&4));
        assert_eq!(pc.root_at(4).unwrap(), mixed);

        let single = pq(1, leaf(0));
        let pc = single.unroot_with("r").unwrap();
        assert_eq!(pc.vertex_count(), 2);
        assert_eq!(pc.root_at(1).unwrap(), single);
        assert!(matches!(cherry.unroot_with("1"), Err(Error::LabelCollision(_))));
        assert!(matches!(pc.root_at_label("zz"), Err(Error::NotALeaf(_))));
    }

    #[test]
    fn beta_cases() {
        let t = TaxonSet::numbered(4);
        let ring4 = PcTree::new(t.clone(), vec![(PcKind::C, vec![0, 1, 2, 3])]).unwrap();
        assert_eq!(
            ring4.beta(),
            SplitSystem::circular_splits_of(t.clone(), &ring(&[0, 1, 2, 3])).unwrap()
        );
        let quartet = PcTree::new(t.clone(), vec![(PcKind::P, vec![0, 1, 5]), (PcKind::P, vec![2, 3, 4])]).unwrap();
        assert_eq!(quartet.beta().len(), 5);
        assert!(quartet.beta().contains(split(&t, "1,2")));
    }

    #[test]
    fn split_system_to_tree() {
        let closed = e5_system().system().closure();
        let pc = closed.to_pc_tree(&ring(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(pc.beta(), closed);
        assert_eq!(pc.count_kind(PcKind::C), 1);
        assert!(matches!(
            e5_system().system().to_pc_tree(&ring(&[0, 1, 2, 3, 4])),
            Err(Error::NotUnrootedFamily(_, _))
        ));
        assert!(matches!(
            closed.to_pc_tree(&ring(&[0, 2, 1, 3, 4])),
            Err(Error::NotCircular(_))
        ));
        let one = SplitSystem::trivial(TaxonSet::numbered(1));
        assert_eq!(one.to_pc_tree(&ring(&[0])).unwrap().vertex_count(), 1);
        let two = SplitSystem::trivial(TaxonSet::numbered(2));
        assert_eq!(two.to_pc_tree(&ring(&[0, 1])).unwrap().vertex_count(), 2);
        let _ = set(&[0]);
    }
}
