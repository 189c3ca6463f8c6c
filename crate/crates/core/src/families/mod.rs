//! Set families over a taxon set: hierarchies, prepyramids, pyramids and
//! rooted families, plus their indexed versions.

mod io;
mod pyramid;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::splits::{Split, SplitSystem};
use crate::taxa::{LinearOrdering, Rooting, Subset, TaxonSet};

pub use pyramid::PredecessorReport;

/// Why a family fails one of the structural predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyWitness {
    /// The full set or a singleton is absent.
    Missing(Subset),
    /// Two members overlap without nesting.
    Overlap(Subset, Subset),
    /// A member is not an interval of the ordering.
    NotInterval(Subset),
    /// The intersection of two members is non-empty and absent.
    NotClosed(Subset, Subset),
    /// An overlapping pair lacks one of its four derived sets.
    Underived(Subset, Subset),
}

impl FamilyWitness {
    /// Human-readable description using the taxon labels.
    pub fn describe(&self, taxa: &TaxonSet) -> String {
        let f = |s: &Subset| format!("{{{}}}", taxa.format_subset(*s));
        match self {
            Self::Missing(s) => format!("{} is missing", f(s)),
            Self::Overlap(a, b) => format!("{} and {} overlap", f(a), f(b)),
            Self::NotInterval(s) => format!("{} is not an interval", f(s)),
            Self::NotClosed(a, b) => format!("the intersection of {} and {} is missing", f(a), f(b)),
            Self::Underived(a, b) => {
                format!("{} and {} overlap but a derived set is missing", f(a), f(b))
            }
        }
    }
}

/// A set of non-empty taxon subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    taxa: TaxonSet,
    members: BTreeSet<Subset>,
}

impl SetFamily {
    pub fn new(taxa: TaxonSet, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let full = taxa.full();
        let mut set = BTreeSet::new();
        for m in members {
            if m.is_empty() || !m.is_subset(full) {
                return Err(Error::InvalidMember(format!(
                    "{m:?} is not a non-empty subset of the taxa"
                )));
            }
            set.insert(m);
        }
        Ok(Self { taxa, members: set })
    }

    /// Every interval of `ord`.
    pub fn intervals(taxa: TaxonSet, ord: &LinearOrdering) -> Result<Self> {
        let n = ord.len();
        let members = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
        Self::new(taxa, members.map(|(i, j)| ord.interval(i, j)).collect::<Vec<_>>())
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &SetFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    fn require_full_and_singletons(&self) -> std::result::Result<(), FamilyWitness> {
        let n = self.taxa.len();
        std::iter::once(Subset::full(n))
            .chain((0..n).map(Subset::singleton))
            .find(|s| !self.contains(*s))
            .map_or(Ok(()), |s| Err(FamilyWitness::Missing(s)))
    }

    fn pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        let all: Vec<Subset> = self.iter().collect();
        (0..all.len()).flat_map(move |k| {
            let a = all[k];
            all[k + 1..].iter().map(move |&b| (a, b)).collect::<Vec<_>>()
        })
    }

    /// Contains the full set and every singleton, and no two members overlap.
    pub fn is_hierarchy(&self) -> std::result::Result<(), FamilyWitness> {
        self.require_full_and_singletons()?;
        match self.pairs().find(|(a, b)| !a.compatible(*b)) {
            Some((a, b)) => Err(FamilyWitness::Overlap(a, b)),
            None => Ok(()),
        }
    }

    /// Contains the full set and every singleton, and every member is an
    /// interval of `ord`.
    pub fn is_prepyramid(&self, ord: &LinearOrdering) -> std::result::Result<(), FamilyWitness> {
        assert_eq!(ord.len(), self.taxa.len(), "ordering must cover the taxa");
        self.require_full_and_singletons()?;
        match self.iter().find(|m| !ord.is_interval(*m)) {
            Some(m) => Err(FamilyWitness::NotInterval(m)),
            None => Ok(()),
        }
    }

    /// A prepyramid closed under non-empty intersection.
    pub fn is_pyramid(&self, ord: &LinearOrdering) -> std::result::Result<(), FamilyWitness> {
        self.is_prepyramid(ord)?;
        match self.pairs().find(|(a, b)| {
            let c = *a & *b;
            !c.is_empty() && !self.contains(c)
        }) {
            Some((a, b)) => Err(FamilyWitness::NotClosed(a, b)),
            None => Ok(()),
        }
    }

    /// For every overlapping pair the intersection, both differences and the
    /// union are members.
    pub fn is_rooted_family(&self) -> std::result::Result<(), FamilyWitness> {
        match self.pairs().find(|(a, b)| {
            derived_sets(*a, *b).is_some_and(|d| d.iter().any(|s| !self.contains(*s)))
        }) {
            Some((a, b)) => Err(FamilyWitness::Underived(a, b)),
            None => Ok(()),
        }
    }

    /// Members compatible with every other member.
    pub fn compatible_core(&self) -> SetFamily {
        let members = self
            .iter()
            .filter(|a| self.iter().all(|b| a.compatible(b)))
            .collect();
        SetFamily {
            taxa: self.taxa.clone(),
            members,
        }
    }

    /// The least rooted family containing this one.
    pub fn rooted_closure(&self) -> SetFamily {
        let mut present = self.members.clone();
        let mut list: Vec<Subset> = present.iter().copied().collect();
        let mut k = 0;
        while k < list.len() {
            let a = list[k];
            for m in 0..k {
                if let Some(derived) = derived_sets(a, list[m]) {
                    for d in derived {
                        if present.insert(d) {
                            list.push(d);
                        }
                    }
                }
            }
            k += 1;
        }
        SetFamily {
            taxa: self.taxa.clone(),
            members: present,
        }
    }

    /// Maps each member `A` over `X∖{r}` to the split `A | X∖A` over `X`.
    pub fn to_split_system(&self, rooting: &Rooting) -> Result<SplitSystem> {
        if rooting.reduced() != &self.taxa {
            return Err(Error::TaxaMismatch);
        }
        let n = rooting.full().len();
        let splits = self
            .iter()
            .map(|a| Split::new(rooting.lift(a), n))
            .collect::<Result<Vec<_>>>()?;
        SplitSystem::new(rooting.full().clone(), splits)
    }

    pub fn format_member(&self, m: Subset) -> String {
        self.taxa.format_subset(m)
    }
}

/// The intersection, both differences and the union of an overlapping pair;
/// `None` when the pair is nested or disjoint.
fn derived_sets(a: Subset, b: Subset) -> Option<[Subset; 4]> {
    if a.compatible(b) {
        None
    } else {
        Some([a & b, a - b, b - a, a | b])
    }
}

impl SplitSystem {
    /// Maps each split to its block avoiding the base taxon, over `X∖{r}`.
    pub fn to_rooted_family(&self, rooting: &Rooting) -> Result<SetFamily> {
        if rooting.full() != self.taxa() {
            return Err(Error::TaxaMismatch);
        }
        let r = rooting.base();
        SetFamily::new(
            rooting.reduced().clone(),
            self.iter().map(|s| rooting.reduce(s.side_without(r))).collect::<Vec<_>>(),
        )
    }
}

/// A set family with a rational index on each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedFamily {
    family: SetFamily,
    index: BTreeMap<Subset, Rational>,
}

impl IndexedFamily {
    /// Every member must receive exactly one index value.
    pub fn new(taxa: TaxonSet, indexed: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (m, f) in indexed {
            if index.insert(m, f).is_some() {
                return Err(Error::InvalidMember(format!(
                    "{} indexed twice",
                    taxa.format_subset(m)
                )));
            }
        }
        let family = SetFamily::new(taxa, index.keys().copied())?;
        Ok(Self { family, index })
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn taxa(&self) -> &TaxonSet {
        self.family.taxa()
    }

    pub fn index(&self, m: Subset) -> Option<Rational> {
        self.index.get(&m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, Rational)> + '_ {
        self.index.iter().map(|(m, f)| (*m, *f))
    }

    /// `A ⊂ B ⇒ f(A) < f(B)` (`strict`) or `f(A) ≤ f(B)`; the witness is the
    /// first offending nested pair `(A, B)`.
    pub fn check_monotone(&self, strict: bool) -> std::result::Result<(), (Subset, Subset)> {
        for (a, fa) in self.iter() {
            for (b, fb) in self.iter() {
                if a != b && a.is_subset(b) && (fa > fb || (strict && fa == fb)) {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::splits::tests::split;

    pub(crate) fn family(n: usize, members: &[&str]) -> SetFamily {
        let t = TaxonSet::numbered(n);
        SetFamily::new(
            t.clone(),
            members.iter().map(|m| t.parse_list(m).unwrap().into_iter().collect::<Subset>()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    pub(crate) fn set(items: &[usize]) -> Subset {
        items.iter().copied().collect()
    }

    fn ord(seq: &[usize]) -> LinearOrdering {
        LinearOrdering::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn hierarchy_cases() {
        assert!(family(3, &["1", "2", "3", "1,2", "1,2,3"]).is_hierarchy().is_ok());
        assert_eq!(
            family(3, &["1", "2", "3", "1,2", "2,3", "1,2,3"]).is_hierarchy(),
            Err(FamilyWitness::Overlap(set(&[0, 1]), set(&[1, 2])))
        );
        assert!(family(4, &["1", "2", "3", "4", "1,2,3,4"]).is_hierarchy().is_ok());
        assert_eq!(
            family(3, &["1", "2", "1,2,3"]).is_hierarchy(),
            Err(FamilyWitness::Missing(set(&[2])))
        );
    }

    #[test]
    fn pyramid_cases() {
        let o = ord(&[0, 1, 2, 3]);
        let intervals = SetFamily::intervals(TaxonSet::numbered(4), &o).unwrap();
        assert_eq!(intervals.len(), 10);
        assert!(intervals.is_pyramid(&o).is_ok());
        let gap = family(3, &["1", "2", "3", "1,3", "1,2,3"]);
        assert_eq!(
            gap.is_prepyramid(&ord(&[0, 1, 2])),
            Err(FamilyWitness::NotInterval(set(&[0, 2])))
        );
        let two = family(3, &["1", "2", "3", "1,2", "2,3", "1,2,3"]);
        assert!(two.is_pyramid(&ord(&[0, 1, 2])).is_ok());
        let open = family(4, &["1", "2", "3", "4", "1,2,3", "2,3,4", "1,2,3,4"]);
        assert!(open.is_prepyramid(&o).is_ok());
        assert_eq!(
            open.is_pyramid(&o),
            Err(FamilyWitness::NotClosed(set(&[0, 1, 2]), set(&[1, 2, 3])))
        );
    }

    #[test]
    fn rooted_family_cases() {
        let o = ord(&[0, 1, 2, 3]);
        assert!(SetFamily::intervals(TaxonSet::numbered(4), &o).unwrap().is_rooted_family().is_ok());
        assert!(family(3, &["1", "2", "3", "1,2", "2,3", "1,2,3"]).is_rooted_family().is_ok());
        assert!(family(4, &["1", "1,2", "3,4"]).is_rooted_family().is_ok());
        assert_eq!(
            family(4, &["1", "2", "3", "4", "1,2", "2,3", "1,2,3,4"]).is_rooted_family(),
            Err(FamilyWitness::Underived(set(&[0, 1]), set(&[1, 2])))
        );
    }

    #[test]
    fn rooted_closure_cases() {
        let f = family(3, &["1", "2", "3", "1,2", "1,2,3"]);
        assert_eq!(f.rooted_closure(), f);
        let f = family(3, &["1", "2", "3", "1,2", "2,3", "1,2,3"]);
        assert_eq!(f.rooted_closure(), f);
        let e5 = family(4, &["1", "2", "3", "4", "1,2", "2,3", "1,2,3,4"]);
        let c = e5.rooted_closure();
        assert_eq!(
            c.iter().filter(|m| !e5.contains(*m)).collect::<Vec<_>>(),
            vec![set(&[0, 1, 2])]
        );
        assert!(c.is_rooted_family().is_ok());
        assert_eq!(c.rooted_closure(), c);
    }

    #[test]
    fn rooting_maps_are_inverse() {
        let t = TaxonSet::numbered(4);
        let rooting = Rooting::new(&t, 3).unwrap();
        let s = SplitSystem::new(t.clone(), [split(&t, "1,2")]).unwrap();
        let f = s.to_rooted_family(&rooting).unwrap();
        assert_eq!(f, family(3, &["1", "2", "3", "1,2", "1,2,3"]));
        assert_eq!(f.to_split_system(&rooting).unwrap(), s);

        // base in the middle of the taxon list
        let rooting = Rooting::new(&t, 1).unwrap();
        let f = s.to_rooted_family(&rooting).unwrap();
        assert_eq!(f.taxa().labels(), &["1", "3", "4"]);
        assert!(f.contains(set(&[1, 2])));
        assert_eq!(f.to_split_system(&rooting).unwrap(), s);
    }

    #[test]
    fn monotone_flags() {
        let t = TaxonSet::numbered(2);
        let q = Rational::from_integer;
        let f = IndexedFamily::new(t.clone(), [(set(&[0]), q(1)), (set(&[0, 1]), q(1))]).unwrap();
        assert!(f.check_monotone(false).is_ok());
        assert_eq!(f.check_monotone(true), Err((set(&[0]), set(&[0, 1]))));
        assert!(IndexedFamily::new(t, [(set(&[0]), q(1)), (set(&[0]), q(2))]).is_err());
    }
}
