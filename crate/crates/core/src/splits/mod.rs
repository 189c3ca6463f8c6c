//! Splits, split systems and weighted circular split systems.

mod closure;
mod decompose;
mod io;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrices::{DissimilarityMap, DEFAULT_SEARCH_LIMIT};
use crate::rational::{format_rational, is_negative, Rational};
use crate::taxa::{CircularOrdering, Subset, TaxonSet};

/// A bipartition `A|B` of `n` taxa, stored with taxon 0 in block `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    a: Subset,
    n: usize,
}

impl Split {
    /// The split `block | X∖block`; either block may be given.
    pub fn new(block: Subset, n: usize) -> Result<Self> {
        let full = Subset::full(n);
        if block.is_empty() || !block.is_subset(full) || block == full {
            return Err(Error::InvalidSplit(format!(
                "block {block:?} does not split {n} taxa"
            )));
        }
        let a = if block.contains(0) { block } else { full - block };
        Ok(Self { a, n })
    }

    /// The trivial split `{i} | X∖{i}`.
    pub fn trivial(i: usize, n: usize) -> Result<Self> {
        Self::new(Subset::singleton(i), n)
    }

    /// Block containing taxon 0.
    pub fn block_a(self) -> Subset {
        self.a
    }

    pub fn block_b(self) -> Subset {
        self.a.complement(self.n)
    }

    pub fn taxa_count(self) -> usize {
        self.n
    }

    pub fn is_trivial(self) -> bool {
        self.a.len() == 1 || self.a.len() + 1 == self.n
    }

    /// Whether `i` and `j` lie in different blocks.
    pub fn separates(self, i: usize, j: usize) -> bool {
        self.a.contains(i) != self.a.contains(j)
    }

    /// The block not containing `r`.
    pub fn side_without(self, r: usize) -> Subset {
        if self.a.contains(r) {
            self.block_b()
        } else {
            self.a
        }
    }

    /// One of the four block intersections is empty.
    pub fn is_compatible(self, other: Split) -> bool {
        let (a1, b1, a2, b2) = (self.a, self.block_b(), other.a, other.block_b());
        (a1 & a2).is_empty() || (a1 & b2).is_empty() || (b1 & a2).is_empty() || (b1 & b2).is_empty()
    }

    /// The 0/1 split pseudometric.
    pub fn pseudometric(self, taxa: &TaxonSet) -> DissimilarityMap {
        let one = Rational::from_integer(1);
        DissimilarityMap::from_fn(taxa.clone(), |i, j| {
            if self.separates(i, j) {
                one
            } else {
                Rational::zero()
            }
        })
        .expect("0/1 values form a dissimilarity map")
    }

    pub fn format(self, taxa: &TaxonSet) -> String {
        format!(
            "{}|{}",
            taxa.format_subset(self.a),
            taxa.format_subset(self.block_b())
        )
    }

    /// The four splits cut out by the block intersections of an incompatible
    /// pair; `None` when the pair is compatible.
    pub fn derived(self, other: Split) -> Option<[Split; 4]> {
        if self.is_compatible(other) {
            return None;
        }
        let (a1, b1, a2, b2) = (self.a, self.block_b(), other.a, other.block_b());
        let mk = |s| Split::new(s, self.n).expect("incompatible intersections are proper");
        Some([mk(a1 & a2), mk(a1 & b2), mk(b1 & a2), mk(b1 & b2)])
    }
}

/// A set of splits over a taxon set, always containing every trivial split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSystem {
    taxa: TaxonSet,
    splits: BTreeSet<Split>,
}

impl SplitSystem {
    /// Collects `splits` and adds any missing trivial split.
    pub fn new(taxa: TaxonSet, splits: impl IntoIterator<Item = Split>) -> Result<Self> {
        let n = taxa.len();
        let mut set = BTreeSet::new();
        for s in splits {
            if s.n != n {
                return Err(Error::TaxaMismatch);
            }
            set.insert(s);
        }
        set.extend(trivial_splits(n));
        Ok(Self { taxa, splits: set })
    }

    pub fn trivial(taxa: TaxonSet) -> Self {
        Self::new(taxa, []).expect("trivial splits match their taxa")
    }

    /// All `n(n−1)/2` arcs of the ring that avoid its last taxon.
    pub fn circular_splits_of(taxa: TaxonSet, ring: &CircularOrdering) -> Result<Self> {
        let n = taxa.len();
        if ring.len() != n {
            return Err(Error::TaxaMismatch);
        }
        let seq = ring.as_slice();
        let mut splits = Vec::new();
        for lo in 0..n.saturating_sub(1) {
            for hi in lo..n - 1 {
                splits.push(Split::new(Subset::interval(seq, lo, hi), n)?);
            }
        }
        Self::new(taxa, splits)
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn contains(&self, s: Split) -> bool {
        self.splits.contains(&s)
    }

    /// Splits in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Split> + '_ {
        self.splits.iter().copied()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = Split> + '_ {
        self.iter().filter(|s| !s.is_trivial())
    }

    pub fn is_subset(&self, other: &SplitSystem) -> bool {
        self.splits.is_subset(&other.splits)
    }

    /// Whether every split is an arc of `ring`; the witness is the first split
    /// that is not.
    pub fn is_circular(&self, ring: &CircularOrdering) -> std::result::Result<(), Split> {
        assert_eq!(ring.len(), self.taxa.len(), "ring must cover the taxa");
        match self.iter().find(|s| !ring.is_arc(s.a)) {
            Some(s) => Err(s),
            None => Ok(()),
        }
    }

    /// Lexicographically least ring starting at taxon 0 for which every split
    /// is an arc.
    pub fn find_circular_witness(&self, limit: usize) -> Result<Option<CircularOrdering>> {
        let n = self.taxa.len();
        if n > limit {
            return Err(Error::SearchRefused { n, limit });
        }
        if n <= 3 {
            return Ok(Some(CircularOrdering::identity(n)));
        }
        let nontrivial: Vec<Subset> = self.nontrivial().map(Split::block_a).collect();
        let mut seq = vec![0];
        let mut used = vec![false; n];
        used[0] = true;
        Ok(extend_arcs(&nontrivial, &mut seq, &mut used)
            .then(|| CircularOrdering::new(seq).expect("search builds permutations")))
    }

    /// Every incompatible pair has its four derived splits present; the
    /// witness is the first offending pair.
    pub fn is_unrooted_family(&self) -> std::result::Result<(), (Split, Split)> {
        let all: Vec<Split> = self.iter().collect();
        for (k, &s1) in all.iter().enumerate() {
            for &s2 in &all[k + 1..] {
                if let Some(d) = s1.derived(s2) {
                    if d.iter().any(|s| !self.contains(*s)) {
                        return Err((s1, s2));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether all splits are pairwise compatible.
    pub fn is_pairwise_compatible(&self) -> bool {
        let all: Vec<Split> = self.iter().collect();
        all.iter()
            .enumerate()
            .all(|(k, s1)| all[k + 1..].iter().all(|s2| s1.is_compatible(*s2)))
    }

    pub(crate) fn from_set(taxa: TaxonSet, splits: BTreeSet<Split>) -> Self {
        Self { taxa, splits }
    }
}

/// Convenience for [`SplitSystem::find_circular_witness`] at the default limit.
pub fn find_circular_witness(s: &SplitSystem) -> Result<Option<CircularOrdering>> {
    s.find_circular_witness(DEFAULT_SEARCH_LIMIT)
}

fn trivial_splits(n: usize) -> impl Iterator<Item = Split> {
    (0..n).filter_map(move |i| Split::trivial(i, n).ok())
}

/// A set restricted to a linear prefix can only become an arc of the
/// completed ring if its membership pattern changes at most twice.
fn prefix_allows_arc(s: Subset, seq: &[usize]) -> bool {
    seq.windows(2)
        .filter(|w| s.contains(w[0]) != s.contains(w[1]))
        .count()
        <= 2
}

fn extend_arcs(blocks: &[Subset], seq: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = used.len();
    if seq.len() == n {
        let ring = CircularOrdering::new(seq.clone()).expect("complete permutation");
        return blocks.iter().all(|b| ring.is_arc(*b));
    }
    for next in 0..n {
        if used[next] {
            continue;
        }
        seq.push(next);
        if blocks.iter().all(|b| prefix_allows_arc(*b, seq)) {
            used[next] = true;
            if extend_arcs(blocks, seq, used) {
                return true;
            }
            used[next] = false;
        }
        seq.pop();
    }
    false
}

/// A split system with a non-negative weight on each split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSplitSystem {
    system: SplitSystem,
    weights: BTreeMap<Split, Rational>,
}

impl WeightedSplitSystem {
    /// Trivial splits not listed get weight 0. Repeated splits are rejected.
    pub fn new(taxa: TaxonSet, weighted: impl IntoIterator<Item = (Split, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (s, w) in weighted {
            if is_negative(&w) {
                return Err(Error::InvalidSplit(format!(
                    "{} has negative weight {}",
                    s.format(&taxa),
                    format_rational(&w)
                )));
            }
            if weights.insert(s, w).is_some() {
                return Err(Error::InvalidSplit(format!("{} listed twice", s.format(&taxa))));
            }
        }
        let system = SplitSystem::new(taxa, weights.keys().copied())?;
        for s in system.iter() {
            weights.entry(s).or_insert_with(Rational::zero);
        }
        Ok(Self { system, weights })
    }

    pub fn system(&self) -> &SplitSystem {
        &self.system
    }

    pub fn taxa(&self) -> &TaxonSet {
        self.system.taxa()
    }

    pub fn weight(&self, s: Split) -> Option<Rational> {
        self.weights.get(&s).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Split, Rational)> + '_ {
        self.weights.iter().map(|(s, w)| (*s, *w))
    }

    /// Splits carrying a strictly positive weight.
    pub fn positive(&self) -> BTreeSet<Split> {
        self.iter()
            .filter(|(_, w)| *w > Rational::zero())
            .map(|(s, _)| s)
            .collect()
    }

    /// Adds `extra` splits with weight 0, leaving present splits untouched.
    pub fn pad(&self, extra: impl IntoIterator<Item = Split>) -> Result<Self> {
        let mut out = self.clone();
        let mut splits = out.system.splits.clone();
        for s in extra {
            if s.n != self.taxa().len() {
                return Err(Error::TaxaMismatch);
            }
            splits.insert(s);
            out.weights.entry(s).or_insert_with(Rational::zero);
        }
        out.system.splits = splits;
        Ok(out)
    }

    /// The evaluation map: `D(x,y) = Σ w(S) D_S(x,y)`.
    pub fn evaluate(&self) -> DissimilarityMap {
        DissimilarityMap::from_fn(self.taxa().clone(), |i, j| {
            self.weights
                .iter()
                .filter(|(s, _)| s.separates(i, j))
                .map(|(_, w)| *w)
                .sum()
        })
        .expect("non-negative weights give a dissimilarity map")
    }
}
