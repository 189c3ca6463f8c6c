//! Taxon sets, taxon subsets and orderings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest taxon set the bitset-backed [`Subset`] can address.
pub const MAX_TAXA: usize = 128;

const RESERVED: &[char] = &['(', ')', ',', ';', ':', '!', '|', '#', '\'', '"'];

/// Ordered list of distinct taxon labels; index `i` names taxon `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TaxonSet {
    labels: Arc<[String]>,
}

impl TaxonSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_TAXA {
            return Err(Error::TooManyTaxa(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Taxa labelled `1..=n`.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string())).expect("numbered labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownTaxon(label.to_string()))
    }

    /// Parses a comma-separated list of labels into taxon indices.
    pub fn parse_list(&self, text: &str) -> Result<Vec<usize>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.require(s))
            .collect()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Labels of `s` joined with commas, in index order.
    pub fn format_subset(&self, s: Subset) -> String {
        s.iter()
            .map(|i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn format_indices(&self, idx: &[usize]) -> String {
        idx.iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn labels_of<const K: usize>(&self, idx: [usize; K]) -> [String; K] {
        idx.map(|i| self.label(i).to_string())
    }
}

impl fmt::Debug for TaxonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// A subset of taxon indices, stored as a bitset.
///
/// Ordering is lexicographic on the increasing element sequence, so `{0,1}`
/// sorts before `{0,2}` and `{0}` before `{0,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Self {
        Subset(1u128 << i)
    }

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << n) - 1)
        }
    }

    /// Positions `lo..=hi` of `order` as a subset.
    pub fn interval(order: &[usize], lo: usize, hi: usize) -> Self {
        order[lo..=hi].iter().copied().collect()
    }

    pub fn from_bits(bits: u128) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// `A ∩ B ∈ {∅, A, B}`.
    pub fn compatible(self, other: Subset) -> bool {
        let i = self & other;
        i.is_empty() || i == self || i == other
    }

    /// Complement inside the first `n` taxa.
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Self) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Self) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Self) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

fn check_permutation(seq: &[usize], n: usize) -> Result<()> {
    if seq.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "expected {n} taxa, got {}",
            seq.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in seq {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidOrdering(format!(
                "taxon index {i} is out of range or repeated"
            )));
        }
    }
    Ok(())
}

/// A linear ordering `x_1 ≺ x_2 ≺ … ≺ x_n` of taxon indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrdering {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrdering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        check_permutation(&seq, seq.len())?;
        let mut pos = vec![0; seq.len()];
        for (p, &i) in seq.iter().enumerate() {
            pos[i] = p;
        }
        Ok(Self { seq, pos })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a permutation")
    }

    pub fn parse(taxa: &TaxonSet, text: &str) -> Result<Self> {
        let seq = taxa.parse_list(text)?;
        check_permutation(&seq, taxa.len())?;
        Self::new(seq)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// Position of taxon `i` in the ordering.
    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    /// Whether `s` is a contiguous run of this ordering.
    pub fn is_interval(&self, s: Subset) -> bool {
        let Some(first) = s.iter().map(|i| self.pos[i]).min() else {
            return false;
        };
        let last = s.iter().map(|i| self.pos[i]).max().unwrap_or(first);
        last - first + 1 == s.len()
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Subset {
        Subset::interval(&self.seq, lo, hi)
    }

    /// First and last positions of a non-empty subset.
    pub fn span(&self, s: Subset) -> (usize, usize) {
        let mut it = s.iter().map(|i| self.pos[i]);
        let first = it.next().expect("span of empty subset");
        it.fold((first, first), |(lo, hi), p| (lo.min(p), hi.max(p)))
    }
}

/// A circular ordering of all taxa; equal up to rotation and reflection.
#[derive(Clone, Debug)]
pub struct CircularOrdering {
    seq: Vec<usize>,
}

impl CircularOrdering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        check_permutation(&seq, seq.len())?;
        Ok(Self { seq })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            seq: (0..n).collect(),
        }
    }

    pub fn parse(taxa: &TaxonSet, text: &str) -> Result<Self> {
        let seq = taxa.parse_list(text)?;
        check_permutation(&seq, taxa.len())?;
        Ok(Self { seq })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The reading `x_1, …, x_n` this ring was built from.
    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn last(&self) -> Option<usize> {
        self.seq.last().copied()
    }

    /// Representative starting at the smallest index, read in the direction
    /// whose second element is smaller.
    pub fn canonical(&self) -> Vec<usize> {
        let n = self.seq.len();
        if n == 0 {
            return Vec::new();
        }
        let start = (0..n).min_by_key(|&p| self.seq[p]).unwrap_or(0);
        let mut out: Vec<usize> = (0..n).map(|k| self.seq[(start + k) % n]).collect();
        if n >= 3 && out[1] > out[n - 1] {
            out[1..].reverse();
        }
        out
    }

    /// The taxa following `r` around the ring, excluding `r`.
    pub fn cut_at(&self, r: usize) -> Option<Vec<usize>> {
        let p = self.seq.iter().position(|&x| x == r)?;
        let n = self.seq.len();
        Some((1..n).map(|k| self.seq[(p + k) % n]).collect())
    }

    /// Whether `s` forms a contiguous arc of the ring.
    pub fn is_arc(&self, s: Subset) -> bool {
        let n = self.seq.len();
        if s.is_empty() {
            return false;
        }
        // count the number of boundaries between members and non-members
        let boundaries = (0..n)
            .filter(|&p| s.contains(self.seq[p]) != s.contains(self.seq[(p + 1) % n]))
            .count();
        boundaries <= 2
    }

    pub fn format(&self, taxa: &TaxonSet) -> String {
        taxa.format_indices(&self.seq)
    }
}

impl PartialEq for CircularOrdering {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for CircularOrdering {}

/// The relation between a taxon set `X` and `X ∖ {r}` for a base taxon `r`.
///
/// Indices below the base keep their value; indices above it shift down by
/// one in the reduced set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rooting {
    full: TaxonSet,
    reduced: TaxonSet,
    base: usize,
}

impl Rooting {
    pub fn new(full: &TaxonSet, base: usize) -> Result<Self> {
        if base >= full.len() {
            return Err(Error::InvalidOrdering(format!("base index {base} out of range")));
        }
        let reduced = TaxonSet::new(
            full.labels()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != base)
                .map(|(_, l)| l.clone()),
        )?;
        Ok(Self {
            full: full.clone(),
            reduced,
            base,
        })
    }

    pub fn by_label(full: &TaxonSet, label: &str) -> Result<Self> {
        Self::new(full, full.require(label)?)
    }

    /// Inserts a fresh label `label` at index `position` of `reduced`.
    pub fn insert(reduced: &TaxonSet, label: &str, position: usize) -> Result<Self> {
        if reduced.index_of(label).is_some() {
            return Err(Error::LabelCollision(label.to_string()));
        }
        if position > reduced.len() {
            return Err(Error::InvalidOrdering(format!(
                "insert position {position} out of range"
            )));
        }
        let mut labels = reduced.labels().to_vec();
        labels.insert(position, label.to_string());
        Ok(Self {
            full: TaxonSet::new(labels)?,
            reduced: reduced.clone(),
            base: position,
        })
    }

    /// Appends a fresh base label after the existing taxa.
    pub fn append(reduced: &TaxonSet, label: &str) -> Result<Self> {
        Self::insert(reduced, label, reduced.len())
    }

    pub fn full(&self) -> &TaxonSet {
        &self.full
    }

    pub fn reduced(&self) -> &TaxonSet {
        &self.reduced
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn base_label(&self) -> &str {
        self.full.label(self.base)
    }

    pub fn to_reduced(&self, i: usize) -> Option<usize> {
        match i.cmp(&self.base) {
            Ordering::Less => Some(i),
            Ordering::Equal => None,
            Ordering::Greater => Some(i - 1),
        }
    }

    pub fn to_full(&self, j: usize) -> usize {
        if j < self.base {
            j
        } else {
            j + 1
        }
    }

    /// Drops the base taxon and renumbers.
    pub fn reduce(&self, s: Subset) -> Subset {
        let low = Subset::full(self.base).bits();
        let bits = s.bits() & !(1u128 << self.base);
        Subset::from_bits((bits & low) | ((bits >> 1) & !low))
    }

    /// Renumbers a reduced subset into the full taxon set.
    pub fn lift(&self, s: Subset) -> Subset {
        let low = Subset::full(self.base).bits();
        Subset::from_bits((s.bits() & low) | ((s.bits() & !low) << 1))
    }

    /// The ring cut at the base taxon, as a linear ordering of the reduced set.
    pub fn cut(&self, ring: &CircularOrdering) -> Result<LinearOrdering> {
        if ring.len() != self.full.len() {
            return Err(Error::TaxaMismatch);
        }
        let seq = ring
            .cut_at(self.base)
            .ok_or_else(|| Error::InvalidOrdering("base not on ring".into()))?;
        LinearOrdering::new(seq.into_iter().filter_map(|i| self.to_reduced(i)).collect())
    }

    /// The ring obtained by appending the base after a reduced linear ordering.
    pub fn close(&self, order: &LinearOrdering) -> CircularOrdering {
        let mut seq: Vec<usize> = order.as_slice().iter().map(|&j| self.to_full(j)).collect();
        seq.push(self.base);
        CircularOrdering { seq }
    }
}
