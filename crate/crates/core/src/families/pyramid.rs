//! Maximally linked sets, the matrix of an indexed family, predecessors and
//! pyramid weights.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{IndexedFamily, SetFamily};
use crate::error::{Error, Result};
use crate::matrices::SymmetricMatrix;
use crate::rational::{format_rational, Rational};
use crate::splits::{Split, WeightedSplitSystem};
use crate::taxa::{LinearOrdering, Rooting, Subset};

/// Minimal strict supersets of each member.
pub type PredecessorReport = BTreeMap<Subset, Vec<Subset>>;

impl SymmetricMatrix {
    /// The maximally linked sets of a Robinsonian matrix, indexed by their
    /// diameter (diagonal included). Each is an interval of `ord` whose
    /// diameter grows when extended by either neighbour.
    pub fn maximally_linked_sets(&self, ord: &LinearOrdering) -> Result<IndexedFamily> {
        if ord.len() != self.len() {
            return Err(Error::TaxaMismatch);
        }
        self.is_robinsonian(ord)
            .map_err(|w| Error::NotRobinsonian(self.taxa().labels_of(w)))?;
        let s = ord.as_slice();
        let n = s.len();
        // diam[i][j] for positions i ≤ j
        let mut diam = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            diam[i][i] = self.get(s[i], s[i]);
            for j in i + 1..n {
                let corner = (i..=j).map(|k| self.get(s[k], s[j])).max().expect("non-empty");
                diam[i][j] = diam[i][j - 1].max(corner);
            }
        }
        let mut members = Vec::new();
        for i in 0..n {
            for j in i..n {
                let d = diam[i][j];
                let left_grows = i == 0 || diam[i - 1][j] > d;
                let right_grows = j + 1 == n || diam[i][j + 1] > d;
                if left_grows && right_grows {
                    members.push((ord.interval(i, j), d));
                }
            }
        }
        IndexedFamily::new(self.taxa().clone(), members)
    }
}

impl IndexedFamily {
    /// `R(x,y) = min{ f(A) : x, y ∈ A }`, diagonal included.
    pub fn to_matrix(&self) -> Result<SymmetricMatrix> {
        let taxa = self.taxa().clone();
        let n = taxa.len();
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let pair = Subset::singleton(x) | Subset::singleton(y);
                let v = self
                    .iter()
                    .filter(|(m, _)| pair.is_subset(*m))
                    .map(|(_, f)| f)
                    .min()
                    .ok_or_else(|| {
                        Error::UncoveredPair(taxa.label(x).to_string(), taxa.label(y).to_string())
                    })?;
                values.push(v);
            }
        }
        SymmetricMatrix::new(taxa, values)
    }

    /// Weights from the index: `−f(A)` with no predecessor, `−f(A) + f(P)`
    /// with one, and `−f(A) + f(P₁) + f(P₂) − f(hull(P₁ ∪ P₂))` with two.
    pub fn pyramid_weights(&self) -> Result<BTreeMap<Subset, Rational>> {
        let family = self.family();
        let preds = family.predecessors();
        let f = |m: Subset| self.index(m).expect("member has an index");
        let mut weights = BTreeMap::new();
        for (a, p) in &preds {
            let w = match p.as_slice() {
                [] => -f(*a),
                [p1] => f(*p1) - f(*a),
                [p1, p2] => {
                    let hull = family
                        .hull(*p1 | *p2)
                        .ok_or_else(|| Error::MissingHull(family.format_member(*a)))?;
                    f(*p1) + f(*p2) - f(hull) - f(*a)
                }
                more => {
                    return Err(Error::TooManyPredecessors(
                        family.format_member(*a),
                        more.len(),
                    ))
                }
            };
            if w < Rational::zero() {
                return Err(Error::NegativeWeight {
                    member: family.format_member(*a),
                    weight: format_rational(&w),
                    predecessors: p
                        .iter()
                        .map(|m| format!("{{{}}}", family.format_member(*m)))
                        .collect::<Vec<_>>()
                        .join(" "),
                });
            }
            weights.insert(*a, w);
        }
        Ok(weights)
    }

    /// Splits `A | X∖A` over `X = taxa ∪ {r}` weighted by the pyramid weights.
    pub fn to_weighted_splits(&self, rooting: &Rooting) -> Result<WeightedSplitSystem> {
        if rooting.reduced() != self.taxa() {
            return Err(Error::TaxaMismatch);
        }
        let n = rooting.full().len();
        let weighted = self
            .pyramid_weights()?
            .into_iter()
            .map(|(a, w)| Ok((Split::new(rooting.lift(a), n)?, w)))
            .collect::<Result<Vec<_>>>()?;
        WeightedSplitSystem::new(rooting.full().clone(), weighted)
    }
}

impl SetFamily {
    /// For each member, the members containing it with nothing in between.
    pub fn predecessors(&self) -> PredecessorReport {
        let all: Vec<Subset> = self.iter().collect();
        all.iter()
            .map(|&a| {
                let above: Vec<Subset> = all
                    .iter()
                    .copied()
                    .filter(|&b| b != a && a.is_subset(b))
                    .collect();
                let minimal = above
                    .iter()
                    .copied()
                    .filter(|&b| !above.iter().any(|&c| c != b && c.is_subset(b)))
                    .collect();
                (a, minimal)
            })
            .collect()
    }

    /// The intersection of all members containing `s`, if it is a member.
    pub fn hull(&self, s: Subset) -> Option<Subset> {
        let mut containing = self.iter().filter(|m| s.is_subset(*m));
        let first = containing.next()?;
        let hull = containing.fold(first, |acc, m| acc & m);
        self.contains(hull).then_some(hull)
    }
}
