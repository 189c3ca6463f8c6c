//! Decomposition of a Kalmanson map into weighted circular splits.

use num_traits::Zero;

use super::{Split, WeightedSplitSystem};
use crate::error::{Error, Result};
use crate::matrices::DissimilarityMap;
use crate::rational::{format_rational, half, Rational};
use crate::taxa::{CircularOrdering, Subset};

impl DissimilarityMap {
    /// The unique weighted circular split system over `ring` evaluating to
    /// this map. Nontrivial splits of weight 0 are dropped; trivial splits
    /// are always present.
    pub fn kalmanson_decompose(&self, ring: &CircularOrdering) -> Result<WeightedSplitSystem> {
        self.require_kalmanson(ring)?;
        let n = self.len();
        let seq = ring.as_slice();
        // x_k for 1-based k, with x_0 = x_n
        let x = |k: usize| seq[(k + n - 1) % n];
        let mut weighted = Vec::new();
        for i in 1..n {
            for j in i + 1..=n {
                let twice = self.get(x(i), x(j)) + self.get(x(i - 1), x(j - 1))
                    - self.get(x(i), x(j - 1))
                    - self.get(x(i - 1), x(j));
                let alpha = half(twice);
                let split = Split::new(Subset::interval(seq, i - 1, j - 2), n)?;
                if alpha < Rational::zero() {
                    return Err(Error::Internal(format!(
                        "negative weight {} on {} for a Kalmanson map",
                        format_rational(&alpha),
                        split.format(self.taxa())
                    )));
                }
                if !alpha.is_zero() || split.is_trivial() {
                    weighted.push((split, alpha));
                }
            }
        }
        WeightedSplitSystem::new(self.taxa().clone(), weighted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::tests::{dq, q};
    use crate::splits::tests::{dq_system, e5_system, ring, split};
    use crate::taxa::TaxonSet;

    #[test]
    fn quartet_decomposition() {
        let w = dq().kalmanson_decompose(&ring(&[0, 1, 2, 3])).unwrap();
        assert_eq!(w, dq_system());
        let t = TaxonSet::numbered(4);
        assert_eq!(w.weight(split(&t, "2,3")), None);
        assert_eq!(w.weight(split(&t, "1,2")), Some(q(1)));
    }

    #[test]
    fn zero_map_keeps_trivial_splits() {
        let t = TaxonSet::numbered(5);
        let w = DissimilarityMap::zero(t)
            .kalmanson_decompose(&CircularOrdering::identity(5))
            .unwrap();
        assert_eq!(w.system().len(), 5);
        assert!(w.iter().all(|(s, v)| s.is_trivial() && v.is_zero()));
    }

    #[test]
    fn e5_round_trip() {
        let e5 = e5_system();
        let w = e5.evaluate().kalmanson_decompose(&CircularOrdering::identity(5)).unwrap();
        assert_eq!(w, e5);
    }

    #[test]
    fn tiny_maps() {
        let two = DissimilarityMap::from_fn(TaxonSet::numbered(2), |_, _| q(5)).unwrap();
        let w = two.kalmanson_decompose(&CircularOrdering::identity(2)).unwrap();
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![(Split::trivial(0, 2).unwrap(), q(5))]);
        assert_eq!(w.evaluate(), two);
        let one = DissimilarityMap::zero(TaxonSet::numbered(1));
        let w = one.kalmanson_decompose(&CircularOrdering::identity(1)).unwrap();
        assert!(w.system().is_empty());
    }

    #[test]
    fn non_kalmanson_is_rejected() {
        assert!(matches!(
            dq().kalmanson_decompose(&ring(&[0, 2, 1, 3])),
            Err(Error::NotKalmanson(_))
        ));
    }

    #[test]
    fn rings_with_equal_decompositions() {
        // DQ is Kalmanson for two ring classes; positive weights agree
        let a = dq().kalmanson_decompose(&ring(&[0, 1, 2, 3])).unwrap();
        let b = dq().kalmanson_decompose(&ring(&[0, 1, 3, 2])).unwrap();
        assert_eq!(a.positive(), b.positive());
    }
}
