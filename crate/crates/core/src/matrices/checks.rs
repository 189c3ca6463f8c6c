use std::fmt;

use super::DissimilarityMap;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::taxa::CircularOrdering;

/// Default cap on `n` for exhaustive ring searches.
pub const DEFAULT_SEARCH_LIMIT: usize = 10;

/// Four taxa and their three pairwise sums
/// `[D(a,b)+D(c,d), D(a,c)+D(b,d), D(a,d)+D(b,c)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuartetWitness {
    pub taxa: [usize; 4],
    pub sums: [Rational; 3],
}

impl QuartetWitness {
    fn of(d: &DissimilarityMap, taxa: [usize; 4]) -> Self {
        let [a, b, c, e] = taxa;
        Self {
            taxa,
            sums: [
                d.get(a, b) + d.get(c, e),
                d.get(a, c) + d.get(b, e),
                d.get(a, e) + d.get(b, c),
            ],
        }
    }

    fn max_attained_twice(&self) -> bool {
        let [s0, s1, s2] = &self.sums;
        let m = s0.max(s1).max(s2);
        [s0, s1, s2].iter().filter(|s| **s == m).count() >= 2
    }

    /// Crossing-sum inequality for taxa read in ring order.
    fn kalmanson_holds(&self) -> bool {
        let [adjacent, crossing, wrap] = &self.sums;
        adjacent.max(wrap) <= crossing
    }
}

impl fmt::Display for QuartetWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.taxa;
        write!(
            f,
            "({a},{b},{c},{d}) sums {} {} {}",
            format_rational(&self.sums[0]),
            format_rational(&self.sums[1]),
            format_rational(&self.sums[2])
        )
    }
}

impl DissimilarityMap {
    /// Three-point condition. On failure returns `(x, y, z)` with
    /// `D(x,y) > max{D(x,z), D(y,z)}`, the first such triple in lexicographic
    /// order of the underlying 3-subset.
    pub fn is_ultrametric(&self) -> std::result::Result<(), [usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                        if self.get(x, y) > self.get(x, z).max(self.get(y, z)) {
                            return Err([x, y, z]);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Four-point condition on every 4-subset.
    pub fn four_point_check(&self) -> std::result::Result<(), QuartetWitness> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let w = QuartetWitness::of(self, [a, b, c, d]);
                        if !w.max_attained_twice() {
                            return Err(w);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Kalmanson inequality for every quadruple `i<j<k<l` of ring positions.
    /// The witness lists the taxa in ring order.
    pub fn kalmanson_check(
        &self,
        ring: &CircularOrdering,
    ) -> std::result::Result<(), QuartetWitness> {
        assert_eq!(ring.len(), self.len(), "ring must cover the taxa");
        let x = ring.as_slice();
        let n = x.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let w = QuartetWitness::of(self, [x[i], x[j], x[k], x[l]]);
                        if !w.kalmanson_holds() {
                            return Err(w);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Like [`Self::kalmanson_check`] but as a crate error carrying labels.
    pub fn require_kalmanson(&self, ring: &CircularOrdering) -> Result<()> {
        if ring.len() != self.len() {
            return Err(Error::TaxaMismatch);
        }
        self.kalmanson_check(ring)
            .map_err(|w| Error::NotKalmanson(self.taxa().labels_of(w.taxa)))
    }

    /// Lexicographically least ring starting at taxon 0 for which the map is
    /// Kalmanson, found by depth-first search with prefix pruning.
    pub fn find_kalmanson_ordering(&self, limit: usize) -> Result<Option<CircularOrdering>> {
        let n = self.len();
        if n > limit {
            return Err(Error::SearchRefused { n, limit });
        }
        if n <= 3 {
            return Ok(Some(CircularOrdering::identity(n)));
        }
        let mut seq = vec![0];
        let mut used = vec![false; n];
        used[0] = true;
        Ok(self.extend_ring(&mut seq, &mut used).then(|| {
            CircularOrdering::new(seq).expect("search builds permutations")
        }))
    }

    fn extend_ring(&self, seq: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = used.len();
        if seq.len() == n {
            return true;
        }
        for next in 0..n {
            if used[next] {
                continue;
            }
            seq.push(next);
            if self.new_quartets_hold(seq) {
                used[next] = true;
                if self.extend_ring(seq, used) {
                    return true;
                }
                used[next] = false;
            }
            seq.pop();
        }
        false
    }

    /// Checks the quadruples whose last position is the newest element.
    fn new_quartets_hold(&self, seq: &[usize]) -> bool {
        let l = seq.len() - 1;
        for i in 0..l {
            for j in i + 1..l {
                for k in j + 1..l {
                    let w = QuartetWitness::of(self, [seq[i], seq[j], seq[k], seq[l]]);
                    if !w.kalmanson_holds() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
