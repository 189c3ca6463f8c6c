//! Robinsonian predicates on symmetric matrices. Chains `w ⪯ x ⪯ y ⪯ z`
//! are weakly increasing, so repeated elements (and the diagonal) take part.

use super::SymmetricMatrix;
use crate::taxa::LinearOrdering;

/// Why a matrix fails to be strong Robinsonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongWitness {
    /// `max{R(x,y), R(y,z)} > R(x,z)` for `x ⪯ y ⪯ z`.
    NotRobinsonian([usize; 3]),
    /// `R(x,y) = R(w,y)` but `R(x,z) ≠ R(w,z)`, as `[w, x, y, z]`.
    FirstImplication([usize; 4]),
    /// `R(x,y) = R(x,z)` but `R(w,y) ≠ R(w,z)`, as `[w, x, y, z]`.
    SecondImplication([usize; 4]),
}

impl SymmetricMatrix {
    /// `max{R(x,y), R(y,z)} ≤ R(x,z)` for all `x ⪯ y ⪯ z`; the witness is
    /// the first violating chain in lexicographic order of positions.
    pub fn is_robinsonian(&self, ord: &LinearOrdering) -> Result<(), [usize; 3]> {
        assert_eq!(ord.len(), self.len(), "ordering must cover the taxa");
        let s = ord.as_slice();
        let n = s.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let (x, y, z) = (s[a], s[b], s[c]);
                    if self.get(x, y).max(self.get(y, z)) > self.get(x, z) {
                        return Err([x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_strong_robinsonian(&self, ord: &LinearOrdering) -> Result<(), StrongWitness> {
        self.is_robinsonian(ord)
            .map_err(StrongWitness::NotRobinsonian)?;
        let s = ord.as_slice();
        self.for_each_chain(s, |w, x, y, z| {
            if self.get(x, y) == self.get(w, y) && self.get(x, z) != self.get(w, z) {
                return Err(StrongWitness::FirstImplication([w, x, y, z]));
            }
            if self.get(x, y) == self.get(x, z) && self.get(w, y) != self.get(w, z) {
                return Err(StrongWitness::SecondImplication([w, x, y, z]));
            }
            Ok(())
        })
    }

    /// `R(x,y) + R(w,z) ≤ R(x,z) + R(w,y)` for all `w ⪯ x ⪯ y ⪯ z`.
    pub fn robinsonian_four_point(&self, ord: &LinearOrdering) -> Result<(), [usize; 4]> {
        assert_eq!(ord.len(), self.len(), "ordering must cover the taxa");
        self.for_each_chain(ord.as_slice(), |w, x, y, z| {
            if self.get(x, y) + self.get(w, z) > self.get(x, z) + self.get(w, y) {
                Err([w, x, y, z])
            } else {
                Ok(())
            }
        })
    }

    fn for_each_chain<E>(
        &self,
        s: &[usize],
        mut f: impl FnMut(usize, usize, usize, usize) -> Result<(), E>,
    ) -> Result<(), E> {
        let n = s.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        f(s[a], s[b], s[c], s[d])?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::tests::{dq, q};
    use crate::rational::Rational;
    use crate::taxa::TaxonSet;

    fn ord(seq: &[usize]) -> LinearOrdering {
        LinearOrdering::new(seq.to_vec()).unwrap()
    }

    fn matrix(table: &[&[i128]]) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(TaxonSet::numbered(table.len()), |i, j| q(table[i][j]))
    }

    /// Brute-force oracle over every ordered triple with the order test
    /// spelled out through positions.
    fn brute_robinsonian(r: &SymmetricMatrix, o: &LinearOrdering) -> bool {
        let n = r.len();
        let p = |i| o.position(i);
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    !(p(x) <= p(y) && p(y) <= p(z)) || r.get(x, y).max(r.get(y, z)) <= r.get(x, z)
                })
            })
        })
    }

    #[test]
    fn quartet_gromov_is_robinsonian() {
        let (r, _) = dq().gromov_at("4").unwrap();
        assert!(r.is_robinsonian(&ord(&[0, 1, 2])).is_ok());
        assert!(brute_robinsonian(&r, &ord(&[0, 1, 2])));
        // (2,1,3) also works: R(1,2) is the smallest off-diagonal value
        assert!(brute_robinsonian(&r, &ord(&[1, 0, 2])));
        assert!(r.is_robinsonian(&ord(&[1, 0, 2])).is_ok());
        // but moving 3 inside does not
        assert!(!brute_robinsonian(&r, &ord(&[0, 2, 1])));
        assert_eq!(r.is_robinsonian(&ord(&[0, 2, 1])), Err([0, 2, 1]));
        assert!(r.is_strong_robinsonian(&ord(&[0, 1, 2])).is_ok());
        assert!(r.robinsonian_four_point(&ord(&[0, 1, 2])).is_ok());
    }

    #[test]
    fn single_taxon_is_vacuous() {
        let r = matrix(&[&[5]]);
        assert!(r.is_robinsonian(&ord(&[0])).is_ok());
        assert!(r.is_strong_robinsonian(&ord(&[0])).is_ok());
        assert!(r.robinsonian_four_point(&ord(&[0])).is_ok());
    }

    #[test]
    fn constant_off_diagonal_is_strong() {
        let r = SymmetricMatrix::from_fn(TaxonSet::numbered(4), |i, j| {
            if i == j {
                q(-2)
            } else {
                q(-1)
            }
        });
        assert!(r.is_strong_robinsonian(&LinearOrdering::identity(4)).is_ok());
    }

    /// Searches 4×4 matrices with entries in {-2,-1,0} on the off-diagonal and
    /// -3 on the diagonal for a Robinsonian matrix failing the second
    /// implication; the first hit (in enumeration order) is frozen below.
    #[test]
    fn strong_counterexample_found_by_search() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut first = None;
        'search: for code in 0..3i128.pow(6) {
            let mut vals = [0i128; 6];
            let mut c = code;
            for v in vals.iter_mut() {
                *v = c % 3 - 2;
                c /= 3;
            }
            let r = SymmetricMatrix::from_fn(TaxonSet::numbered(4), |i, j| {
                if i == j {
                    return q(-3);
                }
                let k = pairs.iter().position(|&p| p == (i, j)).unwrap();
                q(vals[k])
            });
            let o = LinearOrdering::identity(4);
            if brute_robinsonian(&r, &o) {
                if let Err(StrongWitness::SecondImplication(w)) = r.is_strong_robinsonian(&o) {
                    first = Some((vals, w));
                    break 'search;
                }
            }
        }
        let (vals, w) = first.expect("a counterexample exists");
        // R(1,2) = R(1,3) = -2 while R(0,2) = -1 ≠ R(0,3) = 0
        assert_eq!(vals, [-2, -1, 0, -2, -2, -2]);
        assert_eq!(w, [0, 1, 2, 3]);
        let r = matrix(&[&[-3, -2, -1, 0], &[-2, -3, -2, -2], &[-1, -2, -3, -2], &[0, -2, -2, -3]]);
        assert_eq!(
            r.is_strong_robinsonian(&LinearOrdering::identity(4)),
            Err(StrongWitness::SecondImplication([0, 1, 2, 3]))
        );
    }

    #[test]
    fn non_robinsonian_reported_before_strongness() {
        let r = matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(
            r.is_strong_robinsonian(&LinearOrdering::identity(3)),
            Err(StrongWitness::NotRobinsonian(_))
        ));
    }

    #[test]
    fn four_point_violation_found_by_search() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let o = LinearOrdering::identity(4);
        let mut first = None;
        'search: for code in 0..4i128.pow(6) {
            let mut vals = [0i128; 6];
            let mut c = code;
            for v in vals.iter_mut() {
                *v = c % 4 - 3;
                c /= 4;
            }
            let r = SymmetricMatrix::from_fn(TaxonSet::numbered(4), |i, j| {
                if i == j {
                    return q(-4);
                }
                q(vals[pairs.iter().position(|&p| p == (i, j)).unwrap()])
            });
            if brute_robinsonian(&r, &o) {
                if let Err(w) = r.robinsonian_four_point(&o) {
                    first = Some((r, vals, w));
                    break 'search;
                }
            }
        }
        let (r, vals, w) = first.expect("a violation exists");
        // R(1,2) + R(0,3) = -5 exceeds R(1,3) + R(0,2) = -6
        assert_eq!(vals, [-3, -3, -2, -3, -3, -3]);
        assert_eq!(w, [0, 1, 2, 3]);
        let lhs: Rational = r.get(1, 2) + r.get(0, 3);
        assert!(lhs > r.get(1, 3) + r.get(0, 2));
    }
}
