//! Dissimilarity maps and symmetric matrices over a taxon set, with the
//! metric-level predicates and the Gromov product.

mod checks;
mod io;
mod robinson;

use std::fmt;

use num_traits::Zero;

pub use checks::{QuartetWitness, DEFAULT_SEARCH_LIMIT};
pub use robinson::StrongWitness;

use crate::error::{Error, Result};
use crate::rational::{format_rational, half, is_negative, Rational};
use crate::taxa::{Rooting, TaxonSet};

/// Symmetric, zero-diagonal, non-negative matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissimilarityMap {
    taxa: TaxonSet,
    values: Vec<Rational>,
}

impl DissimilarityMap {
    /// Validates a row-major `n × n` matrix. Errors name 1-based cells.
    pub fn new(taxa: TaxonSet, values: Vec<Rational>) -> Result<Self> {
        let n = taxa.len();
        if values.len() != n * n {
            return Err(Error::Internal(format!(
                "expected {} entries, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = &values[i * n + j];
                if i == j && !v.is_zero() {
                    return Err(Error::Entry {
                        row: i + 1,
                        col: j + 1,
                        message: format!("nonzero diagonal entry {}", format_rational(v)),
                    });
                }
                if j > i && *v != values[j * n + i] {
                    return Err(Error::Asymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if is_negative(v) {
                    return Err(Error::Entry {
                        row: i + 1,
                        col: j + 1,
                        message: format!("negative entry {}", format_rational(v)),
                    });
                }
            }
        }
        Ok(Self { taxa, values })
    }

    /// Builds a map from `f(i, j)` evaluated on pairs `i < j`.
    pub fn from_fn(taxa: TaxonSet, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let n = taxa.len();
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self::new(taxa, values)
    }

    pub fn zero(taxa: TaxonSet) -> Self {
        let n = taxa.len();
        Self {
            taxa,
            values: vec![Rational::zero(); n * n],
        }
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.values[i * self.len() + j]
    }

    /// The Gromov product based at the rooting's base taxon:
    /// `R(x,y) = (D(x,y) − D(x,r) − D(y,r)) / 2`, diagonal included.
    pub fn gromov_product(&self, rooting: &Rooting) -> Result<SymmetricMatrix> {
        if rooting.full() != &self.taxa {
            return Err(Error::TaxaMismatch);
        }
        let r = rooting.base();
        let m = self.len() - 1;
        let mut values = Vec::with_capacity(m * m);
        for a in 0..m {
            let x = rooting.to_full(a);
            for b in 0..m {
                let y = rooting.to_full(b);
                values.push(half(self.get(x, y) - self.get(x, r) - self.get(y, r)));
            }
        }
        Ok(SymmetricMatrix {
            taxa: rooting.reduced().clone(),
            values,
        })
    }

    /// Convenience form of [`Self::gromov_product`] taking the base label.
    pub fn gromov_at(&self, base: &str) -> Result<(SymmetricMatrix, Rooting)> {
        let rooting = Rooting::by_label(&self.taxa, base)?;
        Ok((self.gromov_product(&rooting)?, rooting))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (taxa, values) = io::parse_square(text)?;
        Self::new(taxa, values)
    }
}

impl fmt::Display for DissimilarityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        io::write_square(f, &self.taxa, &self.values)
    }
}

/// Symmetric matrix of exact rationals with a meaningful diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    taxa: TaxonSet,
    values: Vec<Rational>,
}

impl SymmetricMatrix {
    pub fn new(taxa: TaxonSet, values: Vec<Rational>) -> Result<Self> {
        let n = taxa.len();
        if values.len() != n * n {
            return Err(Error::Internal(format!(
                "expected {} entries, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if values[i * n + j] != values[j * n + i] {
                    return Err(Error::Asymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self { taxa, values })
    }

    /// Builds a matrix from `f(i, j)` evaluated on pairs `i ≤ j`.
    pub fn from_fn(taxa: TaxonSet, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let n = taxa.len();
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self { taxa, values }
    }

    pub fn taxa(&self) -> &TaxonSet {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.values[i * self.len() + j]
    }

    /// Whether every entry, diagonal included, is `≤ 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.values.iter().all(|v| *v <= Rational::zero())
    }

    /// The inverse Gromov transform `D(x,y) = 2R(x,y) − R(x,x) − R(y,y)`,
    /// `D(x,r) = −R(x,x)`, with `r` inserted where the rooting says.
    pub fn inverse_gromov(&self, rooting: &Rooting) -> Result<DissimilarityMap> {
        if rooting.reduced() != &self.taxa {
            return Err(Error::TaxaMismatch);
        }
        let full = rooting.full();
        let n = full.len();
        let r = rooting.base();
        let mut values = vec![Rational::zero(); n * n];
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let v = match (rooting.to_reduced(x), rooting.to_reduced(y)) {
                    (Some(a), Some(b)) => {
                        self.get(a, b) * Rational::from_integer(2) - self.get(a, a) - self.get(b, b)
                    }
                    (Some(a), None) | (None, Some(a)) => -self.get(a, a),
                    (None, None) => unreachable!("x != y"),
                };
                if is_negative(&v) {
                    let (p, q) = if x < y { (x, y) } else { (y, x) };
                    debug_assert!(p != r || q != r);
                    return Err(Error::NotInPsiDomain(
                        full.label(p).to_string(),
                        full.label(q).to_string(),
                    ));
                }
                values[x * n + y] = v;
            }
        }
        DissimilarityMap::new(full.clone(), values)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (taxa, values) = io::parse_square(text)?;
        Self::new(taxa, values)
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        io::write_square(f, &self.taxa, &self.values)
    }
}
