use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::C64;

/// Tolerance on `|ζ| = 1` accepted by [`MultiPolynomial::slice`].
pub const UNIT_VECTOR_TOL: f64 = 1e-10;

/// Polynomial in `d` complex variables, `Σ c_α z^α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TermList", into = "TermList")]
pub struct MultiPolynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, C64>,
}

impl MultiPolynomial {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        Ok(Self {
            dim,
            terms: BTreeMap::new(),
        })
    }

    /// Builds from `(α, c_α)` pairs; repeated indices accumulate.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C64)>,
    {
        let mut p = Self::zero(dim)?;
        for (alpha, c) in terms {
            p.add_term(alpha, c)?;
        }
        Ok(p)
    }

    /// One-variable polynomial viewed as a function on `B_1`.
    pub fn from_univariate(p: &Polynomial) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() != 0.0)
            .map(|(k, &c)| (vec![k as u32], c))
            .collect();
        Self { dim: 1, terms }
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, c: C64) -> Result<()> {
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: alpha.len(),
            });
        }
        let value = self.terms.get(&alpha).copied().unwrap_or_default() + c;
        if value.norm_sqr() == 0.0 {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, value);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], C64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|a| a.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> C64 {
        self.terms
            .get(&vec![0; self.dim])
            .copied()
            .unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|a| a.iter().all(|&e| e == 0))
    }

    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(alpha, &c)| c * monomial(z, alpha))
            .sum()
    }

    /// Slice function `λ ↦ f(λζ)` for a unit vector `ζ`.
    ///
    /// The coefficient of `λ^m` is `Σ_{|α|=m} c_α ζ^α`.
    pub fn slice(&self, zeta: &[C64]) -> Result<Polynomial> {
        if zeta.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: zeta.len(),
            });
        }
        let norm = zeta.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_VECTOR_TOL {
            return Err(Error::NotUnitVector(norm));
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); self.total_degree() + 1];
        for (alpha, &c) in &self.terms {
            let m: usize = alpha.iter().map(|&e| e as usize).sum();
            coeffs[m] += c * monomial(zeta, alpha);
        }
        Ok(Polynomial::new(coeffs))
    }
}

/// Serialized form: `{"dim": d, "terms": [[α, c], ...]}`.
#[derive(Serialize, Deserialize)]
struct TermList {
    dim: usize,
    terms: Vec<(Vec<u32>, C64)>,
}

impl From<MultiPolynomial> for TermList {
    fn from(p: MultiPolynomial) -> Self {
        Self {
            dim: p.dim,
            terms: p.terms.into_iter().collect(),
        }
    }
}

impl TryFrom<TermList> for MultiPolynomial {
    type Error = Error;

    fn try_from(t: TermList) -> Result<Self> {
        Self::from_terms(t.dim, t.terms)
    }
}

fn monomial(z: &[C64], alpha: &[u32]) -> C64 {
    z.iter()
        .zip(alpha)
        .fold(C64::new(1.0, 0.0), |acc, (&zi, &e)| acc * zi.powu(e))
}
