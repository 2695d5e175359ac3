use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::kernel::kernel_rational;
use super::rational::{h2_pairing, RationalFunction};
use crate::error::{Error, Result};
use crate::inner::{BlaschkeProduct, InnerFunction};
use crate::numerics::{circle_mean_pow, Polynomial};
use crate::C64;

/// Singular values below this fraction of the largest count as zero when
/// solving for the vanishing-order subspace.
const NULL_SPACE_RTOL: f64 = 1e-10;

/// Orthonormal basis of `K_B = H² ⊖ B H²` for a finite Blaschke product.
#[derive(Clone, Debug)]
pub struct ModelSpaceBasis {
    blaschke: BlaschkeProduct,
    basis: Vec<RationalFunction>,
    /// Taylor coefficients of each basis element, all of one length.
    taylor: Vec<Vec<C64>>,
    gram: DMatrix<C64>,
}

/// `e_k = sqrt(1 - |a_k|²)/(1 - conj(a_k) z) · Π_{j<k} b_{a_j}` over the zero
/// sequence of `B` (Takenaka–Malmquist).
pub fn tm_basis(b: &BlaschkeProduct) -> Result<ModelSpaceBasis> {
    let zeros = b.zero_sequence();
    if zeros.is_empty() {
        return Err(Error::Invalid("the Blaschke product has no zeros".into()));
    }
    let one = C64::new(1.0, 0.0);
    let decay = b.max_zero_modulus();
    let mut num_prefix = Polynomial::constant(one);
    let mut den_prefix = Polynomial::constant(one);
    let mut basis = Vec::with_capacity(zeros.len());
    for &a in &zeros {
        let num = num_prefix.scale(C64::new((1.0 - a.norm_sqr()).sqrt(), 0.0));
        let den = &den_prefix * &Polynomial::new(vec![one, -a.conj()]);
        basis.push(RationalFunction::new(num, den)?);
        let factor = BlaschkeProduct::from_points(&[a])?;
        let (n, d) = factor.rational_parts();
        num_prefix = &num_prefix * &n;
        den_prefix = &den_prefix * &d;
    }

    let mut taylor = basis
        .iter()
        .map(|e| e.taylor(decay))
        .collect::<Result<Vec<_>>>()?;
    let len = taylor.iter().map(Vec::len).max().unwrap_or(0);
    for t in &mut taylor {
        t.resize(len, C64::new(0.0, 0.0));
    }
    let m = basis.len();
    let gram = DMatrix::from_fn(m, m, |i, j| h2_pairing(&taylor[i], &taylor[j]));
    Ok(ModelSpaceBasis {
        blaschke: b.clone(),
        basis,
        taylor,
        gram,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproduceCheck {
    pub pairing_value: C64,
    pub point_value: C64,
    pub abs_error: f64,
}

impl ModelSpaceBasis {
    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.blaschke
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[RationalFunction] {
        &self.basis
    }

    pub fn element_taylor(&self, k: usize) -> &[C64] {
        &self.taylor[k]
    }

    pub fn gram(&self) -> &DMatrix<C64> {
        &self.gram
    }

    /// Largest entry of `G - I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let m = self.dim();
        (&self.gram - DMatrix::<C64>::identity(m, m))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `max_{k, l} |⟨e_k, B z^l⟩|` for `l = 0..=2m`.
    pub fn membership_defect(&self) -> Result<f64> {
        let (num, den) = self.blaschke.rational_parts();
        let b_taylor = RationalFunction::new(num, den)?.taylor(self.blaschke.max_zero_modulus())?;
        let mut worst: f64 = 0.0;
        for shift in 0..=2 * self.dim() {
            let mut shifted = vec![C64::new(0.0, 0.0); shift];
            shifted.extend_from_slice(&b_taylor);
            for t in &self.taylor {
                worst = worst.max(h2_pairing(t, &shifted).norm());
            }
        }
        Ok(worst)
    }

    fn check_len(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `Σ x_k e_k(z)`.
    pub fn eval(&self, x: &[C64], z: C64) -> Result<C64> {
        self.check_len(x)?;
        Ok(x.iter().zip(&self.basis).map(|(c, e)| c * e.eval(z)).sum())
    }

    /// Taylor coefficients of `Σ x_k e_k`.
    pub fn taylor_of(&self, x: &[C64]) -> Result<Vec<C64>> {
        self.check_len(x)?;
        let mut out = vec![C64::new(0.0, 0.0); self.taylor[0].len()];
        for (c, t) in x.iter().zip(&self.taylor) {
            for (o, v) in out.iter_mut().zip(t) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// `⟨x, y⟩ = y* G x` in basis coordinates.
    pub fn inner(&self, x: &[C64], y: &[C64]) -> Result<C64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let gx = &self.gram * DVector::from_column_slice(x);
        Ok(DVector::from_column_slice(y).dotc(&gx))
    }

    pub fn norm(&self, x: &[C64]) -> Result<f64> {
        Ok(self.inner(x, x)?.re.max(0.0).sqrt())
    }

    /// Compares `⟨f, k_w⟩`, with the kernel expanded from its closed form, to
    /// `f(w)`.
    pub fn reproduce_check(&self, x: &[C64], w: C64) -> Result<ReproduceCheck> {
        let theta = InnerFunction::blaschke(self.blaschke.clone())?;
        let kernel = kernel_rational(&theta, w)?;
        let k_taylor = kernel.taylor(self.blaschke.max_zero_modulus().max(w.norm()))?;
        let pairing_value = h2_pairing(&self.taylor_of(x)?, &k_taylor);
        let point_value = self.eval(x, w)?;
        Ok(ReproduceCheck {
            pairing_value,
            point_value,
            abs_error: (pairing_value - point_value).norm(),
        })
    }

    /// `k_w(z)` from the basis expansion `Σ e_k(z) conj(e_k(w))`.
    pub fn kernel_from_basis(&self, w: C64, z: C64) -> C64 {
        self.basis
            .iter()
            .map(|e| e.eval(z) * e.eval(w).conj())
            .sum()
    }

    /// Coordinates of `k_w` in the basis.
    pub fn kernel_coordinates(&self, w: C64) -> Vec<C64> {
        self.basis.iter().map(|e| e.eval(w).conj()).collect()
    }

    /// Orthogonal projection onto the elements vanishing to order `n` at the
    /// origin.
    pub fn pn_project(&self, x: &[C64], n: usize) -> Result<Vec<C64>> {
        self.check_len(x)?;
        if n == 0 {
            return Ok(x.to_vec());
        }
        let m = self.dim();
        // constraint rows j < n: Σ_k x_k (e_k)_j = 0; padded square for a full V
        let mut a = DMatrix::<C64>::zeros(m.max(n), m);
        for j in 0..n {
            for k in 0..m {
                a[(j, k)] = self.taylor[k][j];
            }
        }
        let svd = a.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let largest = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let null: Vec<usize> = (0..m)
            .filter(|&i| svd.singular_values[i] <= NULL_SPACE_RTOL * largest.max(1.0))
            .collect();
        if null.is_empty() {
            return Ok(vec![C64::new(0.0, 0.0); m]);
        }
        let basis = DMatrix::from_fn(m, null.len(), |r, c| v_t[(null[c], r)].conj());
        // P = N (N* G N)^{-1} N* G
        let gx = &self.gram * DVector::from_column_slice(x);
        let rhs = basis.adjoint() * gx;
        let small = basis.adjoint() * &self.gram * &basis;
        let coeffs = small
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Invalid("singular Gram block in projection".into()))?;
        Ok((basis * coeffs).iter().copied().collect())
    }

    /// `K^p` norm `(∫|f|^p dσ₁)^{1/p}` on the unit circle.
    pub fn kp_norm(&self, x: &[C64], p: f64) -> Result<f64> {
        self.check_len(x)?;
        if !(p > 0.0) {
            return Err(Error::Invalid(format!("exponent {p} must be positive")));
        }
        let f = |z: C64| -> C64 { x.iter().zip(&self.basis).map(|(c, e)| c * e.eval(z)).sum() };
        let (mean, _) = circle_mean_pow(f, p, 1.0, 1e-13);
        Ok(mean.powf(1.0 / p))
    }
}
