use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Holomorphic, Polynomial};
use crate::C64;

/// Fewest Taylor coefficients ever kept.
pub const MIN_TAYLOR_TERMS: usize = 200;
/// Required bound on the discarded Taylor tail.
pub const TAYLOR_TAIL_TOL: f64 = 1e-12;
const MAX_TAYLOR_TERMS: usize = 1 << 18;

/// `num / den` with `den(0) = 1` and no zeros of `den` in the closed disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        let d0 = den.coeff(0);
        if d0.norm() == 0.0 {
            return Err(Error::Invalid("denominator vanishes at the origin".into()));
        }
        Ok(Self {
            num: num.scale(d0.inv()),
            den: den.scale(d0.inv()),
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::constant(C64::new(1.0, 0.0)),
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, dd) = self.den.eval_with_derivative(z);
        (n / d, (dn * d - n * dd) / (d * d))
    }

    /// Taylor coefficients at the origin, at least [`MIN_TAYLOR_TERMS`] of
    /// them and more until the tail is below [`TAYLOR_TAIL_TOL`].
    ///
    /// `decay` is an upper bound on the moduli of the reciprocal poles (the
    /// largest `|a_j|` for Blaschke-type denominators).
    pub fn taylor(&self, decay: f64) -> Result<Vec<C64>> {
        let den = self.den.coeffs();
        let mut c: Vec<C64> = Vec::with_capacity(MIN_TAYLOR_TERMS);
        let mut quiet = 0usize;
        let window = 32 + 8 * den.len();
        let scale = self.num.max_abs_coeff().max(f64::MIN_POSITIVE);
        for n in 0..MAX_TAYLOR_TERMS {
            let mut v = self.num.coeff(n);
            for (i, &d) in den.iter().enumerate().skip(1).take(n) {
                v -= d * c[n - i];
            }
            c.push(v);
            // geometric tail estimate from the current term
            let tail = v.norm() / (1.0 - decay).max(1e-300);
            if tail < TAYLOR_TAIL_TOL * 1e-3 * scale {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if n + 1 >= MIN_TAYLOR_TERMS && n + 1 > self.num.coeffs().len() && quiet >= window {
                return Ok(c);
            }
        }
        Err(Error::Invalid(format!(
            "Taylor series did not reach the tail bound in {MAX_TAYLOR_TERMS} terms"
        )))
    }
}

impl Holomorphic for RationalFunction {
    fn value(&self, z: C64) -> C64 {
        self.eval(z)
    }

    fn derivative(&self, z: C64) -> C64 {
        self.eval_with_derivative(z).1
    }
}

/// `⟨f, g⟩_{H²}` from Taylor coefficients.
pub fn h2_pairing(f: &[C64], g: &[C64]) -> C64 {
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum()
}
