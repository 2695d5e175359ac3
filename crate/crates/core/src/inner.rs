//! Inner functions: finite Blaschke products, atomic singular inner
//! functions, and their products.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Holomorphic, Polynomial};
use crate::C64;

/// Points closer than this to an atom are rejected by evaluation.
pub const ATOM_TOL: f64 = 1e-12;
const UNIMODULAR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeZero {
    pub point: C64,
    pub multiplicity: u32,
}

/// `γ · Π_j b_{a_j}(z)^{m_j}` with `b_a(z) = (|a|/a)(a - z)/(1 - conj(a) z)`,
/// and `b_0(z) = z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<BlaschkeZero>,
    rotation: C64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<BlaschkeZero>, rotation: C64) -> Result<Self> {
        if ((rotation.norm() - 1.0).abs()) > UNIMODULAR_TOL {
            return Err(Error::Invalid(format!(
                "rotation factor {rotation} is not unimodular"
            )));
        }
        for (j, z) in zeros.iter().enumerate() {
            if !(z.point.norm() < 1.0) {
                return Err(Error::Invalid(format!(
                    "zero {j} at {} is not inside the unit disk",
                    z.point
                )));
            }
            if z.multiplicity == 0 {
                return Err(Error::Invalid(format!("zero {j} has multiplicity 0")));
            }
        }
        Ok(Self { zeros, rotation })
    }

    /// Simple zeros at the given points, unit rotation.
    pub fn from_points(points: &[C64]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&point| BlaschkeZero {
                    point,
                    multiplicity: 1,
                })
                .collect(),
            C64::new(1.0, 0.0),
        )
    }

    /// `z^m`.
    pub fn monomial(m: u32) -> Self {
        Self {
            zeros: vec![BlaschkeZero {
                point: C64::new(0.0, 0.0),
                multiplicity: m,
            }],
            rotation: C64::new(1.0, 0.0),
        }
    }

    pub fn zeros(&self) -> &[BlaschkeZero] {
        &self.zeros
    }

    pub fn rotation(&self) -> C64 {
        self.rotation
    }

    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity as usize).sum()
    }

    /// Zeros repeated according to multiplicity.
    pub fn zero_sequence(&self) -> Vec<C64> {
        self.zeros
            .iter()
            .flat_map(|z| std::iter::repeat_n(z.point, z.multiplicity as usize))
            .collect()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.point.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros.iter().fold(self.rotation, |acc, zero| {
            acc * factor(zero.point, z).powu(zero.multiplicity)
        })
    }

    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut value = self.rotation;
        let mut deriv = C64::new(0.0, 0.0);
        for zero in &self.zeros {
            let (b, db) = factor_with_derivative(zero.point, z);
            let m = zero.multiplicity;
            let bm = b.powu(m);
            let dbm = db * b.powu(m - 1) * m as f64;
            deriv = deriv * bm + value * dbm;
            value *= bm;
        }
        (value, deriv)
    }

    /// `log|B(z)|^2` given the accurate gap `1 - |z|^2`.
    pub fn log_modulus_sq(&self, z: C64, gap: f64) -> f64 {
        self.zeros
            .iter()
            .map(|zero| {
                let a = zero.point;
                // 1 - |b_a(z)|^2 = (1 - |a|^2)(1 - |z|^2)/|1 - conj(a) z|^2
                let q = if a.norm_sqr() == 0.0 {
                    gap
                } else {
                    (1.0 - a.norm_sqr()) * gap / (C64::new(1.0, 0.0) - a.conj() * z).norm_sqr()
                };
                zero.multiplicity as f64 * (-q.min(1.0)).ln_1p()
            })
            .sum()
    }

    /// Numerator `N` and denominator `D` with `B = N / D`; `D(0) = 1`.
    pub fn rational_parts(&self) -> (Polynomial, Polynomial) {
        let one = C64::new(1.0, 0.0);
        let mut num = Polynomial::constant(self.rotation);
        let mut den = Polynomial::constant(one);
        for zero in &self.zeros {
            let a = zero.point;
            let (n, d) = if a.norm_sqr() == 0.0 {
                (Polynomial::new(vec![C64::new(0.0, 0.0), one]), Polynomial::constant(one))
            } else {
                let unit = a.norm() / a;
                (
                    Polynomial::new(vec![unit * a, -unit]),
                    Polynomial::new(vec![one, -a.conj()]),
                )
            };
            for _ in 0..zero.multiplicity {
                num = &num * &n;
                den = &den * &d;
            }
        }
        (num, den)
    }
}

fn factor(a: C64, z: C64) -> C64 {
    if a.norm_sqr() == 0.0 {
        z
    } else {
        (a.norm() / a) * (a - z) / (C64::new(1.0, 0.0) - a.conj() * z)
    }
}

fn factor_with_derivative(a: C64, z: C64) -> (C64, C64) {
    if a.norm_sqr() == 0.0 {
        return (z, C64::new(1.0, 0.0));
    }
    let unit = a.norm() / a;
    let denom = C64::new(1.0, 0.0) - a.conj() * z;
    let value = unit * (a - z) / denom;
    // d/dz (a - z)/(1 - ā z) = (|a|^2 - 1)/(1 - ā z)^2
    let deriv = unit * (a.norm_sqr() - 1.0) / (denom * denom);
    (value, deriv)
}

impl Holomorphic for BlaschkeProduct {
    fn value(&self, z: C64) -> C64 {
        self.eval(z)
    }

    fn derivative(&self, z: C64) -> C64 {
        self.eval_with_derivative(z).1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: C64,
    pub mass: f64,
}

/// `exp(-Σ_j s_j (ζ_j + z)/(ζ_j - z))` for point masses `s_j` at `ζ_j ∈ 𝕋`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularInner {
    atoms: Vec<Atom>,
}

impl SingularInner {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Invalid("singular factor needs at least one atom".into()));
        }
        for (j, atom) in atoms.iter().enumerate() {
            if (atom.point.norm() - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::Invalid(format!(
                    "atom {j} at {} is not on the unit circle",
                    atom.point
                )));
            }
            if !(atom.mass > 0.0 && atom.mass.is_finite()) {
                return Err(Error::Invalid(format!("atom {j} has non-positive mass")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn atom(point: C64, mass: f64) -> Result<Self> {
        Self::new(vec![Atom { point, mass }])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    fn check(&self, z: C64) -> Result<()> {
        if self.atoms.iter().any(|a| (a.point - z).norm() < ATOM_TOL) {
            return Err(Error::AtomSingularity(z));
        }
        Ok(())
    }

    fn exponent(&self, z: C64) -> C64 {
        self.atoms
            .iter()
            .map(|a| -a.mass * (a.point + z) / (a.point - z))
            .sum()
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        self.check(z)?;
        Ok(self.exponent(z).exp())
    }

    pub fn eval_with_derivative(&self, z: C64) -> Result<(C64, C64)> {
        self.check(z)?;
        let value = self.exponent(z).exp();
        // d/dz [-(ζ + z)/(ζ - z)] = -2ζ/(ζ - z)^2
        let dexp: C64 = self
            .atoms
            .iter()
            .map(|a| {
                let d = a.point - z;
                -2.0 * a.mass * a.point / (d * d)
            })
            .sum();
        Ok((value, value * dexp))
    }

    /// `log|S(z)|^2 = -2 Σ s_j (1 - |z|^2)/|ζ_j - z|^2`.
    pub fn log_modulus_sq(&self, z: C64, gap: f64) -> f64 {
        -2.0 * self
            .atoms
            .iter()
            .map(|a| a.mass * gap / (a.point - z).norm_sqr())
            .sum::<f64>()
    }
}

/// Product of an optional Blaschke part and an optional singular part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerFunction {
    blaschke: Option<BlaschkeProduct>,
    singular: Option<SingularInner>,
}

impl InnerFunction {
    /// Rejects the unimodular constants (no zeros and no atoms).
    pub fn new(blaschke: Option<BlaschkeProduct>, singular: Option<SingularInner>) -> Result<Self> {
        let degree = blaschke.as_ref().map_or(0, |b| b.degree());
        if degree == 0 && singular.is_none() {
            return Err(Error::Invalid(
                "inner function must have a zero or an atom; unimodular constants are not inner"
                    .into(),
            ));
        }
        Ok(Self { blaschke, singular })
    }

    pub fn blaschke(b: BlaschkeProduct) -> Result<Self> {
        Self::new(Some(b), None)
    }

    /// `Θ(z) = z^n`.
    pub fn power(n: u32) -> Result<Self> {
        Self::blaschke(BlaschkeProduct::monomial(n))
    }

    /// Single atom of mass `s` at `ζ`.
    pub fn atom(point: C64, mass: f64) -> Result<Self> {
        Self::new(None, Some(SingularInner::atom(point, mass)?))
    }

    pub fn blaschke_part(&self) -> Option<&BlaschkeProduct> {
        self.blaschke.as_ref()
    }

    pub fn singular_part(&self) -> Option<&SingularInner> {
        self.singular.as_ref()
    }

    /// The finite Blaschke product, when there is no singular factor.
    pub fn as_finite_blaschke(&self) -> Option<&BlaschkeProduct> {
        match (&self.blaschke, &self.singular) {
            (Some(b), None) => Some(b),
            _ => None,
        }
    }

    fn check_domain(z: C64) -> Result<()> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisk(z));
        }
        Ok(())
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Self::check_domain(z)?;
        let mut value = C64::new(1.0, 0.0);
        if let Some(s) = &self.singular {
            value *= s.eval(z)?;
        }
        if let Some(b) = &self.blaschke {
            value *= b.eval(z);
        }
        Ok(value)
    }

    pub fn eval_with_derivative(&self, z: C64) -> Result<(C64, C64)> {
        Self::check_domain(z)?;
        let mut value = C64::new(1.0, 0.0);
        let mut deriv = C64::new(0.0, 0.0);
        if let Some(s) = &self.singular {
            (value, deriv) = s.eval_with_derivative(z)?;
        }
        if let Some(b) = &self.blaschke {
            let (bv, bd) = b.eval_with_derivative(z);
            deriv = deriv * bv + value * bd;
            value *= bv;
        }
        Ok((value, deriv))
    }

    pub fn derivative(&self, z: C64) -> Result<C64> {
        Ok(self.eval_with_derivative(z)?.1)
    }

    /// `log|Θ(z)|^2` from the gap `1 - |z|^2`, accurate near the circle.
    pub fn log_modulus_sq(&self, z: C64, gap: f64) -> Result<f64> {
        Self::check_domain(z)?;
        let mut total = 0.0;
        if let Some(s) = &self.singular {
            s.check(z)?;
            total += s.log_modulus_sq(z, gap);
        }
        if let Some(b) = &self.blaschke {
            total += b.log_modulus_sq(z, gap);
        }
        Ok(total)
    }

    /// `1 - |Θ(z)|` without cancellation.
    pub fn one_minus_modulus(&self, z: C64, gap: f64) -> Result<f64> {
        Ok(-(0.5 * self.log_modulus_sq(z, gap)?).exp_m1())
    }

    /// `1 - |Θ(z)|^2` without cancellation.
    pub fn one_minus_modulus_sq(&self, z: C64, gap: f64) -> Result<f64> {
        Ok(-self.log_modulus_sq(z, gap)?.exp_m1())
    }

    /// Radial approach to the circle along `n` equispaced directions kept
    /// at least `1e-3` away from every atom.
    pub fn boundary_diagnostic(&self, n: usize) -> BoundaryDiagnostic {
        let atoms: Vec<C64> = self
            .singular
            .as_ref()
            .map(|s| s.atoms.iter().map(|a| a.point).collect())
            .unwrap_or_default();
        let directions: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / n as f64))
            .filter(|z| atoms.iter().all(|a| (a - z).norm() >= 1e-3))
            .collect();
        let radii = [0.9, 0.99, 0.999];
        let mut rows = Vec::with_capacity(radii.len());
        for r in radii {
            let floor = 1.0 - 10.0 * (1.0 - r) - 1e-6;
            let mut min_modulus = f64::INFINITY;
            let mut below = 0;
            for &zeta in &directions {
                let gap = (1.0 - r) * (1.0 + r);
                let modulus = self
                    .log_modulus_sq(zeta * r, gap)
                    .map(|l| (0.5 * l).exp())
                    .unwrap_or(0.0);
                min_modulus = min_modulus.min(modulus);
                if modulus < floor {
                    below += 1;
                }
            }
            rows.push(RadialRow {
                radius: r,
                min_modulus,
                floor,
                below_floor: below,
            });
        }
        BoundaryDiagnostic {
            directions: directions.len(),
            rows,
        }
    }
}

/// Proxy so an inner function can be fed to routines that sample
/// holomorphic functions inside the disk; evaluation errors become NaN.
impl Holomorphic for InnerFunction {
    fn value(&self, z: C64) -> C64 {
        self.eval(z).unwrap_or(C64::new(f64::NAN, f64::NAN))
    }

    fn derivative(&self, z: C64) -> C64 {
        InnerFunction::derivative(self, z).unwrap_or(C64::new(f64::NAN, f64::NAN))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialRow {
    pub radius: f64,
    pub min_modulus: f64,
    pub floor: f64,
    pub below_floor: usize,
}

/// Observed radial boundary behavior; informational only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDiagnostic {
    pub directions: usize,
    pub rows: Vec<RadialRow>,
}
