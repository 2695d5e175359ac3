use serde::{Deserialize, Serialize};

use super::{SelfMap, SliceFamily, MapBody};
use crate::error::{Error, Result};
use crate::numerics::{
    circle_mean_pow, hardy2_norm, hardy_norm_ball, DiskQuadrature, MultiPolynomial, Polynomial,
    SphereQuadrature,
};
use crate::C64;

/// Radius of the pseudohyperbolic disk around `φ(0)` whose share of the
/// area integral is reported separately.
pub const BASE_POINT_EXCLUSION: f64 = 1e-4;
/// Radius of the sphere mean used for `‖f∘φ‖` when `d ≥ 2`.
pub const BALL_NORM_RADIUS: f64 = 0.9999;

/// Two sides of an identity and their relative discrepancy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            rel_error: (lhs - rhs).abs() / lhs.max(1e-30),
        }
    }
}

/// `‖f‖²` against `|f(0)|² + 2∫|f'(w)|² log(1/|w|) dA(w)`.
pub fn littlewood_paley_verify(f: &Polynomial, dq: &DiskQuadrature) -> IdentityCheck {
    let lhs = hardy2_norm(f).powi(2);
    let df = f.derivative();
    let area = dq.integrate(|p| df.eval(p.w).norm_sqr() * p.log_inv_modulus());
    IdentityCheck::new(lhs, f.coeff(0).norm_sqr() + 2.0 * area)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StantonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    /// Part of the area term coming from the pseudohyperbolic
    /// `1e-4`-disk around `φ(0)`.
    pub base_point_contribution: f64,
}

/// `‖f∘φ‖²` against `|f(φ(0))|² + 2∫|f'(w)|² N(w) dA(w)`, where `N` is the
/// counting function of `φ` (`d = 1`) or its slice average (`d ≥ 2`).
///
/// The area integral is taken in coordinates centered at `φ(0)`, so the
/// logarithmic singularity of `N` sits at the origin of the rule.
pub fn stanton_verify(
    f: &Polynomial,
    phi: &SelfMap,
    dq: &DiskQuadrature,
    sq: Option<&SphereQuadrature>,
) -> Result<StantonCheck> {
    let lhs = composed_norm_sq(f, phi, sq)?;
    let family = SliceFamily::new(phi, sq)?;
    let base = phi.base_point();
    let df = f.derivative();

    let mut failure = None;
    let area = dq.integrate_centered(base, |p, _| {
        if failure.is_some() {
            return 0.0;
        }
        match family.counting_avg(p.w) {
            Ok(n) => df.eval(p.w).norm_sqr() * n,
            Err(e) => {
                failure = Some(e);
                0.0
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let near_base = near_base_area(dq, base, &family, &df)?;
    let rhs = f.eval(base).norm_sqr() + 2.0 * area;
    let check = IdentityCheck::new(lhs, rhs);
    Ok(StantonCheck {
        lhs: check.lhs,
        rhs: check.rhs,
        rel_error: check.rel_error,
        base_point_contribution: 2.0 * near_base,
    })
}

fn near_base_area(
    dq: &DiskQuadrature,
    base: C64,
    family: &SliceFamily,
    df: &Polynomial,
) -> Result<f64> {
    let mut failure = None;
    let value = dq.integrate_centered(base, |p, v| {
        if v.w.norm() >= BASE_POINT_EXCLUSION || failure.is_some() {
            return 0.0;
        }
        match family.counting_avg(p.w) {
            Ok(n) => df.eval(p.w).norm_sqr() * n,
            Err(e) => {
                failure = Some(e);
                0.0
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

fn composed_norm_sq(f: &Polynomial, phi: &SelfMap, sq: Option<&SphereQuadrature>) -> Result<f64> {
    match phi.body() {
        MapBody::Polynomial(p) if p.dim() == 1 => {
            let inner = p.slice(&[C64::new(1.0, 0.0)])?;
            Ok(hardy2_norm(&f.compose(&inner)).powi(2))
        }
        MapBody::Polynomial(p) => {
            let sq = sq.ok_or_else(|| {
                Error::Invalid("a sphere quadrature is required for d >= 2".into())
            })?;
            let composed = |z: &[C64]| f.eval(eval_multi(p, z));
            Ok(hardy_norm_ball(composed, 2.0, sq, BALL_NORM_RADIUS)?.powi(2))
        }
        MapBody::Blaschke(b) => {
            // f∘b is holomorphic across the circle, so the radial limit is
            // the mean on |z| = 1 itself
            let (mean, _) = circle_mean_pow(|z| f.eval(b.eval(z)), 2.0, 1.0, 1e-15);
            Ok(mean)
        }
    }
}

fn eval_multi(p: &MultiPolynomial, z: &[C64]) -> C64 {
    p.eval(z).expect("dimension checked by the sphere rule")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmeanCheck {
    pub center_value: f64,
    pub mean_value: f64,
    pub satisfied: bool,
}

/// Sub-mean-value inequality for the (slice averaged) counting function on
/// the disk `|z - w| < rho`.
pub fn submean_check(
    phi: &SelfMap,
    w: C64,
    rho: f64,
    sq: Option<&SphereQuadrature>,
    dq: &DiskQuadrature,
) -> Result<SubmeanCheck> {
    let family = SliceFamily::new(phi, sq)?;
    submean_check_family(&family, w, rho, dq)
}

fn submean_check_family(
    family: &SliceFamily,
    w: C64,
    rho: f64,
    dq: &DiskQuadrature,
) -> Result<SubmeanCheck> {
    if !(rho > 0.0) || w.norm() + rho >= 1.0 {
        return Err(Error::DiskNotInDomain);
    }
    if (family.base_point() - w).norm() < rho {
        return Err(Error::BasePointInDisk);
    }
    let center_value = family.counting_avg(w)?;
    let mut failure = None;
    let mean_value = dq.mean_over_disk(w, rho, |p| match family.counting_avg(p.w) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let tol = 1e-6 + 1e-3 * mean_value;
    Ok(SubmeanCheck {
        center_value,
        mean_value,
        satisfied: center_value <= mean_value + tol,
    })
}
