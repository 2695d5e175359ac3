use serde::{Deserialize, Serialize};

use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::inner::InnerFunction;
use crate::numerics::{DiskPoint, Polynomial};
use crate::C64;

/// `k_w` with its norm, `‖k_w‖² = (1 - |Θ(w)|²)/(1 - |w|²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub w: C64,
    pub theta_value: C64,
    pub norm: f64,
}

impl KernelPoint {
    pub fn new(theta: &InnerFunction, w: C64) -> Result<Self> {
        Ok(Self {
            w,
            theta_value: theta.eval(w)?,
            norm: kernel_norm(theta, w)?,
        })
    }
}

/// `k_w(z) = (1 - Θ(z) conj(Θ(w)))/(1 - z conj(w))`.
pub fn kernel_eval(theta: &InnerFunction, w: C64, z: C64) -> Result<C64> {
    check_inside(w)?;
    check_inside(z)?;
    if z == w {
        return Ok(C64::new(kernel_norm(theta, w)?.powi(2), 0.0));
    }
    let tw = theta.eval(w)?.conj();
    let one = C64::new(1.0, 0.0);
    Ok((one - theta.eval(z)? * tw) / (one - z * w.conj()))
}

/// `∂k_w/∂z`.
pub fn kernel_derivative(theta: &InnerFunction, w: C64, z: C64) -> Result<C64> {
    check_inside(w)?;
    check_inside(z)?;
    let tw = theta.eval(w)?.conj();
    let (t, dt) = theta.eval_with_derivative(z)?;
    let one = C64::new(1.0, 0.0);
    let d = one - z * w.conj();
    Ok((-dt * tw * d + (one - t * tw) * w.conj()) / (d * d))
}

pub fn kernel_norm(theta: &InnerFunction, w: C64) -> Result<f64> {
    check_inside(w)?;
    let p = DiskPoint::from_point(w);
    Ok((theta.one_minus_modulus_sq(w, p.gap)? / p.gap).sqrt())
}

/// `k_w` as a rational function, for finite Blaschke `Θ`.
pub fn kernel_rational(theta: &InnerFunction, w: C64) -> Result<RationalFunction> {
    check_inside(w)?;
    let b = theta
        .as_finite_blaschke()
        .ok_or_else(|| Error::Invalid("kernel expansion needs a finite Blaschke product".into()))?;
    let (num, den) = b.rational_parts();
    let tw = b.eval(w).conj();
    let one = C64::new(1.0, 0.0);
    let top = &den - &num.scale(tw);
    let bottom = &den * &Polynomial::new(vec![one, -w.conj()]);
    RationalFunction::new(top, bottom)
}

/// `|z - w| < ε |1 - z conj(w)|`.
pub fn pseudo_disk_contains(w: C64, eps: f64, z: C64) -> bool {
    (z - w).norm() < eps * (C64::new(1.0, 0.0) - z * w.conj()).norm()
}

fn check_inside(z: C64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk(z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeBoundRow {
    pub index: usize,
    pub w: C64,
    pub theta_modulus: f64,
    /// `min |k'_w(z)|` over the mesh of the pseudohyperbolic disk.
    pub min_derivative: f64,
    /// `min |k'_w| · (1 - |w|²)²`, the observed constant.
    pub empirical_constant: f64,
}

/// Polar mesh of the pseudohyperbolic `ε`-disk around each `w_n`, including
/// its center; reports the observed constant in `|k'_w| ≥ C (1 - |w|²)^{-2}`.
pub fn kernel_derivative_bound_check(
    theta: &InnerFunction,
    w_seq: &[C64],
    a: f64,
    eps: f64,
    mesh: usize,
) -> Result<Vec<DerivativeBoundRow>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid(format!("eps {eps} must lie in (0, 1)")));
    }
    let mesh = mesh.max(2);
    let mut rows = Vec::with_capacity(w_seq.len());
    for (index, &w) in w_seq.iter().enumerate() {
        let modulus = theta.eval(w)?.norm();
        if !(modulus < a) {
            return Err(Error::SequenceViolation {
                index,
                modulus,
                bound: a,
            });
        }
        let mut min_derivative = kernel_derivative(theta, w, w)?.norm();
        for i in 1..mesh {
            let rho = eps * i as f64 / mesh as f64;
            for j in 0..4 * mesh {
                let v = C64::from_polar(rho, std::f64::consts::TAU * j as f64 / (4 * mesh) as f64);
                let z = (w + v) / (C64::new(1.0, 0.0) + w.conj() * v);
                min_derivative = min_derivative.min(kernel_derivative(theta, w, z)?.norm());
            }
        }
        let gap = DiskPoint::from_point(w).gap;
        rows.push(DerivativeBoundRow {
            index,
            w,
            theta_modulus: modulus,
            min_derivative,
            empirical_constant: min_derivative * gap * gap,
        });
    }
    Ok(rows)
}
