use std::f64::consts::PI;

use super::{Polynomial, SphereQuadrature};
use crate::error::{Error, Result};
use crate::C64;

/// `‖f‖_{H^2(𝔻)}` from the coefficients, `sqrt(Σ |c_k|^2)`.
pub fn hardy2_norm(f: &Polynomial) -> f64 {
    f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Sphere mean `(Σ_j w_j |g(r ζ_j)|^p)^{1/p}` approximating the `H^p(B_d)`
/// integral mean at radius `r`.
pub fn hardy_norm_ball<G>(g: G, p: f64, sq: &SphereQuadrature, r: f64) -> Result<f64>
where
    G: Fn(&[C64]) -> C64,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::BadRadius(r));
    }
    if !(p > 0.0) {
        return Err(Error::Invalid(format!("exponent p = {p} must be positive")));
    }
    let mut point = vec![C64::new(0.0, 0.0); sq.dim()];
    let mean = sq.average(|zeta| {
        for (dst, &z) in point.iter_mut().zip(zeta) {
            *dst = z * r;
        }
        g(&point).norm().powf(p)
    });
    Ok(mean.powf(1.0 / p))
}

/// `∫_𝕋 |g(r ζ)|^p dσ_1` by the trapezoid rule, doubling the node count
/// until the relative change is below `rel_tol`. Suitable for `g`
/// holomorphic on a neighborhood of the circle of radius `r`.
pub fn circle_mean_pow<G>(g: G, p: f64, r: f64, rel_tol: f64) -> (f64, usize)
where
    G: Fn(C64) -> C64,
{
    let sample = |theta: f64| g(C64::from_polar(r, theta)).norm().powf(p);
    let mut n = 64usize;
    let mut sum: f64 = (0..n).map(|k| sample(2.0 * PI * k as f64 / n as f64)).sum();
    let mut mean = sum / n as f64;
    while n < 1 << 20 {
        sum += (0..n)
            .map(|k| sample(PI * (2 * k + 1) as f64 / n as f64))
            .sum::<f64>();
        n *= 2;
        let refined = sum / n as f64;
        let change = (refined - mean).abs();
        mean = refined;
        if change <= rel_tol * mean.abs() {
            break;
        }
    }
    (mean, n)
}
