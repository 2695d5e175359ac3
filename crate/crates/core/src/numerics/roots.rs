//! All-roots solver for complex polynomials (Aberth–Ehrlich iteration).

use std::f64::consts::PI;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::C64;

const MAX_ITERATIONS: usize = 500;
const RESIDUAL_FACTOR: f64 = 1e-8;

/// Roots of `p` with multiplicity, `degree(p)` of them.
///
/// Exact zero roots (vanishing low-order coefficients) are split off first;
/// degrees one and two are solved in closed form, higher degrees by
/// Aberth–Ehrlich iteration followed by a residual check against the
/// original coefficients.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<C64>> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let coeffs = p.coeffs();
    let zero_roots = coeffs.iter().take_while(|c| c.norm_sqr() == 0.0).count();
    let mut roots = vec![C64::new(0.0, 0.0); zero_roots];
    let reduced = &coeffs[zero_roots..];

    match reduced.len() - 1 {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        2 => roots.extend(quadratic_roots(reduced[0], reduced[1], reduced[2])),
        _ => roots.extend(aberth(reduced)),
    }
    debug_assert_eq!(roots.len(), degree);

    let bound = RESIDUAL_FACTOR * (1.0 + p.max_abs_coeff());
    let residuals: Vec<f64> = roots.iter().map(|&r| p.eval(r).norm()).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= bound) {
        return Err(Error::NoConvergence {
            residuals,
            worst_residual: worst,
            bound,
        });
    }
    Ok(roots)
}

/// Roots of `c0 + c1 z + c2 z^2` using the cancellation-free form.
fn quadratic_roots(c0: C64, c1: C64, c2: C64) -> [C64; 2] {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // pick the sign that avoids cancellation in -c1 ± disc
    let q = if (c1.conj() * disc).re >= 0.0 {
        -0.5 * (c1 + disc)
    } else {
        -0.5 * (c1 - disc)
    };
    if q.norm_sqr() == 0.0 {
        // c1 = c0 = 0 never reaches here because zero roots are split off
        return [C64::new(0.0, 0.0); 2];
    }
    [q / c2, c0 / q]
}

fn eval_ratio(coeffs: &[C64], z: C64) -> C64 {
    let mut value = C64::new(0.0, 0.0);
    let mut deriv = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    if deriv.norm_sqr() == 0.0 {
        // stationary point: nudge instead of dividing by zero
        return value * 1e-3 + C64::new(1e-10, 1e-10);
    }
    value / deriv
}

fn aberth(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<C64> = coeffs.iter().map(|&c| c / lead).collect();

    // initial guesses on a circle of the geometric-mean root radius
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = eval_ratio(&monic, z[i]);
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm_sqr() == 0.0 {
                        C64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let denom = C64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm_sqr() == 0.0 {
                ratio
            } else {
                ratio / denom
            };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}
