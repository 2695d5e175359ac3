//! Argument-principle zero counting on circles.

use std::f64::consts::PI;

use super::Holomorphic;
use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Copy, Debug)]
pub struct ContourOptions {
    /// Smallest `|f|` tolerated on the contour.
    pub min_modulus: f64,
    pub initial_nodes: usize,
    pub max_nodes: usize,
    /// Doubling stops once the winding value moves less than this.
    pub change_tol: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            min_modulus: 1e-10,
            initial_nodes: 64,
            max_nodes: 1 << 22,
            change_tol: 1e-3,
        }
    }
}

/// Number of zeros of `f` inside `|z - center| < radius`, counted with
/// multiplicity, by the argument principle.
pub fn zeros_in_disk<F>(f: &F, center: C64, radius: f64) -> Result<usize>
where
    F: Holomorphic + ?Sized,
{
    zeros_in_disk_with(f, center, radius, &ContourOptions::default())
}

pub fn zeros_in_disk_with<F>(
    f: &F,
    center: C64,
    radius: f64,
    opts: &ContourOptions,
) -> Result<usize>
where
    F: Holomorphic + ?Sized,
{
    if !(radius > 0.0) {
        return Err(Error::Invalid(format!("contour radius {radius} must be positive")));
    }
    // (1/2πi)∮ f'/f dz = (1/2π)∫ (z - c) f'(z)/f(z) dθ, trapezoid in θ
    let sample = |theta: f64| -> (C64, f64) {
        let offset = C64::from_polar(radius, theta);
        let z = center + offset;
        let value = f.value(z);
        (offset * f.derivative(z) / value, value.norm())
    };
    let accumulate = |thetas: &mut dyn Iterator<Item = f64>, min_modulus: &mut f64| -> C64 {
        thetas
            .map(|t| {
                let (term, modulus) = sample(t);
                *min_modulus = min_modulus.min(modulus);
                term
            })
            .sum()
    };

    let mut min_modulus = f64::INFINITY;
    let mut n = opts.initial_nodes.max(4);
    let mut sum = accumulate(
        &mut (0..n).map(|k| 2.0 * PI * k as f64 / n as f64),
        &mut min_modulus,
    );
    let mut winding = (sum / n as f64).re;
    loop {
        if min_modulus < opts.min_modulus {
            return Err(Error::ZeroNearContour { min_modulus });
        }
        if 2 * n > opts.max_nodes {
            break;
        }
        // odd nodes of the doubled rule
        let extra = accumulate(
            &mut (0..n).map(|k| PI * (2 * k + 1) as f64 / n as f64),
            &mut min_modulus,
        );
        sum += extra;
        n *= 2;
        let refined = (sum / n as f64).re;
        let moved = (refined - winding).abs();
        winding = refined;
        if moved < opts.change_tol {
            break;
        }
    }
    if min_modulus < opts.min_modulus {
        return Err(Error::ZeroNearContour { min_modulus });
    }

    let rounded = winding.round();
    if (winding - rounded).abs() > 0.1 || rounded < 0.0 {
        return Err(Error::NonIntegerWinding { value: winding });
    }
    Ok(rounded as usize)
}
