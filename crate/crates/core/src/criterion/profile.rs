use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::InnerFunction;
use crate::nevanlinna::{SelfMap, SliceFamily};
use crate::numerics::{DiskPoint, SphereDescriptor, SphereQuadrature};
use crate::C64;

pub const DEFAULT_ANGULAR: usize = 256;
/// Density multiplier of the refinement pass.
pub const REFINE_FACTOR: usize = 3;
/// Relative move of the maximum that marks a circle as under-resolved.
pub const REFINE_TRIGGER: f64 = 0.1;
/// Circle samples this close to `φ(0)` are skipped.
pub const BASE_POINT_SKIP: f64 = 1e-8;

/// `∫ N_{φ_ζ}(w) dσ(ζ) · (1 - |Θ(w)|)/(1 - |w|)`.
pub fn criterion_integrand(
    phi: &SelfMap,
    theta: &InnerFunction,
    w: C64,
    sq: Option<&SphereQuadrature>,
) -> Result<f64> {
    integrand_from_family(&SliceFamily::new(phi, sq)?, theta, w)
}

pub fn integrand_from_family(family: &SliceFamily, theta: &InnerFunction, w: C64) -> Result<f64> {
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideDisk(w));
    }
    let n = family.counting_avg(w)?;
    if n == 0.0 {
        return Ok(0.0);
    }
    let p = DiskPoint::from_point(w);
    Ok(n * theta.one_minus_modulus(w, p.gap)? / (1.0 - w.norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub angular_count: usize,
    /// Run the `3×` pass on every circle.
    pub refine: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            angular_count: DEFAULT_ANGULAR,
            refine: true,
        }
    }
}

/// Sup of the criterion integrand on circles `|w| = r_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionProfile {
    pub radii: Vec<f64>,
    pub sup_values: Vec<f64>,
    /// Angle at which each sup was attained.
    pub argmax: Vec<f64>,
    /// Circles whose maximum moved by more than 10% under refinement.
    pub under_resolved: Vec<bool>,
    pub angular_count: usize,
    pub refine_factor: usize,
    pub quadrature: Option<SphereDescriptor>,
    pub phi: SelfMap,
    pub theta: InnerFunction,
}

pub fn criterion_profile(
    phi: &SelfMap,
    theta: &InnerFunction,
    radii: &[f64],
    opts: &ProfileOptions,
    sq: Option<&SphereQuadrature>,
) -> Result<CriterionProfile> {
    let family = SliceFamily::new(phi, sq)?;
    let descriptor = (phi.dim() > 1).then(|| sq.map(SphereQuadrature::descriptor)).flatten();
    criterion_profile_family(phi, theta, radii, opts, &family, descriptor)
}

pub fn criterion_profile_family(
    phi: &SelfMap,
    theta: &InnerFunction,
    radii: &[f64],
    opts: &ProfileOptions,
    family: &SliceFamily,
    quadrature: Option<SphereDescriptor>,
) -> Result<CriterionProfile> {
    if radii.is_empty() {
        return Err(Error::Invalid("no radii given".into()));
    }
    for (k, &r) in radii.iter().enumerate() {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::BadRadius(r));
        }
        if k > 0 && !(r > radii[k - 1]) {
            return Err(Error::Invalid("radii must be strictly increasing".into()));
        }
    }
    if opts.angular_count == 0 {
        return Err(Error::Invalid("angular_count must be positive".into()));
    }
    let base = family.base_point();
    let n = opts.angular_count;
    let fine = n * REFINE_FACTOR;

    let mut sup_values = Vec::with_capacity(radii.len());
    let mut argmax = Vec::with_capacity(radii.len());
    let mut under_resolved = Vec::with_capacity(radii.len());
    for &r in radii {
        let sample = |theta_angle: f64| -> Result<Option<f64>> {
            let w = C64::from_polar(r, theta_angle);
            if (w - base).norm() < BASE_POINT_SKIP {
                return Ok(None);
            }
            integrand_from_family(family, theta, w).map(Some)
        };
        let mut coarse: (f64, f64) = (0.0, 0.0);
        for j in 0..n {
            let t = TAU * j as f64 / n as f64;
            if let Some(v) = sample(t)? {
                if v > coarse.0 {
                    coarse = (v, t);
                }
            }
        }
        let mut best = coarse;
        if opts.refine {
            // the fine grid contains the coarse one at every third node
            for j in (0..fine).filter(|j| j % REFINE_FACTOR != 0) {
                let t = TAU * j as f64 / fine as f64;
                if let Some(v) = sample(t)? {
                    if v > best.0 {
                        best = (v, t);
                    }
                }
            }
        }
        let moved = best.0 - coarse.0 > REFINE_TRIGGER * coarse.0.max(f64::MIN_POSITIVE);
        sup_values.push(best.0);
        argmax.push(best.1);
        under_resolved.push(moved);
    }
    Ok(CriterionProfile {
        radii: radii.to_vec(),
        sup_values,
        argmax,
        under_resolved,
        angular_count: n,
        refine_factor: if opts.refine { REFINE_FACTOR } else { 1 },
        quadrature,
        phi: phi.clone(),
        theta: theta.clone(),
    })
}
