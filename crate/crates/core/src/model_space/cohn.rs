use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::InnerFunction;
use crate::numerics::{integrate_graded, DiskPoint, GradedOptions, Holomorphic};
use crate::C64;

/// Relative change above which the graded integral is flagged divergent.
pub const DIVERGENCE_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohnValue {
    pub value: f64,
    pub rel_change: f64,
    pub divergent: bool,
    pub evaluations: u64,
}

/// `|f(0)|² + ∫ |f'(w)|² (1 - |Θ(w)|)^{-p} log(1/|w|) dA(w)`.
pub fn cohn_functional<F>(
    f: &F,
    theta: &InnerFunction,
    p: f64,
    opts: &GradedOptions,
) -> Result<CohnValue>
where
    F: Holomorphic + ?Sized,
{
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Invalid(format!("exponent {p} must lie in (0, 1)")));
    }
    Ok(weighted_area(f, theta, p, opts))
}

/// Same integral with exponent `p = 0`, the Littlewood–Paley value.
pub fn cohn_baseline<F>(f: &F, opts: &GradedOptions) -> CohnValue
where
    F: Holomorphic + ?Sized,
{
    let g = integrate_graded(
        &|pt: DiskPoint| f.derivative(pt.w).norm_sqr() * pt.log_inv_modulus(),
        opts,
    );
    finish(f, g)
}

fn weighted_area<F>(f: &F, theta: &InnerFunction, p: f64, opts: &GradedOptions) -> CohnValue
where
    F: Holomorphic + ?Sized,
{
    let integrand = |pt: DiskPoint| {
        let df = f.derivative(pt.w).norm_sqr();
        if df == 0.0 {
            return 0.0;
        }
        let dist = theta.one_minus_modulus(pt.w, pt.gap).unwrap_or(0.0);
        df * dist.powf(-p) * pt.log_inv_modulus()
    };
    finish(f, integrate_graded(&integrand, opts))
}

fn finish<F>(f: &F, g: crate::numerics::GradedIntegral) -> CohnValue
where
    F: Holomorphic + ?Sized,
{
    let f0 = f.value(C64::new(0.0, 0.0)).norm_sqr();
    CohnValue {
        value: f0 + g.value,
        rel_change: g.rel_change,
        divergent: !g.converged || !(g.rel_change < DIVERGENCE_TOL) || !g.value.is_finite(),
        evaluations: g.evaluations,
    }
}
