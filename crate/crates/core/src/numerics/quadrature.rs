//! Quadrature for the normalized area measure on the unit disk.
//!
//! With `s = |w|^2` the measure factors as `dA = ds · dθ/2π`, so a disk
//! rule is a radial rule on `s ∈ [0, 1]` composed with the uniform
//! trapezoid rule in `θ`. The radial rule is composite Gauss–Legendre on
//! panels graded geometrically toward `s = 0` (where `log(1/|w|)` is
//! singular) and, in the complementary variable `t = 1 - s`, toward the
//! boundary. Nodes carry both `s` and `t` so that `1 - |w|^2` is available
//! without cancellation near the circle.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::C64;

/// A quadrature node in the disk with its accurate gap `1 - |w|^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    pub w: C64,
    pub gap: f64,
}

impl DiskPoint {
    /// Builds from `w` alone; the gap is computed as `(1 - |w|)(1 + |w|)`.
    pub fn from_point(w: C64) -> Self {
        let r = w.norm();
        Self {
            w,
            gap: (1.0 - r) * (1.0 + r),
        }
    }

    /// `log(1/|w|)` evaluated stably on both ends of the radius.
    pub fn log_inv_modulus(&self) -> f64 {
        let s = self.w.norm_sqr();
        if s < 0.5 {
            -0.5 * s.ln()
        } else {
            -0.5 * (-self.gap).ln_1p()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Ring {
    s: f64,
    t: f64,
    weight: f64,
}

/// Shape parameters of a [`DiskQuadrature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskRuleSpec {
    /// Gauss–Legendre nodes per radial panel.
    pub order: usize,
    /// Geometric panels toward the center.
    pub inner_levels: usize,
    /// Geometric panels toward the boundary.
    pub outer_levels: usize,
    /// Trapezoid nodes per ring.
    pub angular: usize,
}

impl Default for DiskRuleSpec {
    fn default() -> Self {
        Self {
            order: 12,
            inner_levels: 40,
            outer_levels: 8,
            angular: 64,
        }
    }
}

/// Fixed product rule for `∫_𝔻 f dA`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskQuadrature {
    spec: DiskRuleSpec,
    rings: Vec<Ring>,
}

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
fn unit_rule(order: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(order.max(1)).expect("order >= 1"));
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// Panels of `[0, 1/2]` graded toward 0: `[0, 2^-(L+1)], …, [1/4, 1/2]`.
fn graded_half(levels: usize) -> Vec<(f64, f64)> {
    let mut panels = Vec::with_capacity(levels + 1);
    let mut hi = 0.5;
    for _ in 0..levels {
        panels.push((hi * 0.5, hi));
        hi *= 0.5;
    }
    panels.push((0.0, hi));
    panels.reverse();
    panels
}

impl DiskQuadrature {
    pub fn new(spec: DiskRuleSpec) -> Self {
        let base = unit_rule(spec.order);
        let mut rings = Vec::new();
        // s ∈ [0, 1/2]
        for (lo, hi) in graded_half(spec.inner_levels) {
            for &(x, w) in &base {
                let s = lo + (hi - lo) * x;
                rings.push(Ring {
                    s,
                    t: 1.0 - s,
                    weight: (hi - lo) * w,
                });
            }
        }
        // t = 1 - s ∈ [0, 1/2], ordered outward
        for (lo, hi) in graded_half(spec.outer_levels).into_iter().rev() {
            for &(x, w) in base.iter().rev() {
                let t = lo + (hi - lo) * x;
                rings.push(Ring {
                    s: 1.0 - t,
                    t,
                    weight: (hi - lo) * w,
                });
            }
        }
        Self { spec, rings }
    }

    pub fn spec(&self) -> DiskRuleSpec {
        self.spec
    }

    pub fn angular_count(&self) -> usize {
        self.spec.angular
    }

    pub fn ring_count(&self) -> usize {
        self.rings.len()
    }

    pub fn node_count(&self) -> usize {
        self.rings.len() * self.spec.angular
    }

    /// Radial `(r, weight)` pairs; weights are for `ds` and sum to 1.
    pub fn radial_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.rings.iter().map(|r| (r.s.sqrt(), r.weight))
    }

    /// Highest `a = b` such that `w^a conj(w)^b` is integrated exactly; every
    /// pair with `a, b` at most this value is exact.
    pub fn exactness_degree(&self) -> usize {
        (2 * self.spec.order - 1).min(self.spec.angular.saturating_sub(1))
    }

    /// Every node with its weight (weights sum to 1).
    pub fn nodes(&self) -> impl Iterator<Item = (DiskPoint, f64)> + '_ {
        let n = self.spec.angular;
        let angles: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        self.rings.iter().flat_map(move |ring| {
            let r = ring.s.sqrt();
            let weight = ring.weight / n as f64;
            let gap = ring.t;
            angles
                .clone()
                .into_iter()
                .map(move |e| (DiskPoint { w: e * r, gap }, weight))
        })
    }

    /// `∫_𝔻 f dA`.
    pub fn integrate<F: FnMut(DiskPoint) -> f64>(&self, mut f: F) -> f64 {
        let n = self.spec.angular;
        let angles: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        let mut total = 0.0;
        for ring in &self.rings {
            let r = ring.s.sqrt();
            let ring_sum: f64 = angles
                .iter()
                .map(|&e| f(DiskPoint { w: e * r, gap: ring.t }))
                .sum();
            total += ring.weight * ring_sum / n as f64;
        }
        total
    }

    /// Mean of `f` over the disk `|z - center| < radius`,
    /// `(1/A(Δ)) ∫_Δ f dA`.
    pub fn mean_over_disk<F: FnMut(DiskPoint) -> f64>(
        &self,
        center: C64,
        radius: f64,
        mut f: F,
    ) -> f64 {
        self.integrate(|v| f(DiskPoint::from_point(center + v.w * radius)))
    }

    /// `∫_𝔻 f dA` after the change of variables `w = (a + v)/(1 + conj(a) v)`,
    /// which moves the origin of the rule to `a`.
    ///
    /// The closure receives the image point and the `v`-plane node (whose
    /// modulus measures the pseudohyperbolic distance to `a`).
    pub fn integrate_centered<F>(&self, a: C64, mut f: F) -> f64
    where
        F: FnMut(DiskPoint, DiskPoint) -> f64,
    {
        let scale = (1.0 - a.norm()) * (1.0 + a.norm());
        self.integrate(|v| {
            let denom = C64::new(1.0, 0.0) + a.conj() * v.w;
            let w = (a + v.w) / denom;
            let jacobian = scale / denom.norm_sqr();
            let gap = scale * v.gap / denom.norm_sqr();
            f(DiskPoint { w, gap }, v) * jacobian * jacobian
        })
    }
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        Self::new(DiskRuleSpec::default())
    }
}

/// Options for [`integrate_graded`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedOptions {
    pub order: usize,
    pub inner_levels: usize,
    pub outer_levels: usize,
    /// Extra boundary levels added per refinement round.
    pub outer_step: usize,
    pub max_outer_levels: usize,
    pub angular: usize,
    pub max_angular: usize,
    /// Relative change accepted per panel and per refinement round.
    pub rel_tol: f64,
    pub max_bisections: usize,
}

impl Default for GradedOptions {
    fn default() -> Self {
        Self {
            order: 16,
            inner_levels: 40,
            outer_levels: 16,
            outer_step: 8,
            max_outer_levels: 1000,
            angular: 64,
            max_angular: 4096,
            rel_tol: 1e-6,
            max_bisections: 12,
        }
    }
}

/// Result of an adaptive graded integration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedIntegral {
    pub value: f64,
    /// Relative change produced by the last refinement round.
    pub rel_change: f64,
    pub converged: bool,
    pub angular: usize,
    pub outer_levels: usize,
    pub evaluations: u64,
}

struct RadialIntegrator<'a, F> {
    f: &'a F,
    angles: Vec<C64>,
    base: Vec<(f64, f64)>,
    rel_tol: f64,
    max_bisections: usize,
    evaluations: u64,
    unresolved: bool,
}

#[derive(Clone, Copy)]
enum Side {
    // coordinate is s = |w|^2
    Inner,
    // coordinate is t = 1 - |w|^2
    Outer,
}

impl<F: Fn(DiskPoint) -> f64> RadialIntegrator<'_, F> {
    fn ring_mean(&mut self, side: Side, u: f64) -> f64 {
        let (s, t) = match side {
            Side::Inner => (u, 1.0 - u),
            Side::Outer => (1.0 - u, u),
        };
        let r = s.sqrt();
        let n = self.angles.len();
        self.evaluations += n as u64;
        let sum: f64 = self
            .angles
            .iter()
            .map(|&e| (self.f)(DiskPoint { w: e * r, gap: t }))
            .sum();
        sum / n as f64
    }

    fn panel(&mut self, side: Side, lo: f64, hi: f64) -> f64 {
        let base = std::mem::take(&mut self.base);
        let value = base
            .iter()
            .map(|&(x, w)| w * self.ring_mean(side, lo + (hi - lo) * x))
            .sum::<f64>()
            * (hi - lo);
        self.base = base;
        value
    }

    fn adaptive(&mut self, side: Side, lo: f64, hi: f64, whole: f64, depth: usize) -> f64 {
        let mid = 0.5 * (lo + hi);
        let left = self.panel(side, lo, mid);
        let right = self.panel(side, mid, hi);
        let split = left + right;
        let diff = (split - whole).abs();
        if diff <= self.rel_tol * split.abs() || diff <= 1e-300 {
            return split;
        }
        if depth >= self.max_bisections {
            self.unresolved = true;
            return split;
        }
        self.adaptive(side, lo, mid, left, depth + 1) + self.adaptive(side, mid, hi, right, depth + 1)
    }

    /// Integral over the interior panels of one half, each refined until its
    /// relative change is below tolerance. The innermost tail panel at `u = 0`
    /// is returned separately.
    fn half(&mut self, side: Side, levels: usize) -> (f64, f64) {
        let panels = graded_half(levels);
        let (tail_lo, tail_hi) = panels[0];
        let tail = self.panel(side, tail_lo, tail_hi);
        let mut body = 0.0;
        for &(lo, hi) in &panels[1..] {
            let whole = self.panel(side, lo, hi);
            body += self.adaptive(side, lo, hi, whole, 0);
        }
        (body, tail)
    }
}

/// Adaptive integral of `f` over the disk for integrands that may be
/// singular or large near the boundary.
///
/// Interior panels are bisected until their relative change is below
/// `rel_tol`; the boundary grading is deepened by `outer_step` levels and
/// the angular count doubled until the total moves by less than `rel_tol`.
/// `converged` is false when either loop hits its cap.
pub fn integrate_graded<F: Fn(DiskPoint) -> f64>(f: &F, opts: &GradedOptions) -> GradedIntegral {
    let mut angular = opts.angular.max(4);
    let mut evaluations = 0;
    let mut previous: Option<f64> = None;
    loop {
        let (value, outer_levels, radial_ok, evals) = integrate_radial(f, opts, angular);
        evaluations += evals;
        let rel_change = previous.map_or(f64::INFINITY, |p| relative_change(p, value));
        let stable = rel_change < opts.rel_tol;
        if stable || angular * 2 > opts.max_angular {
            return GradedIntegral {
                value,
                rel_change,
                converged: stable && radial_ok,
                angular,
                outer_levels,
                evaluations,
            };
        }
        previous = Some(value);
        angular *= 2;
    }
}

fn relative_change(old: f64, new: f64) -> f64 {
    let diff = (new - old).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / new.abs().max(old.abs())
    }
}

fn integrate_radial<F: Fn(DiskPoint) -> f64>(
    f: &F,
    opts: &GradedOptions,
    angular: usize,
) -> (f64, usize, bool, u64) {
    let mut radial = RadialIntegrator {
        f,
        angles: (0..angular)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / angular as f64))
            .collect(),
        base: unit_rule(opts.order),
        rel_tol: opts.rel_tol,
        max_bisections: opts.max_bisections,
        evaluations: 0,
        unresolved: false,
    };
    let (inner_body, inner_tail) = radial.half(Side::Inner, opts.inner_levels);
    let inner = inner_body + inner_tail;

    let mut levels = opts.outer_levels;
    let (mut outer_body, mut outer_tail) = radial.half(Side::Outer, levels);
    let mut boundary_ok = false;
    while levels + opts.outer_step <= opts.max_outer_levels {
        // deepen: the old tail [0, 2^-(L+1)] is replaced by `step` new panels
        // plus a smaller tail
        let mut added = 0.0;
        let mut hi = 0.5f64.powi(levels as i32 + 1);
        for _ in 0..opts.outer_step {
            let lo = hi * 0.5;
            let whole = radial.panel(Side::Outer, lo, hi);
            added += radial.adaptive(Side::Outer, lo, hi, whole, 0);
            hi = lo;
        }
        let new_tail = radial.panel(Side::Outer, 0.0, hi);
        let old_total = inner + outer_body + outer_tail;
        outer_body += added;
        outer_tail = new_tail;
        levels += opts.outer_step;
        let new_total = inner + outer_body + outer_tail;
        if relative_change(old_total, new_total) < opts.rel_tol {
            boundary_ok = true;
            break;
        }
    }
    let total = inner + outer_body + outer_tail;
    (total, levels, boundary_ok && !radial.unresolved, radial.evaluations)
}
