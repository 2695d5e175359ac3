use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::config::{ConfigError, Experiment, Format, Task};
use super::output::{Cell, Table};
use crate::criterion::{
    compactness_verdict, criterion_profile_family, integrand_from_family, one_component_probe,
    ProfileOptions, BASE_POINT_SKIP, DEFAULT_ANGULAR,
};
use crate::error::Error;
use crate::inner::InnerFunction;
use crate::model_space::{
    cohn_baseline, cohn_functional, h2_pairing, kernel_eval, kernel_norm, kernel_rational, tm_basis,
};
use crate::nevanlinna::{
    count_preimages, littlewood_bound, littlewood_paley_verify, stanton_verify, SelfMap,
    SliceFamily,
};
use crate::numerics::{sphere_uniform, DiskQuadrature, DiskRuleSpec, GradedOptions, SphereQuadrature};
use crate::C64;

pub const DEFAULT_RADII: [f64; 4] = [0.9, 0.99, 0.995, 0.999];
pub const DEFAULT_SAMPLES: usize = 100;
/// Sphere size for tasks that evaluate many points; Stanton uses more.
pub const DEFAULT_SPHERE_N: usize = 2_000;
pub const DEFAULT_STANTON_SPHERE_N: usize = 100_000;
/// Disk rule used for Stanton's formula when `d ≥ 2`.
pub const BALL_DISK_RULE: DiskRuleSpec = DiskRuleSpec {
    order: 8,
    inner_levels: 12,
    outer_levels: 2,
    angular: 8,
};

pub enum TaskError {
    Config(ConfigError),
    Numeric(Error),
}

impl From<ConfigError> for TaskError {
    fn from(e: ConfigError) -> Self {
        TaskError::Config(e)
    }
}

impl From<Error> for TaskError {
    fn from(e: Error) -> Self {
        TaskError::Numeric(e)
    }
}

pub struct Outcome {
    pub contents: String,
    pub passed: bool,
}

type TaskResult = Result<Outcome, TaskError>;

pub fn run_task(exp: &Experiment) -> TaskResult {
    match exp.task {
        Task::VerifyLp => verify_lp(exp),
        Task::VerifyStanton => verify_stanton(exp),
        Task::Counting => counting(exp),
        Task::Criterion => criterion(exp),
        Task::Kernel => kernel(exp),
        Task::Basis => basis(exp),
        Task::Cohn => cohn(exp),
        Task::Probe => probe(exp),
        Task::Heatmap => heatmap(exp),
    }
}

fn render(table: &Table, exp: &Experiment, passed: bool) -> Outcome {
    let contents = match exp.format {
        Some(Format::Json) => {
            let mut s = serde_json::to_string_pretty(&table.to_json()).expect("table serializes");
            s.push('\n');
            s
        }
        _ => table.to_csv(),
    };
    Outcome { contents, passed }
}

fn render_json(value: serde_json::Value, passed: bool) -> Outcome {
    let mut contents = serde_json::to_string_pretty(&value).expect("value serializes");
    contents.push('\n');
    Outcome { contents, passed }
}

fn disk_rule(exp: &Experiment) -> DiskQuadrature {
    DiskQuadrature::new(exp.numerics.disk.unwrap_or_default())
}

fn sphere(exp: &Experiment, phi: &SelfMap, default_n: usize) -> Option<SphereQuadrature> {
    (phi.dim() > 1).then(|| {
        sphere_uniform(phi.dim(), exp.numerics.sphere_n.unwrap_or(default_n), exp.seed)
    })
}

fn points(exp: &Experiment, default_n: usize) -> Vec<C64> {
    if let Some(p) = &exp.numerics.points {
        return p.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
    (0..exp.numerics.sample_count.unwrap_or(default_n))
        .map(|_| {
            let r = 0.99 * rng.random_range(0.0..1.0f64).sqrt();
            C64::from_polar(r, rng.random_range(0.0..TAU))
        })
        .collect()
}

fn verify_lp(exp: &Experiment) -> TaskResult {
    let tol = exp.tol.unwrap_or(1e-8);
    let check = littlewood_paley_verify(&exp.f, &disk_rule(exp));
    let pass = check.rel_error <= tol;
    let mut t = Table::new(&["lhs", "rhs", "rel_error", "tol", "pass"]);
    t.push(vec![check.lhs.into(), check.rhs.into(), check.rel_error.into(), tol.into(), pass.into()]);
    Ok(render(&t, exp, pass))
}

fn verify_stanton(exp: &Experiment) -> TaskResult {
    let phi = exp.require_phi()?;
    let (tol, dq) = if phi.dim() == 1 {
        (exp.tol.unwrap_or(1e-6), disk_rule(exp))
    } else {
        let spec = exp.numerics.disk.unwrap_or(BALL_DISK_RULE);
        (exp.tol.unwrap_or(2e-2), DiskQuadrature::new(spec))
    };
    let sq = sphere(exp, phi, DEFAULT_STANTON_SPHERE_N);
    let check = stanton_verify(&exp.f, phi, &dq, sq.as_ref())?;
    let pass = check.rel_error <= tol;
    let mut t = Table::new(&["dim", "lhs", "rhs", "rel_error", "base_point_contribution", "tol", "pass"]);
    t.push(vec![
        phi.dim().into(),
        check.lhs.into(),
        check.rhs.into(),
        check.rel_error.into(),
        check.base_point_contribution.into(),
        tol.into(),
        pass.into(),
    ]);
    Ok(render(&t, exp, pass))
}

fn counting(exp: &Experiment) -> TaskResult {
    let phi = exp.require_phi()?;
    let pts = points(exp, DEFAULT_SAMPLES);
    if phi.dim() > 1 {
        let sq = sphere(exp, phi, DEFAULT_SPHERE_N).expect("dim > 1");
        let family = SliceFamily::new(phi, Some(&sq))?;
        let mut t = Table::new(&["w_re", "w_im", "counting_avg"]);
        for w in pts {
            t.push(vec![w.re.into(), w.im.into(), family.counting_avg(w)?.into()]);
        }
        return Ok(render(&t, exp, true));
    }
    let map = phi.as_disk_map()?;
    let mut all_ok = true;
    let mut t = Table::new(&[
        "w_re",
        "w_im",
        "value",
        "preimages",
        "discarded",
        "littlewood_bound",
        "littlewood_ok",
    ]);
    for w in pts {
        let s = count_preimages(&map, w)?;
        let lw = littlewood_bound(phi, w)?;
        all_ok &= lw.satisfied;
        let listed: usize = s.preimages.iter().map(|p| p.multiplicity as usize).sum();
        t.push(vec![
            w.re.into(),
            w.im.into(),
            s.value.into(),
            listed.into(),
            s.discarded.into(),
            lw.bound.into(),
            lw.satisfied.into(),
        ]);
    }
    Ok(render(&t, exp, all_ok))
}

fn criterion(exp: &Experiment) -> TaskResult {
    let phi = exp.require_phi()?;
    let theta = exp.require_theta()?;
    let radii = exp.numerics.radii.clone().unwrap_or(DEFAULT_RADII.to_vec());
    let opts = ProfileOptions {
        angular_count: exp.numerics.angular_count.unwrap_or(DEFAULT_ANGULAR),
        refine: exp.numerics.refine.unwrap_or(true),
    };
    let sq = sphere(exp, phi, DEFAULT_SPHERE_N);
    let family = SliceFamily::new(phi, sq.as_ref())?;
    let descriptor = sq.as_ref().map(SphereQuadrature::descriptor);
    let profile = criterion_profile_family(phi, theta, &radii, &opts, &family, descriptor)?;
    let tol = exp.tol.unwrap_or(0.05);
    let verdict = compactness_verdict(&profile, tol).map_err(|e| match e {
        Error::InsufficientProfile => TaskError::Config(ConfigError::new(
            "numerics.radii",
            "a verdict needs at least 4 radii reaching 0.99",
        )),
        other => TaskError::Numeric(other),
    })?;
    let pass = exp.expect.is_none_or(|k| k == verdict.kind);
    if exp.format == Some(Format::Csv) {
        let mut t = Table::new(&["radius", "sup", "argmax", "under_resolved", "verdict"]);
        for k in 0..profile.radii.len() {
            t.push(vec![
                profile.radii[k].into(),
                profile.sup_values[k].into(),
                profile.argmax[k].into(),
                profile.under_resolved[k].into(),
                format!("{:?}", verdict.kind).into(),
            ]);
        }
        return Ok(render(&t, exp, pass));
    }
    Ok(render_json(json!({ "profile": profile, "verdict": verdict }), pass))
}

fn kernel(exp: &Experiment) -> TaskResult {
    let theta = exp.require_theta()?;
    let tol = exp.tol.unwrap_or(1e-9);
    let finite = theta.as_finite_blaschke().cloned();
    let mut all_ok = true;
    let mut t = Table::new(&[
        "w_re",
        "w_im",
        "theta_re",
        "theta_im",
        "norm",
        "k_ww",
        "taylor_norm_sq",
        "abs_error",
        "pass",
    ]);
    for w in points(exp, 20) {
        let norm = kernel_norm(theta, w)?;
        let kww = kernel_eval(theta, w, w)?.re;
        let tv = theta.eval(w)?;
        let (gram, err, ok) = match &finite {
            Some(b) => {
                let k = kernel_rational(theta, w)?;
                let coeffs = k.taylor(b.max_zero_modulus().max(w.norm()))?;
                let g = h2_pairing(&coeffs, &coeffs).re;
                let err = (g - norm * norm).abs();
                (g, err, err <= tol * g.max(1.0))
            }
            None => (f64::NAN, f64::NAN, true),
        };
        all_ok &= ok;
        t.push(vec![
            w.re.into(),
            w.im.into(),
            tv.re.into(),
            tv.im.into(),
            norm.into(),
            kww.into(),
            gram.into(),
            err.into(),
            ok.into(),
        ]);
    }
    Ok(render(&t, exp, all_ok))
}

fn finite_blaschke(theta: &InnerFunction) -> Result<crate::inner::BlaschkeProduct, ConfigError> {
    theta
        .as_finite_blaschke()
        .cloned()
        .ok_or_else(|| ConfigError::new("theta", "basis needs a finite Blaschke product"))
}

fn basis(exp: &Experiment) -> TaskResult {
    let theta = exp.require_theta()?;
    let b = finite_blaschke(theta)?;
    let basis = tm_basis(&b)?;
    let tol = exp.tol.unwrap_or(1e-8);
    let m = basis.dim();
    let mut t = Table::new(&["check", "index", "value", "bound", "pass"]);
    let mut all_ok = true;
    let mut row = |t: &mut Table, name: &str, index: usize, value: f64, bound: f64| {
        let ok = value <= bound;
        all_ok &= ok;
        t.push(vec![name.into(), index.into(), value.into(), bound.into(), ok.into()]);
    };
    row(&mut t, "orthonormality", 0, basis.orthonormality_defect(), 1e-10);
    row(&mut t, "membership", 0, basis.membership_defect()?, 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
    let samples = exp.numerics.sample_count.unwrap_or(20);
    for i in 0..samples {
        let x: Vec<C64> = (0..m)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let w = C64::from_polar(0.95 * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..TAU));
        let r = basis.reproduce_check(&x, w)?;
        let nx = basis.norm(&x)?;
        row(&mut t, "reproduce", i, r.abs_error, tol * (1.0 + nx));
        for n in 1..=m {
            let p = basis.pn_project(&x, n)?;
            let pp = basis.pn_project(&p, n)?;
            let idem = p.iter().zip(&pp).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let resid: Vec<C64> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
            let orth = basis.inner(&resid, &p)?.norm();
            row(&mut t, &format!("pn_idempotence_n{n}"), i, idem, 1e-9);
            row(&mut t, &format!("pn_orthogonality_n{n}"), i, orth, 1e-9);
        }
    }
    Ok(render(&t, exp, all_ok))
}

fn cohn(exp: &Experiment) -> TaskResult {
    let theta = exp.require_theta()?;
    let opts = GradedOptions::default();
    let baseline = cohn_baseline(&exp.f, &opts);
    let mut all_ok = true;
    let mut t = Table::new(&["p", "value", "rel_change", "divergent", "baseline", "ordered"]);
    for &p in exp.numerics.p.as_deref().unwrap_or(&[0.5]) {
        let v = cohn_functional(&exp.f, theta, p, &opts)?;
        let ordered = v.divergent || v.value >= baseline.value * (1.0 - 1e-10);
        all_ok &= ordered;
        t.push(vec![
            p.into(),
            v.value.into(),
            v.rel_change.into(),
            v.divergent.into(),
            baseline.value.into(),
            ordered.into(),
        ]);
    }
    Ok(render(&t, exp, all_ok))
}

fn probe(exp: &Experiment) -> TaskResult {
    let theta = exp.require_theta()?;
    let level = exp.numerics.level.unwrap_or(0.5);
    let grid = exp.numerics.grid_n.unwrap_or(256);
    let p = one_component_probe(theta, level, grid)?;
    if exp.format == Some(Format::Csv) {
        let mut t = Table::new(&["level", "grid_n", "component_count", "cells_in_set", "connected", "caveat"]);
        t.push(vec![
            level.into(),
            grid.into(),
            p.component_count.into(),
            p.cells_in_set.into(),
            p.connected.into(),
            p.caveat.clone().into(),
        ]);
        return Ok(render(&t, exp, true));
    }
    Ok(render_json(json!({ "level": level, "probe": p }), true))
}

fn heatmap(exp: &Experiment) -> TaskResult {
    let phi = exp.require_phi()?;
    let theta = exp.require_theta()?;
    let nr = exp.numerics.heat_radial.unwrap_or(64);
    let na = exp.numerics.heat_angular.unwrap_or(128);
    let sq = sphere(exp, phi, DEFAULT_SPHERE_N);
    let family = SliceFamily::new(phi, sq.as_ref())?;
    let base = family.base_point();
    let mut t = Table::new(&["r", "theta", "value"]);
    for i in 0..nr {
        let r = (i + 1) as f64 / (nr + 1) as f64;
        for j in 0..na {
            let angle = TAU * j as f64 / na as f64;
            let w = C64::from_polar(r, angle);
            let value = if (w - base).norm() < BASE_POINT_SKIP {
                f64::NAN
            } else {
                integrand_from_family(&family, theta, w)?
            };
            t.push(vec![r.into(), angle.into(), Cell::Num(value)]);
        }
    }
    Ok(render(&t, exp, true))
}
