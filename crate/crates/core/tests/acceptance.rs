//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nevlab::catalog::lookup;
use nevlab::cli;
use nevlab::criterion::{compactness_verdict, criterion_profile, ProfileOptions, VerdictKind};
use nevlab::inner::{BlaschkeProduct, InnerFunction};
use nevlab::model_space::{h2_pairing, kernel_norm, kernel_rational, tm_basis};
use nevlab::nevanlinna::{
    counting, counting_avg, littlewood_bound, littlewood_paley_verify, stanton_verify,
    submean_check, SelfMap,
};
use nevlab::numerics::{sphere_uniform, DiskQuadrature, DiskRuleSpec, MultiPolynomial, Polynomial};
use nevlab::C64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_point(rng: &mut ChaCha8Rng, max: f64) -> C64 {
    C64::from_polar(max * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI))
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Polynomial {
    let deg = rng.random_range(0..=max_degree);
    Polynomial::new(
        (0..=deg)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    )
}

fn random_blaschke(rng: &mut ChaCha8Rng, max_degree: usize, max_modulus: f64) -> BlaschkeProduct {
    let deg = rng.random_range(1..=max_degree);
    let points: Vec<C64> = (0..deg).map(|_| random_point(rng, max_modulus)).collect();
    let b = BlaschkeProduct::from_points(&points).unwrap();
    let rotation = C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    BlaschkeProduct::new(b.zeros().to_vec(), rotation).unwrap()
}

fn univariate(coeffs: &[f64]) -> SelfMap {
    SelfMap::univariate(Polynomial::from_real(coeffs)).unwrap()
}

fn first_coordinate() -> SelfMap {
    SelfMap::polynomial(MultiPolynomial::from_terms(2, [(vec![1, 0], c(1.0, 0.0))]).unwrap()).unwrap()
}

fn timed(limit: Duration, elapsed: Duration, pass: bool, detail: String) -> Outcome {
    let in_time = elapsed <= limit;
    Outcome {
        pass: pass && in_time,
        detail: format!("{detail}; {:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()),
    }
}

fn littlewood_paley() -> Outcome {
    let start = Instant::now();
    let dq = DiskQuadrature::new(DiskRuleSpec::default());
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let random_worst = (0..20)
        .map(|_| littlewood_paley_verify(&random_poly(&mut rng, 10), &dq).rel_error)
        .fold(0.0, f64::max);
    let exact_worst = [1, 2]
        .iter()
        .map(|&k| littlewood_paley_verify(&Polynomial::monomial(c(1.0, 0.0), k), &dq).rel_error)
        .fold(0.0, f64::max);
    timed(
        Duration::from_secs(5),
        start.elapsed(),
        random_worst <= 1e-8 && exact_worst <= 1e-10,
        format!("random max rel {random_worst:.2e} (<= 1e-8), z and z^2 max rel {exact_worst:.2e} (<= 1e-10)"),
    )
}

fn stanton_one_variable() -> Outcome {
    let start = Instant::now();
    let dq = DiskQuadrature::new(DiskRuleSpec::default());
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut maps = vec![univariate(&[0.0, 0.0, 1.0]), univariate(&[0.0, 0.5])];
    for _ in 0..10 {
        maps.push(SelfMap::blaschke(random_blaschke(&mut rng, 4, 0.9)).unwrap());
    }
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for phi in &maps {
        let mut fs = vec![Polynomial::monomial(c(1.0, 0.0), 1)];
        fs.push(random_poly(&mut rng, 8));
        for f in &fs {
            match stanton_verify(f, phi, &dq, None) {
                Ok(s) => worst = worst.max(s.rel_error),
                Err(_) => failures += 1,
            }
        }
    }
    timed(
        Duration::from_secs(60),
        start.elapsed(),
        failures == 0 && worst <= 1e-6,
        format!("{} maps x 2 test functions, max rel {worst:.2e} (<= 1e-6), {failures} errors", maps.len()),
    )
}

fn stanton_two_variables() -> Outcome {
    let start = Instant::now();
    let sq = sphere_uniform(2, 100_000, 303);
    let dq = DiskQuadrature::new(DiskRuleSpec {
        order: 8,
        inner_levels: 12,
        outer_levels: 2,
        angular: 8,
    });
    let f = Polynomial::monomial(c(1.0, 0.0), 1);
    let s = stanton_verify(&f, &first_coordinate(), &dq, Some(&sq)).unwrap();
    timed(
        Duration::from_secs(120),
        start.elapsed(),
        (s.lhs - 0.5).abs() <= 1e-2 && (s.rhs - 0.5).abs() <= 1e-2,
        format!("lhs {:.6}, rhs {:.6} (1/2 +- 1e-2), n = 1e5", s.lhs, s.rhs),
    )
}

fn counting_closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst: f64 = 0.0;
    for k in [1, 2, 3, 5] {
        let phi = SelfMap::univariate(Polynomial::monomial(c(1.0, 0.0), k)).unwrap();
        for _ in 0..100 {
            let w = random_point(&mut rng, 1.0);
            let v = counting(&phi, w).unwrap().value;
            worst = worst.max((v - (1.0 / w.norm()).ln()).abs());
        }
    }
    let sq = sphere_uniform(2, 100_000, 405);
    let phi = first_coordinate();
    let mut avg_worst: f64 = 0.0;
    for modulus in [0.2, 0.5, 0.7, 0.9] {
        let w = C64::from_polar(modulus, 0.3);
        let u: f64 = modulus * modulus;
        let expected = (u - 1.0 - u.ln()) / 2.0;
        avg_worst = avg_worst.max((counting_avg(&phi, w, &sq).unwrap() - expected).abs());
    }
    Outcome {
        pass: worst <= 1e-10 && avg_worst <= 1e-2,
        detail: format!("N_(z^k) max abs {worst:.2e} (<= 1e-10), sphere average max abs {avg_worst:.2e} (<= 1e-2)"),
    }
}

fn littlewood_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut violations = 0;
    let mut checked = 0;
    let mut min_margin = f64::INFINITY;
    while checked < 10_000 {
        let phi = SelfMap::blaschke(random_blaschke(&mut rng, 4, 0.99)).unwrap();
        let w = random_point(&mut rng, 0.999);
        if (w - phi.base_point()).norm() < 1e-8 {
            continue;
        }
        let check = littlewood_bound(&phi, w).unwrap();
        if !check.satisfied {
            violations += 1;
        }
        min_margin = min_margin.min(check.margin);
        checked += 1;
    }
    Outcome {
        pass: violations == 0,
        detail: format!("{checked} pairs, {violations} violations, smallest margin {min_margin:.2e}"),
    }
}

fn submean_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let dq = DiskQuadrature::new(DiskRuleSpec {
        order: 10,
        inner_levels: 4,
        outer_levels: 4,
        angular: 32,
    });
    let ball_dq = DiskQuadrature::new(DiskRuleSpec {
        order: 6,
        inner_levels: 2,
        outer_levels: 2,
        angular: 16,
    });
    let ball_sq = sphere_uniform(2, 200, 607);
    let ball_maps = [
        first_coordinate(),
        SelfMap::polynomial(
            MultiPolynomial::from_terms(
                2,
                [(vec![1, 0], c(0.5, 0.0)), (vec![0, 2], c(0.0, 0.4)), (vec![1, 1], c(0.1, 0.0))],
            )
            .unwrap(),
        )
        .unwrap(),
    ];
    let mut violations = 0;
    let mut errors = 0;
    let mut checked = 0;
    while checked < 1_000 {
        let kind = checked % 10;
        let phi = match kind {
            0..=5 => SelfMap::blaschke(random_blaschke(&mut rng, 4, 0.95)).unwrap(),
            6..=7 => {
                let a = rng.random_range(0.1..0.45);
                let b = rng.random_range(-0.15..0.15);
                SelfMap::univariate(Polynomial::new(vec![c(b, 0.1), c(a, 0.0), c(0.0, 0.35)])).unwrap()
            }
            _ => ball_maps[kind - 8].clone(),
        };
        let w = random_point(&mut rng, 0.95);
        let rho = rng.random_range(0.01..(1.0 - w.norm()).min(0.4));
        if (phi.base_point() - w).norm() < rho + 1e-3 {
            continue;
        }
        let result = if phi.dim() == 1 {
            submean_check(&phi, w, rho, None, &dq)
        } else {
            submean_check(&phi, w, rho, Some(&ball_sq), &ball_dq)
        };
        match result {
            Ok(s) if !s.satisfied => violations += 1,
            Ok(_) => {}
            Err(_) => errors += 1,
        }
        checked += 1;
    }
    Outcome {
        pass: violations == 0 && errors == 0,
        detail: format!("{checked} configurations (one and two variables), {violations} violations, {errors} errors"),
    }
}

fn kernel_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut norm_worst: f64 = 0.0;
    for _ in 0..50 {
        let b = random_blaschke(&mut rng, 5, 0.9);
        let w = random_point(&mut rng, 0.95);
        let theta = InnerFunction::blaschke(b.clone()).unwrap();
        let k = kernel_rational(&theta, w).unwrap();
        let t = k.taylor(b.max_zero_modulus().max(w.norm())).unwrap();
        let gram = h2_pairing(&t, &t).re;
        let n = kernel_norm(&theta, w).unwrap();
        norm_worst = norm_worst.max((n * n - gram).abs() / gram.max(1.0));
    }
    let mut reproduce_worst: f64 = 0.0;
    let mut pn_worst: f64 = 0.0;
    for _ in 0..10 {
        let b = random_blaschke(&mut rng, 5, 0.9);
        let basis = tm_basis(&b).unwrap();
        let m = basis.dim();
        for _ in 0..20 {
            let x: Vec<C64> = (0..m).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let w = random_point(&mut rng, 0.95);
            let r = basis.reproduce_check(&x, w).unwrap();
            reproduce_worst = reproduce_worst.max(r.abs_error / (1.0 + basis.norm(&x).unwrap()));
            for n in 0..=m {
                let p = basis.pn_project(&x, n).unwrap();
                let pp = basis.pn_project(&p, n).unwrap();
                let idem = p.iter().zip(&pp).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                let resid: Vec<C64> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
                let orth = basis.inner(&resid, &p).unwrap().norm();
                pn_worst = pn_worst.max(idem).max(orth);
            }
        }
    }
    Outcome {
        pass: norm_worst <= 1e-9 && reproduce_worst <= 1e-8 && pn_worst <= 1e-9,
        detail: format!(
            "kernel norm {norm_worst:.2e} (<= 1e-9), reproduce {reproduce_worst:.2e} (<= 1e-8), P_n {pn_worst:.2e} (<= 1e-9)"
        ),
    }
}

fn catalog_verdicts() -> Outcome {
    let start = Instant::now();
    let radii = [0.9, 0.99, 0.995, 0.999];
    let opts = ProfileOptions::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, expected) in [
        ("half-atom", VerdictKind::Compact),
        ("square-atom", VerdictKind::NonCompact),
        ("identity-power4", VerdictKind::Compact),
    ] {
        let e = lookup(name).unwrap();
        let p = criterion_profile(&e.phi, &e.theta, &radii, &opts, None).unwrap();
        let v = compactness_verdict(&p, 0.05).unwrap();
        pass &= v.kind == expected;
        if expected == VerdictKind::NonCompact {
            let last = p.sup_values[3];
            pass &= (last - 1.0).abs() <= 0.05;
            parts.push(format!("{name} {:?} (sup at 0.999 = {last:.5})", v.kind));
        } else {
            parts.push(format!("{name} {:?}", v.kind));
        }
    }
    timed(Duration::from_secs(60), start.elapsed(), pass, parts.join(", "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        ("verify-lp", r#"{"version": "1", "f": [[0.1, 0], [0.3, -0.2], [0, 0.7]]}"#),
        ("verify-stanton", r#"{"version": "1", "phi": {"kind": "blaschke", "zeros": [{"point": [0.3, 0.2]}, {"point": [-0.4, 0]}]}, "f": [[0, 0], [1, 0], [0.5, 0]]}"#),
        ("verify-stanton", r#"{"version": "1", "catalog": "ball-slice-atom", "numerics": {"sphere_n": 2000}}"#),
        ("counting", r#"{"version": "1", "catalog": "square-atom"}"#),
        ("criterion", r#"{"version": "1", "catalog": "ball-slice-atom", "numerics": {"sphere_n": 1000, "angular_count": 16}}"#),
        ("criterion", r#"{"version": "1", "catalog": "square-atom", "output": {"format": "csv"}}"#),
        ("kernel", r#"{"version": "1", "catalog": "blaschke-pair"}"#),
        ("basis", r#"{"version": "1", "catalog": "blaschke-pair"}"#),
        ("cohn", r#"{"version": "1", "catalog": "identity-power4", "numerics": {"p": [0.5]}}"#),
        ("probe", r#"{"version": "1", "catalog": "blaschke-pair", "numerics": {"level": 0.3}}"#),
        ("heatmap", r#"{"version": "1", "catalog": "square-atom", "numerics": {"heat_radial": 16, "heat_angular": 32}}"#),
    ];
    let mut identical = 0;
    let mut problems = Vec::new();
    for (k, (task, text)) in configs.iter().enumerate() {
        let cfg = dir.path().join(format!("c{k}.json"));
        std::fs::write(&cfg, text).unwrap();
        let mut artifacts = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("out{k}_{run}"));
            let args = [
                "nevlab",
                task,
                "--config",
                cfg.to_str().unwrap(),
                "--seed",
                "11",
                "--out",
                out.to_str().unwrap(),
            ];
            let code = cli::run(args, &mut std::io::sink(), &mut std::io::sink());
            if code != 0 {
                problems.push(format!("{task} exit {code}"));
            }
            artifacts.push(std::fs::read(&out).unwrap_or_default());
        }
        if artifacts[0] == artifacts[1] && !artifacts[0].is_empty() {
            identical += 1;
        } else {
            problems.push(format!("{task} differs"));
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "{identical}/{} artifacts byte-identical across two runs{}",
            configs.len(),
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join(", ")) }
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Littlewood-Paley identity", littlewood_paley),
        ("Stanton formula, one variable", stanton_one_variable),
        ("Stanton formula, two variables", stanton_two_variables),
        ("counting function closed forms", counting_closed_forms),
        ("Littlewood inequality sweep", littlewood_sweep),
        ("sub-mean-value sweep", submean_sweep),
        ("kernel algebra", kernel_algebra),
        ("catalog verdicts", catalog_verdicts),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!("{tag} [{}] {name}: {}", k + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
