use std::f64::consts::{LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::inner::BlaschkeProduct;
use crate::numerics::{sphere_uniform, DiskQuadrature, DiskRuleSpec, MultiPolynomial, Polynomial};
use crate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn power_map(k: usize) -> SelfMap {
    SelfMap::univariate(Polynomial::monomial(c(1.0, 0.0), k)).unwrap()
}

fn half_map() -> SelfMap {
    SelfMap::univariate(Polynomial::from_real(&[0.0, 0.5])).unwrap()
}

fn random_disk_point(rng: &mut ChaCha8Rng, max: f64) -> C64 {
    C64::from_polar(max * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI))
}

fn random_blaschke(rng: &mut ChaCha8Rng, max_degree: usize) -> BlaschkeProduct {
    let deg = rng.random_range(1..=max_degree);
    let points: Vec<C64> = (0..deg).map(|_| random_disk_point(rng, 0.95)).collect();
    let b = BlaschkeProduct::from_points(&points).unwrap();
    let rotation = C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    BlaschkeProduct::new(b.zeros().to_vec(), rotation).unwrap()
}

#[test]
fn identity_counting_at_half() {
    let s = counting(&power_map(1), c(0.5, 0.0)).unwrap();
    assert!((s.value - LN_2).abs() < 1e-14);
    assert_eq!(s.preimages.len(), 1);
}

#[test]
fn cube_counting_has_three_preimages() {
    let s = counting(&power_map(3), c(0.5, 0.0)).unwrap();
    assert!((s.value - LN_2).abs() < 1e-12);
    assert_eq!(s.preimages.len(), 3);
    for p in &s.preimages {
        assert!((p.z.norm() - 2f64.powf(-1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(p.multiplicity, 1);
    }
}

#[test]
fn half_map_misses_outer_annulus() {
    for w in [c(0.5, 0.0), c(0.0, -0.7), c(0.6, 0.3)] {
        let s = counting(&half_map(), w).unwrap();
        assert_eq!(s.value, 0.0);
        assert!(s.preimages.is_empty());
    }
}

#[test]
fn base_point_is_rejected() {
    assert!(matches!(
        counting(&power_map(2), c(0.0, 0.0)),
        Err(Error::AtBasePoint { .. })
    ));
}

#[test]
fn preimages_solve_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let b = random_blaschke(&mut rng, 4);
        let phi = SelfMap::blaschke(b.clone()).unwrap();
        let w = random_disk_point(&mut rng, 0.99);
        let s = counting(&phi, w).unwrap();
        let total: f64 = s
            .preimages
            .iter()
            .map(|p| p.multiplicity as f64 * (1.0 / p.z.norm()).ln())
            .sum();
        assert!((total - s.value).abs() <= 1e-12);
        for p in &s.preimages {
            assert!((b.eval(p.z) - w).norm() <= 1e-8);
        }
        // an inner map of degree m takes every value m times
        let listed: usize = s.preimages.iter().map(|p| p.multiplicity as usize).sum();
        assert_eq!(listed + s.discarded, b.degree());
    }
}

#[test]
fn identity_counting_is_log_inverse_modulus() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let phi = power_map(1);
    for _ in 0..100 {
        let w = random_disk_point(&mut rng, 1.0);
        let s = counting(&phi, w).unwrap();
        assert!((s.value - (1.0 / w.norm()).ln()).abs() <= 1e-10);
    }
}

#[test]
fn power_counting_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in [2, 5] {
        let phi = power_map(k);
        for _ in 0..100 {
            let w = random_disk_point(&mut rng, 1.0);
            let s = counting(&phi, w).unwrap();
            assert!((s.value - (1.0 / w.norm()).ln()).abs() <= 1e-10, "k={k} w={w}");
        }
    }
}

#[test]
fn counting_is_rotation_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let psi = random_blaschke(&mut rng, 4);
        let theta = rng.random_range(0.0..2.0 * PI);
        let u = C64::from_polar(1.0, theta);
        let rotated =
            BlaschkeProduct::new(psi.zeros().to_vec(), psi.rotation() * u).unwrap();
        let w = random_disk_point(&mut rng, 0.98);
        if (w - rotated.eval(c(0.0, 0.0))).norm() < 1e-6 {
            continue;
        }
        let lhs = counting(&SelfMap::blaschke(rotated).unwrap(), w).unwrap().value;
        let rhs = counting(&SelfMap::blaschke(psi).unwrap(), w * u.conj()).unwrap().value;
        assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn one_dimensional_slice_average_matches_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = SelfMap::univariate(Polynomial::from_real(&[0.1, 0.4, 0.0, 0.3])).unwrap();
    let sq = crate::numerics::SphereQuadrature::circle(16);
    let family = SliceFamily::from_nodes(&phi, &sq).unwrap();
    for _ in 0..20 {
        let w = random_disk_point(&mut rng, 0.7);
        let direct = counting(&phi, w).unwrap().value;
        assert!((family.counting_avg(w).unwrap() - direct).abs() <= 1e-10);
        assert_eq!(counting_avg(&phi, w, &sq).unwrap(), direct);
    }
}

#[test]
fn two_variable_average_closed_form() {
    let phi = SelfMap::polynomial(
        MultiPolynomial::from_terms(2, [(vec![1, 0], c(1.0, 0.0))]).unwrap(),
    )
    .unwrap();
    let sq = sphere_uniform(2, 100_000, 17);
    let u: f64 = 0.25;
    let expected = (u - 1.0 - u.ln()) / 2.0;
    let got = counting_avg(&phi, c(0.5, 0.0), &sq).unwrap();
    assert!((got - expected).abs() < 1e-2, "{got} vs {expected}");
}

#[test]
fn bounded_slices_miss_outer_annulus() {
    let phi = SelfMap::polynomial(
        MultiPolynomial::from_terms(2, [(vec![1, 0], c(0.25, 0.0)), (vec![0, 1], c(0.25, 0.0))])
            .unwrap(),
    )
    .unwrap();
    let sq = sphere_uniform(2, 2_000, 18);
    assert_eq!(counting_avg(&phi, c(0.5, 0.0), &sq).unwrap(), 0.0);
    assert_eq!(counting_avg(&phi, c(0.0, 0.8), &sq).unwrap(), 0.0);
}

#[test]
fn littlewood_examples() {
    let sq = littlewood_bound(&power_map(2), c(0.5, 0.0)).unwrap();
    assert!((sq.bound - LN_2).abs() < 1e-14);
    assert!(sq.margin.abs() < 1e-12 && sq.satisfied);

    let half = littlewood_bound(&half_map(), c(0.4, 0.0)).unwrap();
    assert!((half.value - (1.0 / 0.8f64).ln()).abs() < 1e-12);
    assert!((half.bound - (1.0 / 0.4f64).ln()).abs() < 1e-12);
    assert!(half.satisfied);
}

#[test]
fn littlewood_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..2_000 {
        let phi = SelfMap::blaschke(random_blaschke(&mut rng, 4)).unwrap();
        let w = random_disk_point(&mut rng, 0.999);
        if (w - phi.base_point()).norm() < 1e-8 {
            continue;
        }
        let check = littlewood_bound(&phi, w).unwrap();
        assert!(check.satisfied, "{check:?}");
    }
}

#[test]
fn argument_principle_agrees_with_preimages() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 30 {
        let phi = SelfMap::blaschke(random_blaschke(&mut rng, 4)).unwrap();
        let map = phi.as_disk_map().unwrap();
        let w = random_disk_point(&mut rng, 0.9);
        let s = count_preimages(&map, w).unwrap();
        if s.preimages.iter().any(|p| (p.z.norm() - 0.9).abs() < 1e-4) {
            continue;
        }
        let (counted, listed) = preimage_count_check(&map, w, 0.9).unwrap();
        assert_eq!(counted, listed);
        checked += 1;
    }
}

fn disk() -> DiskQuadrature {
    DiskQuadrature::new(DiskRuleSpec::default())
}

#[test]
fn submean_examples() {
    let dq = disk();
    let z = submean_check(&power_map(1), c(0.5, 0.0), 0.2, None, &dq).unwrap();
    assert!((z.center_value - LN_2).abs() < 1e-14);
    assert!((z.mean_value - LN_2).abs() < 1e-9);
    assert!(z.satisfied);

    let z2 = submean_check(&power_map(2), c(0.5, 0.0), 0.2, None, &dq).unwrap();
    assert!(z2.satisfied);

    assert!(matches!(
        submean_check(&power_map(1), c(0.05, 0.0), 0.1, None, &dq),
        Err(Error::BasePointInDisk)
    ));
    assert!(matches!(
        submean_check(&power_map(1), c(0.85, 0.0), 0.2, None, &dq),
        Err(Error::DiskNotInDomain)
    ));
}

#[test]
fn submean_sweep_on_blaschke_maps() {
    let dq = DiskQuadrature::new(DiskRuleSpec {
        order: 8,
        inner_levels: 4,
        outer_levels: 4,
        angular: 32,
    });
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    while checked < 100 {
        let phi = SelfMap::blaschke(random_blaschke(&mut rng, 3)).unwrap();
        let w = random_disk_point(&mut rng, 0.9);
        let rho = rng.random_range(0.01..(1.0 - w.norm()).min(0.3));
        if (phi.base_point() - w).norm() < rho + 1e-3 {
            continue;
        }
        let check = submean_check(&phi, w, rho, None, &dq).unwrap();
        assert!(check.satisfied, "{check:?}");
        checked += 1;
    }
}

#[test]
fn littlewood_paley_examples() {
    let dq = disk();
    for k in [1, 2] {
        let f = Polynomial::monomial(c(1.0, 0.0), k);
        let check = littlewood_paley_verify(&f, &dq);
        assert!((check.lhs - 1.0).abs() < 1e-14);
        assert!(check.rel_error < 1e-10, "{check:?}");
    }
}

#[test]
fn littlewood_paley_random() {
    let dq = disk();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let deg = rng.random_range(0..=10);
        let coeffs: Vec<C64> = (0..=deg)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let check = littlewood_paley_verify(&Polynomial::new(coeffs), &dq);
        assert!(check.rel_error <= 1e-8, "{check:?}");
    }
}

#[test]
fn stanton_power_and_half_maps() {
    let dq = disk();
    let f = Polynomial::monomial(c(1.0, 0.0), 1);
    let sq = stanton_verify(&f, &power_map(2), &dq, None).unwrap();
    assert!((sq.lhs - 1.0).abs() < 1e-14);
    assert!(sq.rel_error < 1e-6, "{sq:?}");

    let half = stanton_verify(&f, &half_map(), &dq, None).unwrap();
    assert!((half.lhs - 0.25).abs() < 1e-14);
    assert!(half.rel_error < 1e-6, "{half:?}");
    assert!(half.base_point_contribution >= 0.0 && half.base_point_contribution < 1e-6);
}

#[test]
fn stanton_blaschke_map() {
    let dq = disk();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let phi = SelfMap::blaschke(random_blaschke(&mut rng, 3)).unwrap();
    let f = Polynomial::new(vec![c(0.3, 0.1), c(-0.5, 0.2), c(0.0, 0.7)]);
    let check = stanton_verify(&f, &phi, &dq, None).unwrap();
    assert!(check.rel_error < 1e-6, "{check:?}");
}

#[test]
fn stanton_two_variables_coarse() {
    let phi = SelfMap::polynomial(
        MultiPolynomial::from_terms(2, [(vec![1, 0], c(1.0, 0.0))]).unwrap(),
    )
    .unwrap();
    let sq = sphere_uniform(2, 4_000, 21);
    let dq = DiskQuadrature::new(DiskRuleSpec {
        order: 8,
        inner_levels: 12,
        outer_levels: 2,
        angular: 8,
    });
    let f = Polynomial::monomial(c(1.0, 0.0), 1);
    let check = stanton_verify(&f, &phi, &dq, Some(&sq)).unwrap();
    assert!((check.lhs - 0.5).abs() < 3e-2, "{check:?}");
    assert!((check.rhs - 0.5).abs() < 3e-2, "{check:?}");
}
