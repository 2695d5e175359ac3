use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::C64;

/// Weighted point set on the complex unit sphere `∂B_d`, standing in for
/// the normalized surface measure `σ_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereQuadrature {
    dim: usize,
    points: Vec<C64>,
    weights: Vec<f64>,
    seed: Option<u64>,
}

/// Compact description of how a [`SphereQuadrature`] was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereDescriptor {
    pub dim: usize,
    pub count: usize,
    pub seed: Option<u64>,
}

/// `n` seeded Monte Carlo points: normalized `2d`-dimensional standard
/// Gaussian vectors, equal weights.
pub fn sphere_uniform(dim: usize, n: usize, seed: u64) -> SphereQuadrature {
    assert!(dim >= 1 && n >= 1, "sphere_uniform needs d >= 1 and n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(dim * n);
    let mut raw = vec![C64::new(0.0, 0.0); dim];
    for _ in 0..n {
        let norm = loop {
            for c in raw.iter_mut() {
                *c = C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
            }
            let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-150 {
                break norm;
            }
        };
        points.extend(raw.iter().map(|&c| c / norm));
    }
    SphereQuadrature {
        dim,
        points,
        weights: vec![1.0 / n as f64; n],
        seed: Some(seed),
    }
}

impl SphereQuadrature {
    /// Equispaced points on the unit circle (`d = 1`).
    pub fn circle(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            dim: 1,
            points: (0..n)
                .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
                .collect(),
            weights: vec![1.0 / n as f64; n],
            seed: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn point(&self, j: usize) -> &[C64] {
        &self.points[j * self.dim..(j + 1) * self.dim]
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[C64], f64)> + '_ {
        self.points.chunks(self.dim).zip(self.weights.iter().copied())
    }

    pub fn descriptor(&self) -> SphereDescriptor {
        SphereDescriptor {
            dim: self.dim,
            count: self.len(),
            seed: self.seed,
        }
    }

    /// `Σ_j weight_j · f(ζ_j)`.
    pub fn average<F: FnMut(&[C64]) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(z, w)| w * f(z)).sum()
    }
}
