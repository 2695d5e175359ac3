use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::{BlaschkeProduct, BlaschkeZero};
use crate::numerics::{sphere_uniform, MultiPolynomial, Polynomial};
use crate::C64;

/// Radii of the spheres on which a polynomial self-map is sampled.
pub const CERTIFY_RADII: [f64; 3] = [0.9, 0.99, 0.999];
/// Sample points per certification sphere.
pub const CERTIFY_SAMPLES: usize = 10_000;
const CERTIFY_SEED: u64 = 0x5eed_0001;

/// Outcome of sampling `|φ|` near the boundary sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Certificate {
    /// Largest sampled modulus, below `1 - 1e-6`.
    Bounded(f64),
    /// Sampled modulus came within `1e-6` of 1 (e.g. inner maps).
    BoundaryTouching,
}

/// Holomorphic self-map of the disk in one variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DiskMap {
    Polynomial(Polynomial),
    Blaschke(BlaschkeProduct),
}

impl DiskMap {
    pub fn eval(&self, z: C64) -> C64 {
        match self {
            DiskMap::Polynomial(p) => p.eval(z),
            DiskMap::Blaschke(b) => b.eval(z),
        }
    }

    pub fn base_point(&self) -> C64 {
        self.eval(C64::new(0.0, 0.0))
    }

    pub fn is_constant(&self) -> bool {
        match self {
            DiskMap::Polynomial(p) => p.is_constant(),
            DiskMap::Blaschke(b) => b.degree() == 0,
        }
    }

    /// Polynomial whose zeros are the solutions of `φ(z) = w`.
    pub fn preimage_equation(&self, w: C64) -> Polynomial {
        match self {
            DiskMap::Polynomial(p) => p - &Polynomial::constant(w),
            DiskMap::Blaschke(b) => {
                let (num, den) = b.rational_parts();
                &num - &den.scale(w)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum MapBody {
    Polynomial(MultiPolynomial),
    Blaschke(BlaschkeProduct),
}

/// Holomorphic `φ: B_d → 𝔻`, polynomial in `d` variables or a finite
/// Blaschke product when `d = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfMap {
    body: MapBody,
    certificate: Certificate,
}

impl SelfMap {
    /// Validates a polynomial map by sampling `|φ|` on spheres of radius
    /// 0.9, 0.99 and 0.999.
    pub fn polynomial(p: MultiPolynomial) -> Result<Self> {
        if p.is_constant() {
            return Err(Error::ConstantMap);
        }
        let sup = sampled_sup(&p);
        if !(sup < 1.0) {
            return Err(Error::NotSelfMap(sup));
        }
        let certificate = if sup < 1.0 - 1e-6 {
            Certificate::Bounded(sup)
        } else {
            Certificate::BoundaryTouching
        };
        Ok(Self {
            body: MapBody::Polynomial(p),
            certificate,
        })
    }

    pub fn univariate(p: Polynomial) -> Result<Self> {
        Self::polynomial(MultiPolynomial::from_univariate(&p))
    }

    pub fn blaschke(b: BlaschkeProduct) -> Result<Self> {
        if b.degree() == 0 {
            return Err(Error::ConstantMap);
        }
        Ok(Self {
            body: MapBody::Blaschke(b),
            certificate: Certificate::BoundaryTouching,
        })
    }

    pub fn body(&self) -> &MapBody {
        &self.body
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn dim(&self) -> usize {
        match &self.body {
            MapBody::Polynomial(p) => p.dim(),
            MapBody::Blaschke(_) => 1,
        }
    }

    /// `φ(0)`.
    pub fn base_point(&self) -> C64 {
        match &self.body {
            MapBody::Polynomial(p) => p.constant_term(),
            MapBody::Blaschke(b) => b.eval(C64::new(0.0, 0.0)),
        }
    }

    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        match &self.body {
            MapBody::Polynomial(p) => p.eval(z),
            MapBody::Blaschke(b) => {
                if z.len() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        found: z.len(),
                    });
                }
                Ok(b.eval(z[0]))
            }
        }
    }

    /// The slice `λ ↦ φ(λζ)` as a one-variable map.
    pub fn slice(&self, zeta: &[C64]) -> Result<DiskMap> {
        match &self.body {
            MapBody::Polynomial(p) => Ok(DiskMap::Polynomial(p.slice(zeta)?)),
            MapBody::Blaschke(b) => {
                if zeta.len() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        found: zeta.len(),
                    });
                }
                let u = zeta[0];
                if (u.norm() - 1.0).abs() > crate::numerics::UNIT_VECTOR_TOL {
                    return Err(Error::NotUnitVector(u.norm()));
                }
                // b_a(λu) = b_{a/u}(λ) for a ≠ 0, and λu = u·b_0(λ)
                let mut rotation = b.rotation();
                let zeros = b
                    .zeros()
                    .iter()
                    .map(|z| {
                        if z.point.norm_sqr() == 0.0 {
                            rotation *= u.powu(z.multiplicity);
                            *z
                        } else {
                            BlaschkeZero {
                                point: z.point / u,
                                multiplicity: z.multiplicity,
                            }
                        }
                    })
                    .collect();
                Ok(DiskMap::Blaschke(BlaschkeProduct::new(
                    zeros,
                    rotation / rotation.norm(),
                )?))
            }
        }
    }

    /// The map itself as a one-variable map, when `d = 1`.
    pub fn as_disk_map(&self) -> Result<DiskMap> {
        match &self.body {
            MapBody::Blaschke(b) => Ok(DiskMap::Blaschke(b.clone())),
            MapBody::Polynomial(p) if p.dim() == 1 => Ok(DiskMap::Polynomial(
                p.slice(&[C64::new(1.0, 0.0)])?,
            )),
            MapBody::Polynomial(p) => Err(Error::DimensionMismatch {
                expected: 1,
                found: p.dim(),
            }),
        }
    }

    /// `z ↦ φ(s z)` for `0 < s ≤ 1`.
    pub fn dilate(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::Invalid(format!("dilation factor {s} not in (0, 1]")));
        }
        match &self.body {
            MapBody::Polynomial(p) => {
                let terms = p.terms().map(|(alpha, c)| {
                    let m: u32 = alpha.iter().sum();
                    (alpha.to_vec(), c * s.powi(m as i32))
                });
                Self::polynomial(MultiPolynomial::from_terms(p.dim(), terms)?)
            }
            MapBody::Blaschke(_) => Err(Error::Invalid(
                "dilation is only supported for polynomial maps".into(),
            )),
        }
    }
}

fn sampled_sup(p: &MultiPolynomial) -> f64 {
    let dim = p.dim();
    let mut sup = 0.0f64;
    if dim == 1 {
        for r in CERTIFY_RADII {
            for k in 0..CERTIFY_SAMPLES {
                let z = C64::from_polar(r, 2.0 * PI * k as f64 / CERTIFY_SAMPLES as f64);
                sup = sup.max(p.eval_unchecked(&[z]).norm());
            }
        }
    } else {
        let sq = sphere_uniform(dim, CERTIFY_SAMPLES, CERTIFY_SEED);
        let mut point = vec![C64::new(0.0, 0.0); dim];
        for r in CERTIFY_RADII {
            for (zeta, _) in sq.iter() {
                for (dst, &z) in point.iter_mut().zip(zeta) {
                    *dst = z * r;
                }
                sup = sup.max(p.eval_unchecked(&point).norm());
            }
        }
    }
    sup
}
