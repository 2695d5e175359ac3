use serde::{Deserialize, Serialize};

use super::{DiskMap, SelfMap};
use crate::error::{Error, Result};
use crate::numerics::{poly_roots, zeros_in_disk, SphereQuadrature};
use crate::C64;

/// `w` closer than this to `φ(0)` is treated as the base point.
pub const BASE_POINT_TOL: f64 = 1e-10;
/// Roots with `|z| ≥ 1 - BOUNDARY_DISCARD` are dropped.
pub const BOUNDARY_DISCARD: f64 = 1e-12;
/// Roots closer than this are merged into one preimage.
pub const MERGE_RADIUS: f64 = 1e-7;
/// Slack allowed when testing Littlewood's inequality.
pub const LITTLEWOOD_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Preimage {
    pub z: C64,
    pub multiplicity: u32,
}

/// `N_φ(w)` together with the preimages it was summed over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingSample {
    pub w: C64,
    pub preimages: Vec<Preimage>,
    pub value: f64,
    /// Roots in the thin annulus `1 - 1e-12 ≤ |z| < 1`, left out of the sum.
    pub discarded: usize,
}

/// Nevanlinna counting function of a one-variable self-map,
/// `N_φ(w) = Σ_{φ(z) = w} log(1/|z|)` with multiplicity.
pub fn counting(phi: &SelfMap, w: C64) -> Result<CountingSample> {
    count_preimages(&phi.as_disk_map()?, w)
}

pub fn count_preimages(map: &DiskMap, w: C64) -> Result<CountingSample> {
    if map.is_constant() {
        return Err(Error::ConstantMap);
    }
    let base = map.base_point();
    if (w - base).norm() < BASE_POINT_TOL {
        return Err(Error::AtBasePoint { w, base });
    }
    let roots = poly_roots(&map.preimage_equation(w))?;

    let mut preimages: Vec<Preimage> = Vec::new();
    let mut discarded = 0;
    for z in roots {
        let r = z.norm();
        if r >= 1.0 {
            continue;
        }
        if r >= 1.0 - BOUNDARY_DISCARD {
            discarded += 1;
            continue;
        }
        match preimages
            .iter_mut()
            .find(|p| (p.z - z).norm() < MERGE_RADIUS)
        {
            Some(p) => {
                let m = p.multiplicity as f64;
                p.z = (p.z * m + z) / (m + 1.0);
                p.multiplicity += 1;
            }
            None => preimages.push(Preimage { z, multiplicity: 1 }),
        }
    }
    let value = preimages
        .iter()
        .map(|p| p.multiplicity as f64 * -p.z.norm().ln())
        .sum();
    Ok(CountingSample {
        w,
        preimages,
        value,
        discarded,
    })
}

/// Argument-principle count of solutions of `φ(z) = w` in `|z| < radius`
/// next to the number of listed preimages there, for cross-checking.
pub fn preimage_count_check(map: &DiskMap, w: C64, radius: f64) -> Result<(usize, usize)> {
    let sample = count_preimages(map, w)?;
    let listed = sample
        .preimages
        .iter()
        .filter(|p| p.z.norm() < radius)
        .map(|p| p.multiplicity as usize)
        .sum();
    let counted = zeros_in_disk(&map.preimage_equation(w), C64::new(0.0, 0.0), radius)?;
    Ok((counted, listed))
}

/// The slices `φ_ζ` of a self-map at the nodes of a sphere rule, prepared
/// once for repeated averaging.
#[derive(Clone, Debug)]
pub struct SliceFamily {
    base: C64,
    /// `None` marks a constant slice, which contributes nothing.
    slices: Vec<(f64, Option<DiskMap>)>,
}

impl SliceFamily {
    /// For `d = 1` every slice has the same counting function as `φ` itself,
    /// so the family is the single map with weight 1 and `sq` is ignored.
    pub fn new(phi: &SelfMap, sq: Option<&SphereQuadrature>) -> Result<Self> {
        let base = phi.base_point();
        if phi.dim() == 1 {
            return Ok(Self {
                base,
                slices: vec![(1.0, Some(phi.as_disk_map()?))],
            });
        }
        let sq = sq.ok_or_else(|| {
            Error::Invalid("a sphere quadrature is required for d >= 2".into())
        })?;
        if sq.dim() != phi.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi.dim(),
                found: sq.dim(),
            });
        }
        Self::from_nodes(phi, sq)
    }

    /// Slices at every node of `sq`, including for `d = 1`.
    pub fn from_nodes(phi: &SelfMap, sq: &SphereQuadrature) -> Result<Self> {
        let slices = sq
            .iter()
            .map(|(zeta, weight)| {
                let map = phi.slice(zeta)?;
                Ok((weight, (!map.is_constant()).then_some(map)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: phi.base_point(),
            slices,
        })
    }

    pub fn base_point(&self) -> C64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// `∫_{∂B_d} N_{φ_ζ}(w) dσ_d(ζ)` by the prepared rule.
    pub fn counting_avg(&self, w: C64) -> Result<f64> {
        if (w - self.base).norm() < BASE_POINT_TOL {
            return Err(Error::AtBasePoint { w, base: self.base });
        }
        let mut total = 0.0;
        for (weight, map) in &self.slices {
            if let Some(map) = map {
                total += weight * count_preimages(map, w)?.value;
            }
        }
        Ok(total)
    }
}

/// Sphere average of the slice counting functions of `φ` at `w`.
pub fn counting_avg(phi: &SelfMap, w: C64, sq: &SphereQuadrature) -> Result<f64> {
    SliceFamily::new(phi, Some(sq))?.counting_avg(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LittlewoodCheck {
    pub bound: f64,
    pub value: f64,
    pub satisfied: bool,
    pub margin: f64,
}

/// Compares `N_φ(w)` with `log|(1 - conj(w) φ(0))/(φ(0) - w)|`.
pub fn littlewood_bound(phi: &SelfMap, w: C64) -> Result<LittlewoodCheck> {
    let a = phi.base_point();
    if (w - a).norm() < BASE_POINT_TOL {
        return Err(Error::AtBasePoint { w, base: a });
    }
    let bound = ((C64::new(1.0, 0.0) - w.conj() * a) / (a - w)).norm().ln();
    let value = counting(phi, w)?.value;
    Ok(LittlewoodCheck {
        bound,
        value,
        satisfied: value <= bound + LITTLEWOOD_SLACK,
        margin: bound - value,
    })
}
