use serde::{Deserialize, Serialize};

use super::CriterionProfile;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    Compact,
    NonCompact,
    Inconclusive,
}

/// Numerical reading of the radial limit; an indicator, not a proof.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub tol: f64,
    /// The last three sup values.
    pub tail: [f64; 3],
    /// Least-squares slope of the sup values against `-log10(1 - r)`.
    pub trend: f64,
    pub reason: String,
}

pub fn compactness_verdict(profile: &CriterionProfile, tol: f64) -> Result<Verdict> {
    let k = profile.radii.len();
    let last_radius = profile.radii.last().copied().unwrap_or(0.0);
    if k < 4 || last_radius < 0.99 || profile.sup_values.len() != k {
        return Err(Error::InsufficientProfile);
    }
    let v = &profile.sup_values;
    let tail = [v[k - 3], v[k - 2], v[k - 1]];
    let trend = slope(&profile.radii, v);

    let below = tail.iter().all(|&x| x < tol);
    let falling = tail.windows(2).all(|p| p[1] <= p[0]);
    let above = tail.iter().all(|&x| x > 10.0 * tol);
    let holding = tail.windows(2).all(|p| p[1] >= 0.95 * p[0]);

    let (kind, reason) = if below && falling {
        (VerdictKind::Compact, format!("last three sups below {tol:e} and non-increasing"))
    } else if above && holding {
        (
            VerdictKind::NonCompact,
            format!("last three sups above {:e} and not falling by more than 5%", 10.0 * tol),
        )
    } else {
        let why = match (below, falling, above, holding) {
            (true, false, _, _) => "tail below tolerance but not monotone",
            (_, _, true, false) => "tail large but falling",
            _ => "tail between tolerance and ten times tolerance",
        };
        (VerdictKind::Inconclusive, format!("{why}; trend {trend:.3e} per decade"))
    };
    Ok(Verdict {
        kind,
        tol,
        tail,
        trend,
        reason,
    })
}

fn slope(radii: &[f64], values: &[f64]) -> f64 {
    let x: Vec<f64> = radii.iter().map(|r| -(1.0 - r).log10()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = values.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(values).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
