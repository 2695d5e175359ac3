use crate::C64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is constant (degree < 1)")]
    ConstantPolynomial,
    #[error("root finder did not converge; worst residual {worst_residual:e} exceeds {bound:e}")]
    NoConvergence {
        residuals: Vec<f64>,
        worst_residual: f64,
        bound: f64,
    },
    #[error("function has a zero near the contour (min modulus {min_modulus:e})")]
    ZeroNearContour { min_modulus: f64 },
    #[error("winding integral {value} is not close to an integer")]
    NonIntegerWinding { value: f64 },
    #[error("radius {0} is outside (0, 1)")]
    BadRadius(f64),
    #[error("vector has norm {0}, expected a unit vector")]
    NotUnitVector(f64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {0} lies on an atom of the singular factor")]
    AtomSingularity(C64),
    #[error("point {0} lies outside the closed unit disk")]
    OutsideDisk(C64),
    #[error("point {w} coincides with the base point {base}")]
    AtBasePoint { w: C64, base: C64 },
    #[error("self-map is constant")]
    ConstantMap,
    #[error("map is not a self-map of the disk (sampled modulus {0})")]
    NotSelfMap(f64),
    #[error("base point lies in the averaging disk")]
    BasePointInDisk,
    #[error("averaging disk is not contained in the unit disk")]
    DiskNotInDomain,
    #[error("|Theta(w_{index})| = {modulus} is not below {bound}")]
    SequenceViolation {
        index: usize,
        modulus: f64,
        bound: f64,
    },
    #[error("profile needs at least 4 radii reaching 0.99 or more")]
    InsufficientProfile,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
