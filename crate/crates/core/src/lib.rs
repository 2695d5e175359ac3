//! Numerical laboratory for composition operators on model spaces.
//!
//! The crate evaluates inner functions, Nevanlinna counting functions of
//! polynomial and Blaschke self-maps, reproducing kernels of model spaces
//! `K_Θ`, and the radial criterion that decides compactness of
//! `C_φ: K_Θ → H^2(B_d)`, together with numerical checks of the
//! Littlewood–Paley and Stanton area formulas.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod criterion;
pub mod error;
pub mod inner;
pub mod model_space;
pub mod nevanlinna;
pub mod numerics;

pub use error::{Error, Result};

/// Complex double.
pub type C64 = num_complex::Complex<f64>;
