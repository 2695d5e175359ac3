//! Model spaces `K_Θ`: reproducing kernels, Takenaka–Malmquist bases for
//! finite Blaschke products, the projectors `P_n`, and the Cohn functional.

mod basis;
mod cohn;
mod kernel;
mod rational;

pub use basis::{tm_basis, ModelSpaceBasis, ReproduceCheck};
pub use cohn::{cohn_baseline, cohn_functional, CohnValue, DIVERGENCE_TOL};
pub use kernel::{
    kernel_derivative, kernel_derivative_bound_check, kernel_eval, kernel_norm, kernel_rational,
    pseudo_disk_contains, DerivativeBoundRow, KernelPoint,
};
pub use rational::{h2_pairing, RationalFunction, MIN_TAYLOR_TERMS, TAYLOR_TAIL_TOL};
