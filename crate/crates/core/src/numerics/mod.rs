//! Numerical substrate: polynomials, root finding, contour counting,
//! disk/sphere quadrature and Hardy norms.

mod contour;
mod hardy;
mod multi;
mod polynomial;
mod quadrature;
mod roots;
mod sphere;

pub use contour::{zeros_in_disk, zeros_in_disk_with, ContourOptions};
pub use hardy::{circle_mean_pow, hardy2_norm, hardy_norm_ball};
pub use multi::{MultiPolynomial, UNIT_VECTOR_TOL};
pub use polynomial::Polynomial;
pub use quadrature::{
    integrate_graded, DiskPoint, DiskQuadrature, DiskRuleSpec, GradedIntegral, GradedOptions,
};
pub use roots::poly_roots;
pub use sphere::{sphere_uniform, SphereDescriptor, SphereQuadrature};

use crate::C64;

/// A function holomorphic on (a neighborhood of) the region where it is
/// sampled, with its complex derivative.
pub trait Holomorphic {
    fn value(&self, z: C64) -> C64;
    fn derivative(&self, z: C64) -> C64;
}

impl<T: Holomorphic + ?Sized> Holomorphic for &T {
    fn value(&self, z: C64) -> C64 {
        (**self).value(z)
    }

    fn derivative(&self, z: C64) -> C64 {
        (**self).derivative(z)
    }
}
