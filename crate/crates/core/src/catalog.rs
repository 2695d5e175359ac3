//! Built-in `(φ, Θ)` pairs with known answers.

use crate::criterion::VerdictKind;
use crate::inner::{BlaschkeProduct, InnerFunction};
use crate::nevanlinna::SelfMap;
use crate::numerics::{MultiPolynomial, Polynomial};
use crate::C64;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub phi: SelfMap,
    pub theta: InnerFunction,
    pub expected: VerdictKind,
    pub note: &'static str,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn univariate(coeffs: &[f64]) -> SelfMap {
    SelfMap::univariate(Polynomial::from_real(coeffs)).expect("catalog map is a self-map")
}

fn atom() -> InnerFunction {
    InnerFunction::atom(c(1.0), 1.0).expect("valid atom")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let two_zeros = BlaschkeProduct::from_points(&[c(0.5), c(-0.5)]).expect("zeros inside");
    vec![
        CatalogEntry {
            name: "half-atom",
            phi: univariate(&[0.0, 0.5]),
            theta: atom(),
            expected: VerdictKind::Compact,
            note: "phi = z/2 stays in |w| < 1/2",
        },
        CatalogEntry {
            name: "square-atom",
            phi: univariate(&[0.0, 0.0, 1.0]),
            theta: atom(),
            expected: VerdictKind::NonCompact,
            note: "N = log(1/|w|) and 1 - |Theta| -> 1 along the radius to the atom",
        },
        CatalogEntry {
            name: "identity-atom",
            phi: univariate(&[0.0, 1.0]),
            theta: atom(),
            expected: VerdictKind::NonCompact,
            note: "the embedding of K_Theta itself",
        },
        CatalogEntry {
            name: "identity-power4",
            phi: univariate(&[0.0, 1.0]),
            theta: InnerFunction::power(4).expect("valid power"),
            expected: VerdictKind::Compact,
            note: "dim K_Theta = 4",
        },
        CatalogEntry {
            name: "lens-atom",
            phi: univariate(&[0.1, 0.4, 0.3]),
            theta: atom(),
            expected: VerdictKind::Compact,
            note: "|phi| <= 0.8 on the disk",
        },
        CatalogEntry {
            name: "blaschke-pair",
            phi: SelfMap::blaschke(BlaschkeProduct::from_points(&[c(0.0), c(0.3)]).expect("zeros"))
                .expect("nonconstant"),
            theta: InnerFunction::blaschke(two_zeros).expect("valid"),
            expected: VerdictKind::Compact,
            note: "finite-dimensional K_Theta",
        },
        CatalogEntry {
            name: "ball-slice-atom",
            phi: SelfMap::polynomial(
                MultiPolynomial::from_terms(2, [(vec![1, 0], c(1.0))]).expect("dimension 2"),
            )
            .expect("self-map"),
            theta: atom(),
            expected: VerdictKind::Compact,
            note: "phi(z1, z2) = z1 on B_2; the sphere average decays like (1 - |w|)^2",
        },
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
