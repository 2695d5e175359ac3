//! The radial compactness criterion: integrand, sup-profiles over circles,
//! verdicts, and the one-component probe.

mod probe;
mod profile;
mod verdict;

pub use probe::{one_component_probe, ComponentProbe, MIN_GRID};
pub use profile::{
    criterion_integrand, criterion_profile, criterion_profile_family, integrand_from_family,
    CriterionProfile, ProfileOptions, BASE_POINT_SKIP, DEFAULT_ANGULAR, REFINE_FACTOR,
    REFINE_TRIGGER,
};
pub use verdict::{compactness_verdict, Verdict, VerdictKind};
