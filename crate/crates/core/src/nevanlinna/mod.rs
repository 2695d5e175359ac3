//! Nevanlinna counting functions of self-maps and the area identities
//! built on them.

mod counting;
mod identities;
mod selfmap;

pub use counting::{
    count_preimages, counting, counting_avg, littlewood_bound, preimage_count_check,
    CountingSample, LittlewoodCheck, Preimage, SliceFamily, BASE_POINT_TOL, BOUNDARY_DISCARD,
    LITTLEWOOD_SLACK, MERGE_RADIUS,
};
pub use identities::{
    littlewood_paley_verify, stanton_verify, submean_check, IdentityCheck, StantonCheck,
    SubmeanCheck, BALL_NORM_RADIUS, BASE_POINT_EXCLUSION,
};
pub use selfmap::{Certificate, DiskMap, MapBody, SelfMap, CERTIFY_RADII, CERTIFY_SAMPLES};

#[cfg(test)]
mod tests;
