//! Certificates of per-orbit invariants and their comparison.
//!
//! A certificate stores, for each orbit, the exact multiset of hafnians
//! `haf(A⊘J_m)` over the orbit elements, their sum and squared sum, the
//! per-mode photon sums, and the orbit probability. Isomorphic graphs give
//! equal multisets, sums and probabilities and photon vectors that agree up
//! to a permutation, so any difference certifies non-isomorphism. Agreement
//! up to a finite photon number is reported as such and never as
//! isomorphism.

mod certificate;
mod compare;
mod moments;
mod similarity;

pub use certificate::{
    certify, orbit_certificate, sorted_orbits, Certificate, OrbitCertificate, SkippedOrbit, DEFAULT_ORBIT_BUDGET,
};
pub use compare::{
    compare_certificates, compare_certificates_with, compare_orbit, probabilities_equal, ComparisonReport, Criterion,
    OrbitComparison, Verdict, PROBABILITY_RTOL,
};
pub use moments::{
    moment, moment_diagonal_shift, moment_shift_coefficients, symmetrized_moment_sum, MOMENT_PHOTON_LIMIT,
};
pub use similarity::{is_positive_definite, permutational_similarity_brute, SIMILARITY_LIMIT};

use num_rational::BigRational;

use crate::combinatorics::{orbits, Orbit};
use crate::error::{Error, Result};
use crate::gbs::{encode, GbsEncoding};
use crate::graphs::{disjoint_union, Graph};

/// Largest `copies · M` accepted by [`hierarchy_certificate`].
pub const HIERARCHY_MAX_MODES: usize = 64;

/// `⟨n_k⟩` over one orbit.
pub fn photon_distribution(e: &GbsEncoding, o: &Orbit) -> Result<Vec<f64>> {
    Ok(orbit_certificate(e, o, None)?.photon_distribution(e.prefactor()))
}

/// `⟨⟨n_k⟩⟩`: the orbit distributions summed over every orbit of `total`.
pub fn coarse_photon_distribution(e: &GbsEncoding, total: u64) -> Result<Vec<f64>> {
    let mut exact = vec![BigRational::default(); e.modes()];
    for o in orbits(total, e.modes())? {
        let r = orbit_certificate(e, &o, None)?;
        for (acc, v) in exact.iter_mut().zip(&r.photon_vector) {
            *acc += v;
        }
    }
    Ok(exact
        .iter()
        .map(|v| e.prefactor() * num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN))
        .collect())
}

/// Certificate of the disjoint union of `copies` copies of `g`. `orbits`
/// are on `copies · M` modes.
pub fn hierarchy_certificate(
    g: &Graph,
    copies: usize,
    orbits: &[Orbit],
    c: Option<BigRational>,
    k: BigRational,
    budget: Option<u64>,
) -> Result<Certificate> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    let modes = copies * g.order();
    if modes > HIERARCHY_MAX_MODES {
        return Err(Error::LimitExceeded {
            what: "hierarchy modes",
            value: modes,
            limit: HIERARCHY_MAX_MODES,
        });
    }
    let mut union = disjoint_union(g, copies);
    union.set_label(g.label().map(|l| format!("{l}^{copies}")));
    certify(&encode(&union, c, k)?, orbits, budget)
}
