use serde::{Deserialize, Serialize};

use crate::combinatorics::{DetectionEvent, Orbit};
use crate::error::{Error, Result};

use super::certificate::{Certificate, OrbitCertificate};

/// Relative tolerance for comparing orbit probabilities, which carry the
/// floating-point determinant prefactor.
pub const PROBABILITY_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Multiset,
    Sum,
    OrbitProbability,
    PhotonVectorSorted,
}

impl Criterion {
    /// Strongest first.
    pub const ALL: [Criterion; 4] = [
        Criterion::Multiset,
        Criterion::Sum,
        Criterion::OrbitProbability,
        Criterion::PhotonVectorSorted,
    ];
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Criterion::Multiset => "multiset",
            Criterion::Sum => "sum",
            Criterion::OrbitProbability => "orbit_probability",
            Criterion::PhotonVectorSorted => "photon_vector_sorted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Distinguished,
    /// Every compared orbit agrees. This is not an isomorphism claim.
    UndistinguishedUpToLimit,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "DISTINGUISHED",
            Verdict::UndistinguishedUpToLimit => "UNDISTINGUISHED_UP_TO_LIMIT",
        })
    }
}

/// Outcome of every criterion on one orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitComparison {
    pub orbit: DetectionEvent,
    pub multiset_equal: bool,
    pub sum_equal: bool,
    pub probability_equal: bool,
    pub photon_vector_equal: bool,
}

impl OrbitComparison {
    pub fn holds(&self, c: Criterion) -> bool {
        match c {
            Criterion::Multiset => self.multiset_equal,
            Criterion::Sum => self.sum_equal,
            Criterion::OrbitProbability => self.probability_equal,
            Criterion::PhotonVectorSorted => self.photon_vector_equal,
        }
    }

    pub fn all_equal(&self) -> bool {
        Criterion::ALL.iter().all(|&c| self.holds(c))
    }
}

pub fn probabilities_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= PROBABILITY_RTOL * a.abs().max(b.abs())
}

/// Evaluates all four criteria on two records of the same orbit.
pub fn compare_orbit(a: &OrbitCertificate, b: &OrbitCertificate) -> OrbitComparison {
    OrbitComparison {
        orbit: a.orbit.representative().clone(),
        multiset_equal: a.hafnian_multiset == b.hafnian_multiset,
        sum_equal: a.hafnian_sum == b.hafnian_sum,
        probability_equal: probabilities_equal(a.probability, b.probability),
        photon_vector_equal: a.sorted_photon_vector() == b.sorted_photon_vector(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub verdict: Verdict,
    pub threshold_orbit: Option<Orbit>,
    pub separating_criterion: Option<Criterion>,
    pub details: Vec<OrbitComparison>,
}

impl ComparisonReport {
    pub fn is_distinguished(&self) -> bool {
        self.verdict == Verdict::Distinguished
    }
}

/// Compares certificates using every criterion. Criteria are tried strongest
/// first; for each, orbits are scanned in key order.
pub fn compare_certificates(c1: &Certificate, c2: &Certificate) -> Result<ComparisonReport> {
    compare_certificates_with(c1, c2, &Criterion::ALL)
}

/// As [`compare_certificates`], with only `criteria` able to separate. All
/// four are still recorded in `details`.
pub fn compare_certificates_with(
    c1: &Certificate,
    c2: &Certificate,
    criteria: &[Criterion],
) -> Result<ComparisonReport> {
    if c1.c != c2.c || c1.k != c2.k {
        return Err(Error::InvalidArgument(format!(
            "encoding parameters differ: (c={}, k={}) vs (c={}, k={})",
            c1.c, c1.k, c2.c, c2.k
        )));
    }
    let keys1: Vec<_> = c1.records.iter().map(|r| r.orbit.key()).collect();
    let keys2: Vec<_> = c2.records.iter().map(|r| r.orbit.key()).collect();
    if keys1 != keys2 {
        return Err(Error::InvalidArgument("certificates cover different orbit sets".into()));
    }
    let mut ordered: Vec<Criterion> = criteria.to_vec();
    ordered.sort();
    ordered.dedup();

    let details: Vec<OrbitComparison> = c1
        .records
        .iter()
        .zip(&c2.records)
        .map(|(a, b)| compare_orbit(a, b))
        .collect();
    // Criterion-major: a stronger criterion failing at any orbit outranks a
    // weaker one failing at an earlier orbit.
    let first = ordered.iter().find_map(|&crit| {
        details
            .iter()
            .position(|d| !d.holds(crit))
            .map(|i| (c1.records[i].orbit.clone(), crit))
    });
    let (verdict, threshold_orbit, separating_criterion) = match first {
        Some((o, c)) => (Verdict::Distinguished, Some(o), Some(c)),
        None => (Verdict::UndistinguishedUpToLimit, None, None),
    };
    Ok(ComparisonReport {
        verdict,
        threshold_orbit,
        separating_criterion,
        details,
    })
}
