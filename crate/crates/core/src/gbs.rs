//! Gaussian boson sampling encoding of a graph and exact event probabilities.
//!
//! A graph with adjacency `A` on `M` vertices is encoded as the `2M × 2M`
//! matrix `C = c(A ⊕ A + kI)` with `0 < c < 1/(‖A‖₂ + k)`. Then
//! `σ_Q = (I − XC)⁻¹` with `X = [[0, I], [I, 0]]`, and
//!
//! ```text
//! det σ_Q = Π_i 1 / (1 − c²(λ_i + k)²)        (λ_i eigenvalues of A)
//! p(n)    = c^{|n|} haf²(A⊘J_{|n|}) / (n! √det σ_Q)
//! ```
//!
//! Hafnians and the rational factor `c^{|n|} haf² / n!` are exact; the
//! determinant prefactor is the only floating-point input.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions, DetectionEvent, Orbit};
use crate::error::{Error, Result};
use crate::graphs::{spectrum, symmetric_eigenvalues, Graph};
use crate::hafnian::{haf_i64, DEFAULT_FAST_CEILING};
use crate::matrix::SymmetricMatrix;
use crate::scan::scan_orbit;

/// Margin applied to the floating-point check `c·(‖A‖₂ + k) < 1`.
pub const SCALING_MARGIN: f64 = 1e-12;
pub const ORACLE_MAX_PHOTONS: u64 = 8;
pub const ORACLE_MAX_MODES: usize = 6;

/// Per-condition outcome of the encodability test on a `2M × 2M` matrix `R`
/// split into `M × M` blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodabilityReport {
    /// `R11 == R22` and `R12 == R21`.
    pub blocks_equal: bool,
    pub r12_min_eigenvalue: f64,
    pub r12_psd: bool,
    pub spectral_norm: f64,
    /// `0 < c < 1/‖R‖₂`.
    pub c_in_range: bool,
    pub failures: Vec<String>,
}

impl EncodabilityReport {
    pub fn is_encodable(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tests block symmetry, `R12 ⪰ 0`, and `c ∈ (0, 1/‖R‖₂)`.
pub fn check_encodable<T>(r: &SymmetricMatrix<T>, c: &BigRational) -> Result<EncodabilityReport>
where
    T: Clone + PartialEq + ToPrimitive,
{
    let n = r.order();
    if n % 2 == 1 {
        return Err(Error::InvalidMatrix(format!(
            "encodability needs an even order, got {n}"
        )));
    }
    let m = n / 2;
    let blocks_equal =
        (0..m).all(|i| (0..m).all(|j| r.get(i, j) == r.get(m + i, m + j) && r.get(i, m + j) == r.get(m + i, j)));
    let dense = r.to_f64();
    let r12 = dense.view((0, m), (m, m)).clone_owned();
    let r12 = (&r12 + r12.transpose()) * 0.5;
    let r12_min_eigenvalue = symmetric_eigenvalues(r12).into_iter().fold(f64::INFINITY, f64::min);
    let r12_min_eigenvalue = if m == 0 { 0.0 } else { r12_min_eigenvalue };
    let tol = 1e-9 * (1.0 + dense.amax());
    let r12_psd = r12_min_eigenvalue >= -tol;
    let spectral_norm = symmetric_eigenvalues(dense)
        .into_iter()
        .fold(0.0, |a: f64, v| a.max(v.abs()));
    let cf = c.to_f64().unwrap_or(f64::NAN);
    let c_in_range = c.is_positive() && cf * spectral_norm < 1.0 - SCALING_MARGIN;

    let mut failures = Vec::new();
    if !blocks_equal {
        failures.push("blocks differ: need R11 == R22 and R12 == R21".to_owned());
    }
    if !r12_psd {
        failures.push(format!(
            "R12 not positive semidefinite (min eigenvalue {r12_min_eigenvalue})"
        ));
    }
    if !c_in_range {
        failures.push(format!("c = {c} outside (0, 1/||R||_2) with ||R||_2 = {spectral_norm}"));
    }
    Ok(EncodabilityReport {
        blocks_equal,
        r12_min_eigenvalue,
        r12_psd,
        spectral_norm,
        c_in_range,
        failures,
    })
}

/// A graph with its scaling constant, diagonal shift and determinant data.
#[derive(Debug, Clone)]
pub struct GbsEncoding {
    graph: Graph,
    adjacency: Vec<i64>,
    c: BigRational,
    k: BigRational,
    eigenvalues: Vec<f64>,
    spectral_norm: f64,
    det_sigma_q: f64,
    prefactor: f64,
}

/// Exact probability data for one detection event.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityRecord {
    pub event: DetectionEvent,
    /// `haf(A⊘J_{|n|})`.
    pub hafnian: BigInt,
    /// `c^{|n|} haf² / n!`, exact.
    pub weight: BigRational,
    /// `prefactor · weight`.
    pub probability: f64,
}

/// `⌊10⁶ / (‖A‖₂ + k + 1)⌋ / 10⁶`.
pub fn default_scaling(spectral_norm: f64, k: &BigRational) -> BigRational {
    let denom = spectral_norm + k.to_f64().unwrap_or(0.0) + 1.0;
    let num = (1e6 / denom).floor() as i64;
    BigRational::new(BigInt::from(num.max(1)), BigInt::from(1_000_000))
}

/// Builds the encoding; `c = None` picks [`default_scaling`].
pub fn encode(g: &Graph, c: Option<BigRational>, k: BigRational) -> Result<GbsEncoding> {
    if k.is_negative() {
        return Err(Error::InvalidArgument(format!("diagonal shift k = {k} is negative")));
    }
    let sp = spectrum(g);
    let kf = k.to_f64().unwrap_or(f64::NAN);
    let c = c.unwrap_or_else(|| default_scaling(sp.spectral_norm, &k));
    let cf = c.to_f64().unwrap_or(f64::NAN);
    let inside = cf * (sp.spectral_norm + kf) < 1.0 - SCALING_MARGIN;
    if !c.is_positive() || !inside {
        return Err(Error::ScalingOutOfRange {
            c: c.to_string(),
            bound: format!("1/{}", sp.spectral_norm + kf),
        });
    }
    let inv_det: f64 = sp
        .eigenvalues
        .iter()
        .map(|&l| 1.0 - cf * cf * (l + kf) * (l + kf))
        .product();
    let adjacency = g.adjacency_rows().into_iter().flatten().map(i64::from).collect();
    Ok(GbsEncoding {
        graph: g.clone(),
        adjacency,
        c,
        k,
        eigenvalues: sp.eigenvalues,
        spectral_norm: sp.spectral_norm,
        det_sigma_q: 1.0 / inv_det,
        prefactor: inv_det.sqrt(),
    })
}

impl GbsEncoding {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn modes(&self) -> usize {
        self.graph.order()
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn k(&self) -> &BigRational {
        &self.k
    }

    /// Eigenvalues of `A`, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn spectral_norm(&self) -> f64 {
        self.spectral_norm
    }

    pub fn det_sigma_q(&self) -> f64 {
        self.det_sigma_q
    }

    /// `1/√det σ_Q`.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// `C = c(A ⊕ A + kI)`.
    pub fn doubled_matrix(&self) -> SymmetricMatrix<BigRational> {
        let a: SymmetricMatrix<BigRational> = self.graph.adjacency_matrix();
        a.direct_sum(&a).add_diagonal(&self.k).scale(&self.c)
    }

    fn check_event(&self, n: &DetectionEvent) -> Result<()> {
        if n.modes() != self.modes() {
            return Err(Error::OrderMismatch {
                left: self.modes(),
                right: n.modes(),
            });
        }
        Ok(())
    }

    /// `haf(A⊘J_{|n|})` for the adjacency `A`; 0 without expansion for
    /// odd totals or when a mode holds more than half the photons.
    pub fn event_hafnian(&self, n: &DetectionEvent) -> Result<BigInt> {
        self.check_event(n)?;
        if n.is_forced_zero() {
            return Ok(BigInt::zero());
        }
        let idx = n.expanded_indices();
        if idx.len() > DEFAULT_FAST_CEILING {
            return Err(Error::LimitExceeded {
                what: "expanded hafnian order",
                value: idx.len(),
                limit: DEFAULT_FAST_CEILING,
            });
        }
        let m = self.modes();
        let entries: Vec<i64> = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.adjacency[i * m + j])
            .collect();
        Ok(haf_i64(idx.len(), &entries))
    }

    /// `c^{|n|} · s / n!` for an exact integer `s`.
    pub(crate) fn scaled(&self, n: &DetectionEvent, s: BigInt) -> BigRational {
        let cpow = num_traits::pow(self.c.clone(), n.total() as usize);
        cpow * BigRational::new(s, BigInt::from(n.factorial()))
    }
}

/// `σ_Q` determinant through a dense `2M × 2M` determinant of `I − XC`.
pub fn det_sigma_q_dense(e: &GbsEncoding) -> f64 {
    1.0 / dense_inv_det(e)
}

/// `det(I − XC) = 1/det σ_Q`.
fn dense_inv_det(e: &GbsEncoding) -> f64 {
    let m = e.modes();
    let cm = e.doubled_matrix().to_f64();
    let mut x = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        x[(i, m + i)] = 1.0;
        x[(m + i, i)] = 1.0;
    }
    (DMatrix::<f64>::identity(2 * m, 2 * m) - x * cm).determinant()
}

/// `p(n) = prefactor · c^{|n|} · haf²(A⊘J_{|n|}) / n!`.
pub fn event_probability(e: &GbsEncoding, n: &DetectionEvent) -> Result<ProbabilityRecord> {
    let hafnian = e.event_hafnian(n)?;
    let weight = e.scaled(n, &hafnian * &hafnian);
    let probability = e.prefactor * weight.to_f64().unwrap_or(f64::NAN);
    Ok(ProbabilityRecord {
        event: n.clone(),
        hafnian,
        weight,
        probability,
    })
}

/// Independent evaluation of `p(n)` from the generating function.
///
/// Expands `(½γᵀCγ)^{|n|} / |n|!` exactly over the `2M` variables
/// `γ = (β, β̄)`, keeps the coefficient of `Π β_i^{n_i} β̄_i^{n_i}`, and
/// multiplies by `n!` and by `√det(I − XC)` from a dense determinant. The
/// diagonal shift `k` enters `C` literally, so the result agrees with
/// [`event_probability`] when `k = 0` or when every `n_i ≤ 1`.
pub fn derivative_probability_oracle(e: &GbsEncoding, n: &DetectionEvent) -> Result<f64> {
    e.check_event(n)?;
    if e.modes() > ORACLE_MAX_MODES {
        return Err(Error::LimitExceeded {
            what: "derivative oracle modes",
            value: e.modes(),
            limit: ORACLE_MAX_MODES,
        });
    }
    let total = n.total();
    if total > ORACLE_MAX_PHOTONS {
        return Err(Error::LimitExceeded {
            what: "derivative oracle photons",
            value: total as usize,
            limit: ORACLE_MAX_PHOTONS as usize,
        });
    }
    let prefactor = dense_inv_det(e).sqrt();
    let coef = generating_coefficient(&e.doubled_matrix(), n);
    let value = coef * BigRational::from_integer(BigInt::from(n.factorial()));
    Ok(prefactor * value.to_f64().unwrap_or(f64::NAN))
}

/// Coefficient of `Π β_i^{n_i} β̄_i^{n_i}` in `exp(½γᵀCγ)`.
fn generating_coefficient(cmat: &SymmetricMatrix<BigRational>, n: &DetectionEvent) -> BigRational {
    let m = n.modes();
    let target: Vec<u8> = n.counts().iter().chain(n.counts()).map(|&v| v as u8).collect();
    let degree = n.total() as usize;
    let half = BigRational::new(1.into(), 2.into());

    // Terms of ½γᵀCγ: ½C_ii γ_i² and C_ij γ_i γ_j (i < j).
    let mut quad: Vec<(Vec<u8>, BigRational)> = Vec::new();
    for i in 0..2 * m {
        for j in i..2 * m {
            let v = cmat.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mut exps = vec![0u8; 2 * m];
            exps[i] += 1;
            exps[j] += 1;
            if exps.iter().zip(&target).any(|(a, b)| a > b) {
                continue;
            }
            let coef = if i == j { v * &half } else { v.clone() };
            quad.push((exps, coef));
        }
    }

    let mut poly: HashMap<Vec<u8>, BigRational> = HashMap::new();
    poly.insert(vec![0u8; 2 * m], BigRational::one());
    for _ in 0..degree {
        let mut next: HashMap<Vec<u8>, BigRational> = HashMap::new();
        for (mono, coef) in &poly {
            for (qe, qc) in &quad {
                let prod: Vec<u8> = mono.iter().zip(qe).map(|(a, b)| a + b).collect();
                if prod.iter().zip(&target).any(|(a, b)| a > b) {
                    continue;
                }
                *next.entry(prod).or_insert_with(BigRational::zero) += coef * qc;
            }
        }
        poly = next;
    }
    let fact: BigInt = (1..=degree).map(BigInt::from).product();
    poly.remove(&target).unwrap_or_else(BigRational::zero) / BigRational::from_integer(fact)
}

/// `Σ_{m ∈ O} haf²(A⊘J_{|m|})`, exact.
pub fn orbit_squared_sum(e: &GbsEncoding, o: &Orbit, budget: Option<u64>) -> Result<BigInt> {
    if o.modes() != e.modes() {
        return Err(Error::OrderMismatch {
            left: e.modes(),
            right: o.modes(),
        });
    }
    if o.is_forced_zero() {
        return Ok(BigInt::zero());
    }
    scan_orbit(e, o, budget, BigInt::zero, |acc, _, h| *acc += h * h, |a, b| a + b)
}

/// `c^{|n|} / n! · Σ_{m ∈ O} haf²`, exact (`n!` is constant on an orbit).
pub fn orbit_weight(e: &GbsEncoding, o: &Orbit, budget: Option<u64>) -> Result<BigRational> {
    let s = orbit_squared_sum(e, o, budget)?;
    Ok(e.scaled(o.representative(), s))
}

/// `p_G(O_n)`: total probability of the orbit.
pub fn orbit_probability(e: &GbsEncoding, o: &Orbit) -> Result<f64> {
    let w = orbit_weight(e, o, None)?;
    Ok(e.prefactor * w.to_f64().unwrap_or(f64::NAN))
}

/// `p_G(|n|)`: total probability of detecting `total` photons.
pub fn partition_probability(e: &GbsEncoding, total: u64) -> Result<f64> {
    let mut sum = BigRational::zero();
    for rep in partitions(total, e.modes())? {
        sum += orbit_weight(e, &Orbit::of(&rep), None)?;
    }
    Ok(e.prefactor * sum.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, empty, path, rook_graph};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ev(c: &[u32]) -> DetectionEvent {
        DetectionEvent::new(c.to_vec())
    }

    #[test]
    fn single_edge_encoding() {
        let e = encode(&complete(2), Some(q(1, 2)), BigRational::zero()).unwrap();
        assert!((e.det_sigma_q() - 16.0 / 9.0).abs() < 1e-12);
        assert!((e.prefactor() - 0.75).abs() < 1e-12);
        assert!((det_sigma_q_dense(&e) - 16.0 / 9.0).abs() < 1e-12);
        for m in 0..6u32 {
            let r = event_probability(&e, &ev(&[m, m])).unwrap();
            let expected = 0.75 * 0.25f64.powi(m as i32);
            assert!((r.probability - expected).abs() < 1e-15);
        }
        let z = encode(&empty(3), None, BigRational::zero()).unwrap();
        assert_eq!(z.det_sigma_q(), 1.0);
        assert_eq!(z.prefactor(), 1.0);
    }

    #[test]
    fn scaling_bounds() {
        let g = rook_graph(4);
        assert!(matches!(
            encode(&g, Some(q(1, 6)), BigRational::zero()),
            Err(Error::ScalingOutOfRange { .. })
        ));
        assert!(encode(&g, Some(q(10, 69)), BigRational::zero()).is_ok());
        assert!(encode(&g, Some(q(1, 7)), BigRational::one()).is_err());
        assert!(encode(&g, Some(q(-1, 7)), BigRational::zero()).is_err());
        let d = encode(&g, None, BigRational::zero()).unwrap();
        assert_eq!(d.c(), &q(142_857, 1_000_000));
    }

    #[test]
    fn encodability_checks() {
        let a: SymmetricMatrix<BigInt> = path(3).adjacency_matrix();
        let r = a.direct_sum(&a);
        let norm = 2f64.sqrt();
        let ok = check_encodable(&r, &q(7, 10)).unwrap();
        assert!(ok.is_encodable(), "{:?}", ok.failures);
        assert!(ok.spectral_norm - norm < 1e-12);
        assert!(!check_encodable(&r, &q(71, 50)).unwrap().c_in_range);
        let k2: SymmetricMatrix<BigInt> = complete(2).adjacency_matrix();
        let kr = k2.direct_sum(&k2);
        assert!(!check_encodable(&kr, &BigRational::one()).unwrap().is_encodable());

        let mut rows = vec![vec![0i64; 4]; 4];
        rows[0][2] = -1;
        rows[2][0] = -1;
        rows[1][3] = -1;
        rows[3][1] = -1;
        let neg = SymmetricMatrix::from_i64_rows(&rows).unwrap();
        let rep = check_encodable(&neg, &q(1, 2)).unwrap();
        assert!(!rep.r12_psd);
        assert!(rep.failures[0].starts_with("R12 not positive semidefinite"));
        assert!(check_encodable(&SymmetricMatrix::<BigInt>::zeros(3), &q(1, 2)).is_err());
    }

    #[test]
    fn zero_events() {
        let e = encode(&complete(4), None, BigRational::zero()).unwrap();
        let r = event_probability(&e, &ev(&[3, 1, 0, 0])).unwrap();
        assert_eq!(r.probability, 0.0);
        assert_eq!(event_probability(&e, &ev(&[1, 0, 0, 0])).unwrap().probability, 0.0);
        let vac = event_probability(&e, &ev(&[0, 0, 0, 0])).unwrap();
        assert!((vac.probability - e.prefactor()).abs() < 1e-15);
        assert!(event_probability(&e, &ev(&[0, 0])).is_err());
    }

    #[test]
    fn oracle_matches_closed_form() {
        let e = encode(&complete(2), Some(q(1, 2)), BigRational::zero()).unwrap();
        let p = derivative_probability_oracle(&e, &ev(&[1, 1])).unwrap();
        assert!((p - 0.75 * 0.25).abs() < 1e-14);
        let p0 = derivative_probability_oracle(&e, &ev(&[0, 0])).unwrap();
        assert!((p0 - 0.75).abs() < 1e-14);
        let p2 = derivative_probability_oracle(&e, &ev(&[2, 2])).unwrap();
        assert!((p2 - 0.75 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn orbit_and_partition() {
        let e = encode(&complete(2), Some(q(1, 2)), BigRational::zero()).unwrap();
        let o = Orbit::of(&ev(&[1, 1]));
        assert!((orbit_probability(&e, &o).unwrap() - 0.75 * 0.25).abs() < 1e-15);
        assert_eq!(orbit_probability(&e, &Orbit::of(&ev(&[0, 4]))).unwrap(), 0.0);
        for m in 0..5u64 {
            let p = partition_probability(&e, 2 * m).unwrap();
            assert!((p - 0.75 * 0.25f64.powi(m as i32)).abs() < 1e-15);
        }
        assert_eq!(partition_probability(&e, 3), Err(Error::OddTotal(3)));
    }
}
