use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{DetectionEvent, Orbit};
use crate::error::{Error, Result};
use crate::gbs::GbsEncoding;
use crate::scan::scan_orbit;

/// Default cap on the number of elements scanned per orbit.
pub const DEFAULT_ORBIT_BUDGET: u64 = 10_000_000;

/// Exact per-orbit invariants of one encoded graph.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCertificate {
    pub orbit: Orbit,
    /// Hafnian value → number of orbit elements attaining it.
    pub hafnian_multiset: BTreeMap<BigInt, u64>,
    pub hafnian_sum: BigInt,
    pub squared_sum: BigInt,
    /// `Σ_{m ∈ O} m_k · haf²(m)` per mode.
    pub photon_sums: Vec<BigInt>,
    /// `c^{|n|} / n! · photon_sums`, exact. Multiply by the prefactor for `⟨n_k⟩`.
    pub photon_vector: Vec<BigRational>,
    /// `p_G(O_n)`.
    pub probability: f64,
}

#[derive(Clone)]
struct Accumulator {
    multiset: BTreeMap<BigInt, u64>,
    sum: BigInt,
    squared: BigInt,
    photons: Vec<BigInt>,
}

impl Accumulator {
    fn new(modes: usize) -> Self {
        Self {
            multiset: BTreeMap::new(),
            sum: BigInt::zero(),
            squared: BigInt::zero(),
            photons: vec![BigInt::zero(); modes],
        }
    }

    fn add(&mut self, n: &DetectionEvent, h: &BigInt) {
        *self.multiset.entry(h.clone()).or_insert(0) += 1;
        if h.is_zero() {
            return;
        }
        let sq = h * h;
        self.sum += h;
        for (slot, &c) in self.photons.iter_mut().zip(n.counts()) {
            if c > 0 {
                *slot += &sq * c;
            }
        }
        self.squared += sq;
    }

    fn merge(mut self, other: Self) -> Self {
        for (v, c) in other.multiset {
            *self.multiset.entry(v).or_insert(0) += c;
        }
        self.sum += other.sum;
        self.squared += other.squared;
        for (a, b) in self.photons.iter_mut().zip(other.photons) {
            *a += b;
        }
        self
    }
}

/// Scans every element of `o` and records its exact invariants. Orbits whose
/// events are all forced to zero are filled in without expansion. Orbits
/// larger than `budget` elements fail with [`Error::OrbitBudget`].
pub fn orbit_certificate(e: &GbsEncoding, o: &Orbit, budget: Option<u64>) -> Result<OrbitCertificate> {
    let m = e.modes();
    if o.modes() != m {
        return Err(Error::OrderMismatch {
            left: m,
            right: o.modes(),
        });
    }
    let acc = if o.is_forced_zero() {
        let mut acc = Accumulator::new(m);
        let count = o.size().to_u64().ok_or_else(|| Error::OrbitBudget {
            orbit: o.representative().counts().to_vec(),
            size: o.size().to_string(),
            budget: u64::MAX,
        })?;
        acc.multiset.insert(BigInt::zero(), count);
        acc
    } else {
        scan_orbit(
            e,
            o,
            budget,
            || Accumulator::new(m),
            |acc, n, h| acc.add(n, h),
            Accumulator::merge,
        )?
    };
    let rep = o.representative();
    let photon_vector: Vec<BigRational> = acc.photons.iter().map(|s| e.scaled(rep, s.clone())).collect();
    let probability = e.prefactor() * e.scaled(rep, acc.squared.clone()).to_f64().unwrap_or(f64::NAN);
    Ok(OrbitCertificate {
        orbit: o.clone(),
        hafnian_multiset: acc.multiset,
        hafnian_sum: acc.sum,
        squared_sum: acc.squared,
        photon_sums: acc.photons,
        photon_vector,
        probability,
    })
}

impl OrbitCertificate {
    /// `⟨n_k⟩` for this orbit: `prefactor · photon_vector`.
    pub fn photon_distribution(&self, prefactor: f64) -> Vec<f64> {
        self.photon_vector
            .iter()
            .map(|v| prefactor * v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Photon vector sorted ascending, the relabeling-invariant form.
    pub fn sorted_photon_vector(&self) -> Vec<BigRational> {
        let mut v = self.photon_vector.clone();
        v.sort();
        v
    }

    /// Sum of multiset counts; equals the orbit size.
    pub fn element_count(&self) -> u64 {
        self.hafnian_multiset.values().sum()
    }

    /// `(value, count)` pairs in ascending value order.
    pub fn multiset_pairs(&self) -> Vec<(BigInt, u64)> {
        self.hafnian_multiset.iter().map(|(v, c)| (v.clone(), *c)).collect()
    }
}

/// An orbit that was requested but not computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedOrbit {
    pub orbit: Orbit,
    pub reason: String,
}

/// Per-orbit certificates of one graph, ordered by [`Orbit::key`].
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub label: Option<String>,
    pub c: BigRational,
    pub k: BigRational,
    pub prefactor: f64,
    pub records: Vec<OrbitCertificate>,
    pub skipped: Vec<SkippedOrbit>,
}

impl Certificate {
    pub fn is_complete(&self) -> bool {
        self.skipped.is_empty()
    }

    pub fn record(&self, orbit: &Orbit) -> Option<&OrbitCertificate> {
        self.records
            .binary_search_by(|r| r.orbit.key().cmp(&orbit.key()))
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("certificate JSON: {e}")))
    }
}

/// Sorts and deduplicates orbits by [`Orbit::key`].
pub fn sorted_orbits(orbits: &[Orbit]) -> Vec<Orbit> {
    let mut v = orbits.to_vec();
    v.sort_by_key(|a| a.key());
    v.dedup_by(|a, b| a.key() == b.key());
    v
}

/// Certifies every orbit in `orbits`. Orbits over `budget` are listed in
/// `skipped`; any other failure aborts.
pub fn certify(e: &GbsEncoding, orbits: &[Orbit], budget: Option<u64>) -> Result<Certificate> {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for o in sorted_orbits(orbits) {
        match orbit_certificate(e, &o, budget) {
            Ok(r) => records.push(r),
            Err(err @ Error::OrbitBudget { .. }) => skipped.push(SkippedOrbit {
                orbit: o,
                reason: err.to_string(),
            }),
            Err(err) => return Err(err),
        }
    }
    Ok(Certificate {
        label: e.graph().label().map(str::to_owned),
        c: e.c().clone(),
        k: e.k().clone(),
        prefactor: e.prefactor(),
        records,
        skipped,
    })
}

// JSON form: big integers as decimal strings, rationals as "p/q", the
// multiset as an object keyed by value in ascending numeric order.

fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    let d: BigInt = d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("{s:?}: zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_int(s: &str) -> std::result::Result<BigInt, String> {
    s.parse().map_err(|e| format!("{s:?}: {e}"))
}

struct Multiset<'a>(&'a BTreeMap<BigInt, u64>);

impl Serialize for Multiset<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(v, c)| (v.to_string(), c)))
    }
}

#[derive(Serialize)]
struct OrbitCertificateOut<'a> {
    orbit: &'a [u32],
    size: String,
    multiset: Multiset<'a>,
    sum: String,
    squared_sum: String,
    photon_sums: Vec<String>,
    photon_vector: Vec<String>,
    probability: f64,
}

#[derive(Deserialize)]
struct OrbitCertificateIn {
    orbit: Vec<u32>,
    size: String,
    multiset: HashMap<String, u64>,
    sum: String,
    squared_sum: String,
    photon_sums: Vec<String>,
    photon_vector: Vec<String>,
    probability: f64,
}

impl Serialize for OrbitCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrbitCertificateOut {
            orbit: self.orbit.representative().counts(),
            size: self.orbit.size().to_string(),
            multiset: Multiset(&self.hafnian_multiset),
            sum: self.hafnian_sum.to_string(),
            squared_sum: self.squared_sum.to_string(),
            photon_sums: self.photon_sums.iter().map(BigInt::to_string).collect(),
            photon_vector: self.photon_vector.iter().map(rational_string).collect(),
            probability: self.probability,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbitCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = OrbitCertificateIn::deserialize(d)?;
        let orbit = Orbit::of(&DetectionEvent::new(raw.orbit));
        if orbit.size().to_string() != raw.size {
            return Err(D::Error::custom(format!(
                "orbit size {} does not match representative",
                raw.size
            )));
        }
        let hafnian_multiset = raw
            .multiset
            .iter()
            .map(|(v, c)| parse_int(v).map(|v| (v, *c)))
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        let photon_sums = raw
            .photon_sums
            .iter()
            .map(|v| parse_int(v))
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        let photon_vector = raw
            .photon_vector
            .iter()
            .map(|v| parse_rational(v))
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        Ok(Self {
            orbit,
            hafnian_multiset,
            hafnian_sum: parse_int(&raw.sum).map_err(D::Error::custom)?,
            squared_sum: parse_int(&raw.squared_sum).map_err(D::Error::custom)?,
            photon_sums,
            photon_vector,
            probability: raw.probability,
        })
    }
}

#[derive(Serialize)]
struct CertificateOut<'a> {
    label: &'a Option<String>,
    c: String,
    k: String,
    prefactor: f64,
    records: &'a [OrbitCertificate],
    skipped: &'a [SkippedOrbit],
}

#[derive(Deserialize)]
struct CertificateIn {
    label: Option<String>,
    c: String,
    k: String,
    prefactor: f64,
    records: Vec<OrbitCertificate>,
    #[serde(default)]
    skipped: Vec<SkippedOrbit>,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateOut {
            label: &self.label,
            c: rational_string(&self.c),
            k: rational_string(&self.k),
            prefactor: self.prefactor,
            records: &self.records,
            skipped: &self.skipped,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CertificateIn::deserialize(d)?;
        Ok(Self {
            label: raw.label,
            c: parse_rational(&raw.c).map_err(D::Error::custom)?,
            k: parse_rational(&raw.k).map_err(D::Error::custom)?,
            prefactor: raw.prefactor,
            records: raw.records,
            skipped: raw.skipped,
        })
    }
}
