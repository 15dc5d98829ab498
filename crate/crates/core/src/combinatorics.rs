//! Detection events, their orbits under mode permutation, and the reduced
//! Kronecker product `A⊘J`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Photon counts `n = (n_1, …, n_M)`, one per output mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DetectionEvent {
    counts: Vec<u32>,
}

impl DetectionEvent {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn zeros(modes: usize) -> Self {
        Self { counts: vec![0; modes] }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn modes(&self) -> usize {
        self.counts.len()
    }

    /// `|n| = Σ n_i`.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Counts sorted ascending: the orbit representative.
    pub fn sorted(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.sort_unstable();
        Self { counts }
    }

    /// Left-pads with zeros to `modes` entries and sorts ascending.
    pub fn padded(&self, modes: usize) -> Result<Self> {
        if self.modes() > modes {
            return Err(Error::InvalidArgument(format!(
                "event {self} has {} modes, more than {modes}",
                self.modes()
            )));
        }
        let mut counts = vec![0; modes - self.modes()];
        counts.extend_from_slice(&self.counts);
        counts.sort_unstable();
        Ok(Self { counts })
    }

    /// True when every graph assigns this event probability 0: the total is
    /// odd, or one mode holds more than half of the photons.
    pub fn is_forced_zero(&self) -> bool {
        let total = self.total();
        total % 2 == 1 || self.counts.iter().any(|&c| 2 * u64::from(c) > total)
    }

    /// `n! = Π n_i!`.
    pub fn factorial(&self) -> BigUint {
        self.counts.iter().map(|&c| factorial(c as u64)).product()
    }

    /// Index list for the reduced Kronecker product: mode `i` repeated `n_i` times.
    pub fn expanded_indices(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    /// Parses `"1,1,2"` (whitespace tolerated).
    pub fn parse(text: &str) -> Result<Self> {
        let counts = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidArgument(format!("bad photon count {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { counts })
    }

    /// Run-length form such as `0^4 1^4 2`.
    pub fn compressed(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.counts.len() {
            let v = self.counts[i];
            let run = self.counts[i..].iter().take_while(|&&c| c == v).count();
            parts.push(if run == 1 { v.to_string() } else { format!("{v}^{run}") });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for DetectionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl From<Vec<u32>> for DetectionEvent {
    fn from(counts: Vec<u32>) -> Self {
        Self::new(counts)
    }
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Orbit of detection events under permutation of the modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orbit {
    representative: DetectionEvent,
    size: BigUint,
    multiplicities: BTreeMap<u32, usize>,
}

impl Orbit {
    /// Orbit containing `n`; the representative is `n` sorted ascending.
    pub fn of(n: &DetectionEvent) -> Self {
        let representative = n.sorted();
        let mut multiplicities = BTreeMap::new();
        for &c in representative.counts() {
            *multiplicities.entry(c).or_insert(0) += 1;
        }
        let size = orbit_size(&representative);
        Self {
            representative,
            size,
            multiplicities,
        }
    }

    pub fn representative(&self) -> &DetectionEvent {
        &self.representative
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// `j → k_j`, the number of modes holding `j` photons.
    pub fn multiplicities(&self) -> &BTreeMap<u32, usize> {
        &self.multiplicities
    }

    pub fn total(&self) -> u64 {
        self.representative.total()
    }

    pub fn modes(&self) -> usize {
        self.representative.modes()
    }

    /// `|Stab(n)| = Π_j k_j!`, so that `size · stabilizer_size == M!`.
    pub fn stabilizer_size(&self) -> BigUint {
        self.multiplicities.values().map(|&k| factorial(k as u64)).product()
    }

    pub fn is_forced_zero(&self) -> bool {
        self.representative.is_forced_zero()
    }

    pub fn elements(&self) -> OrbitElements {
        orbit_elements(&self.representative)
    }

    /// Ordering key: total first, then the parts in descending order
    /// lexicographically, so `(1,1,1,1)` precedes `(1,1,2)` precedes `(2,2)`.
    pub fn key(&self) -> (u64, Vec<u32>) {
        (
            self.total(),
            self.representative.counts().iter().rev().copied().collect(),
        )
    }
}

/// Serialized as the representative's counts.
impl Serialize for Orbit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.representative.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Orbit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Orbit::of(&DetectionEvent::deserialize(d)?))
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

/// Partitions of `total` into at most `modes` parts, zero-padded to length
/// `modes`, sorted ascending, in [`Orbit::key`] order.
pub fn partitions(total: u64, modes: usize) -> Result<Vec<DetectionEvent>> {
    if total % 2 == 1 {
        return Err(Error::OddTotal(total));
    }
    // Parts are generated largest-first (non-increasing), then reversed.
    fn rec(remaining: u64, max_part: u64, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part as u32);
            rec(remaining - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(total, total, modes, &mut Vec::new(), &mut raw);
    let mut reps: Vec<DetectionEvent> = raw
        .into_iter()
        .map(|parts| {
            let mut counts = vec![0u32; modes - parts.len()];
            counts.extend(parts.into_iter().rev());
            DetectionEvent::new(counts)
        })
        .collect();
    reps.sort_by_key(|r| Orbit::of(r).key());
    Ok(reps)
}

/// All orbits with the given even total on `modes` modes.
pub fn orbits(total: u64, modes: usize) -> Result<Vec<Orbit>> {
    Ok(partitions(total, modes)?.iter().map(Orbit::of).collect())
}

/// Orbits for every even total `2, 4, …, max_total` (the vacuum orbit is
/// included when `include_vacuum` is set).
pub fn orbits_up_to(max_total: u64, modes: usize, include_vacuum: bool) -> Result<Vec<Orbit>> {
    let start = if include_vacuum { 0 } else { 2 };
    let mut out = Vec::new();
    for t in (start..=max_total).step_by(2) {
        out.extend(orbits(t, modes)?);
    }
    Ok(out)
}

/// Multinomial `M! / Π_j k_j!`: the number of distinct rearrangements of `n`.
pub fn orbit_size(n: &DetectionEvent) -> BigUint {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &c in n.counts() {
        *counts.entry(c).or_insert(0) += 1;
    }
    let denom: BigUint = counts.values().map(|&k| factorial(k)).product();
    factorial(n.modes() as u64) / denom
}

/// Lazy lexicographic stream of the distinct permutations of `n`.
pub fn orbit_elements(n: &DetectionEvent) -> OrbitElements {
    OrbitElements {
        next: Some(n.sorted().counts),
    }
}

#[derive(Debug, Clone)]
pub struct OrbitElements {
    next: Option<Vec<u32>>,
}

impl Iterator for OrbitElements {
    type Item = DetectionEvent;

    fn next(&mut self) -> Option<DetectionEvent> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(DetectionEvent::new(current))
    }
}

/// Advances to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("pivot successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `A⊘J_{|n|}`: row and column `i` of `a` repeated `n_i` times.
pub fn kron_reduced<T: Clone + PartialEq>(a: &SymmetricMatrix<T>, n: &DetectionEvent) -> Result<SymmetricMatrix<T>> {
    if n.modes() != a.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: n.modes(),
        });
    }
    Ok(a.select(&n.expanded_indices()))
}
