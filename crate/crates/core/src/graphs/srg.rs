use serde::{Deserialize, Serialize};

use super::Graph;

/// Strongly regular graph parameters `(N, k, λ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k(k − λ − 1) == μ(N − k − 1)`.
    pub fn is_consistent(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == self.mu * (self.n - self.k - 1)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SRG({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Returns the parameters when `g` is regular, neither complete nor
/// edgeless, and common-neighbour counts are uniform over adjacent and over
/// non-adjacent pairs.
pub fn validate_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let k = g.degree(0);
    if (0..n).any(|u| g.degree(u) != k) || k == 0 || k == n - 1 {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let common = (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    let params = SrgParams {
        n,
        k,
        lambda: lambda?,
        mu: mu?,
    };
    debug_assert!(params.is_consistent());
    Some(params)
}
