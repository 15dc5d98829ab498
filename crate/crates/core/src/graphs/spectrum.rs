use nalgebra::{DMatrix, SymmetricEigen};

use super::Graph;
use crate::error::{Error, Result};

/// Default absolute tolerance for comparing adjacency eigenvalues.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    pub spectral_norm: f64,
}

pub(crate) fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Eigenvalues of the adjacency matrix via nalgebra's symmetric QR
/// eigensolver (backward error around 1e-14 at the orders used here).
pub fn spectrum(g: &Graph) -> Spectrum {
    let m = DMatrix::from_fn(g.order(), g.order(), |i, j| f64::from(u8::from(g.has_edge(i, j))));
    let eigenvalues = symmetric_eigenvalues(m);
    let spectral_norm = match (eigenvalues.first(), eigenvalues.last()) {
        (Some(a), Some(b)) => a.abs().max(b.abs()),
        _ => 0.0,
    };
    Spectrum {
        eigenvalues,
        spectral_norm,
    }
}

pub fn is_cospectral(g1: &Graph, g2: &Graph, tol: f64) -> Result<bool> {
    if g1.order() != g2.order() {
        return Err(Error::OrderMismatch {
            left: g1.order(),
            right: g2.order(),
        });
    }
    let (s1, s2) = (spectrum(g1), spectrum(g2));
    Ok(s1
        .eigenvalues
        .iter()
        .zip(&s2.eigenvalues)
        .all(|(a, b)| (a - b).abs() <= tol))
}
