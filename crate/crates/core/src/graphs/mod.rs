//! Simple undirected graphs: ingestion, spectra, SRG checks, relabeling and
//! small-instance brute-force oracles.
//!
//! Vertices are 0-indexed everywhere in this crate and in every external
//! format it reads or writes.

mod enumerate;
mod families;
mod graph6;
mod json;
mod permutation;
mod spectrum;
mod srg;

pub use enumerate::{characteristic_polynomial, enumerate_cospectral_pairs, enumerate_graphs, ENUMERATION_LIMIT};
pub use families::{complete, cycle, disjoint_union, empty, path, rook_graph, shrikhande};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub use json::{graph_from_json, graph_to_json, graphs_from_json, GraphJson};
pub use permutation::{apply_permutation, brute_force_isomorphic, VertexPermutation, BRUTE_FORCE_LIMIT};
pub(crate) use spectrum::symmetric_eigenvalues;
pub use spectrum::{is_cospectral, spectrum, Spectrum, DEFAULT_SPECTRUM_TOL};
pub use srg::{validate_srg, SrgParams};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Simple undirected graph as a symmetric 0/1 adjacency with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adjacency: Vec<u8>,
    label: Option<String>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            adjacency: vec![0; order * order],
            label: None,
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order);
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for order {order}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Validates symmetry, zero diagonal and 0/1 entries.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> Result<Self> {
        let order = rows.len();
        let mut adjacency = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGraph(format!("row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::InvalidGraph(format!("entry ({i}, {j}) = {v} is not 0/1")));
                }
                if i == j && v != 0 {
                    return Err(Error::InvalidGraph(format!("nonzero diagonal at {i}")));
                }
                if v != rows[j][i] {
                    return Err(Error::InvalidGraph(format!("asymmetric at ({i}, {j})")));
                }
            }
            adjacency.extend_from_slice(row);
        }
        Ok(Self {
            order,
            adjacency,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.order + v] != 0
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        let b = u8::from(present);
        self.adjacency[u * self.order + v] = b;
        self.adjacency[v * self.order + u] = b;
    }

    pub fn adjacency_row(&self, u: usize) -> &[u8] {
        &self.adjacency[u * self.order..(u + 1) * self.order]
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        (0..self.order).map(|u| self.adjacency_row(u).to_vec()).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&b| b != 0).count() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency_row(u).iter().filter(|&&b| b != 0).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|u| self.degree(u)).collect()
    }

    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = vec![false; self.order];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, s) in seen.iter_mut().enumerate() {
                if !*s && self.has_edge(u, v) {
                    *s = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Adjacency as an exact matrix over any ring.
    pub fn adjacency_matrix<T: Clone + PartialEq + Zero + One>(&self) -> SymmetricMatrix<T> {
        SymmetricMatrix::from_upper_fn(
            self.order,
            |i, j| {
                if self.has_edge(i, j) {
                    T::one()
                } else {
                    T::zero()
                }
            },
        )
    }

    pub(crate) fn raw_adjacency(&self) -> &[u8] {
        &self.adjacency
    }
}
