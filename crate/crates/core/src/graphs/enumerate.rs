//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Classes on `n` vertices are grown from classes on `n − 1` vertices by
//! attaching one new vertex with every possible neighbourhood. Candidates are
//! bucketed by cheap invariants (exact characteristic polynomial, degree
//! sequence, neighbour-degree profile) and deduplicated inside a bucket with
//! the backtracking isomorphism test.

use std::collections::HashMap;

use super::permutation::find_isomorphism;
use super::{emit_graph6, Graph};
use crate::error::{Error, Result};

pub const ENUMERATION_LIMIT: usize = 7;

/// Coefficients `[c_0, …, c_n]` of `det(xI − A)` (Faddeev–LeVerrier, exact).
pub fn characteristic_polynomial(g: &Graph) -> Vec<i128> {
    let n = g.order();
    let a: Vec<i128> = g.raw_adjacency().iter().map(|&b| i128::from(b)).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s += a[i * n + l] * m[l * n + j];
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += coeffs[n - k + 1];
        }
        m = next;
        let mut trace = 0i128;
        for i in 0..n {
            for l in 0..n {
                trace += a[i * n + l] * m[l * n + i];
            }
        }
        debug_assert_eq!(trace % k as i128, 0);
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

type BucketKey = (Vec<i128>, Vec<(usize, Vec<usize>)>);

fn bucket_key(g: &Graph) -> BucketKey {
    let degrees = g.degrees();
    let mut profile: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|u| {
            let mut nd: Vec<usize> = (0..g.order())
                .filter(|&v| g.has_edge(u, v))
                .map(|v| degrees[v])
                .collect();
            nd.sort_unstable();
            (degrees[u], nd)
        })
        .collect();
    profile.sort();
    (characteristic_polynomial(g), profile)
}

fn sort_key(g: &Graph) -> (usize, String) {
    (g.edge_count(), emit_graph6(g))
}

/// One representative per isomorphism class on `order` vertices, sorted by
/// (edge count, graph6).
pub fn enumerate_graphs(order: usize) -> Result<Vec<Graph>> {
    if order > ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded {
            what: "enumeration order",
            value: order,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut classes = vec![Graph::empty(0)];
    for n in 1..=order {
        let mut buckets: HashMap<BucketKey, Vec<Graph>> = HashMap::new();
        for base in &classes {
            for mask in 0u32..(1 << (n - 1)) {
                let mut g = Graph::empty(n);
                for (u, v) in base.edges() {
                    g.set_edge(u, v, true);
                }
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        g.set_edge(u, n - 1, true);
                    }
                }
                let reps = buckets.entry(bucket_key(&g)).or_default();
                if !reps.iter().any(|r| find_isomorphism(r, &g).is_some()) {
                    reps.push(g);
                }
            }
        }
        classes = buckets.into_values().flatten().collect();
        classes.sort_by_cached_key(sort_key);
    }
    Ok(classes)
}

/// All pairs of non-isomorphic graphs on `order` vertices sharing an
/// adjacency spectrum. Spectra are compared exactly through the integer
/// characteristic polynomial. Output is sorted and deterministic.
pub fn enumerate_cospectral_pairs(order: usize, connected_only: bool) -> Result<Vec<(Graph, Graph)>> {
    let graphs = enumerate_graphs(order)?;
    let mut groups: HashMap<Vec<i128>, Vec<Graph>> = HashMap::new();
    for g in graphs.into_iter().filter(|g| !connected_only || g.is_connected()) {
        groups.entry(characteristic_polynomial(&g)).or_default().push(g);
    }
    let mut pairs = Vec::new();
    for members in groups.into_values() {
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                pairs.push((members[i].clone(), members[j].clone()));
            }
        }
    }
    pairs.sort_by_cached_key(|(a, b)| (sort_key(a), sort_key(b)));
    Ok(pairs)
}
