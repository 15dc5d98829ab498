#![allow(dead_code)]

use gbsiso::graphs::{Graph, VertexPermutation};
use gbsiso::SymmetricMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

pub fn data(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Every labeled simple graph on `n` vertices.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> VertexPermutation {
    let mut m: Vec<usize> = (0..n).collect();
    m.shuffle(rng);
    VertexPermutation::new(m).unwrap()
}

/// Symmetric integer matrix with off-diagonal entries in `lo..=hi` and an
/// arbitrary diagonal.
pub fn random_int_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> SymmetricMatrix<BigInt> {
    SymmetricMatrix::from_upper_fn(n, |_, _| BigInt::from(rng.gen_range(lo..=hi)))
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

/// Zero-diagonal symmetric rational matrix.
pub fn random_zero_diag_rational<R: Rng>(rng: &mut R, n: usize) -> SymmetricMatrix<BigRational> {
    SymmetricMatrix::from_upper_fn(n, |i, j| if i == j { zero() } else { random_rational(rng) })
}

pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

pub mod strategies {
    use gbsiso::graphs::{Graph, VertexPermutation};
    use gbsiso::SymmetricMatrix;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    pub fn graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
        (min..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    pub fn permutation(n: usize) -> impl Strategy<Value = VertexPermutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|m| VertexPermutation::new(m).unwrap())
    }

    pub fn graph_and_permutation(min: usize, max: usize) -> impl Strategy<Value = (Graph, VertexPermutation)> {
        graph(min, max).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), permutation(n))
        })
    }

    /// Symmetric integer matrix with entries in `lo..=hi`.
    pub fn int_matrix(min: usize, max: usize, lo: i64, hi: i64) -> impl Strategy<Value = SymmetricMatrix<BigInt>> {
        (min..=max).prop_flat_map(move |n| {
            proptest::collection::vec(lo..=hi, n * (n + 1) / 2).prop_map(move |vals| {
                let mut it = vals.into_iter();
                SymmetricMatrix::from_upper_fn(n, |_, _| BigInt::from(it.next().unwrap()))
            })
        })
    }

    /// Event on `modes` modes with total at most `max_total`.
    pub fn event(modes: usize, max_total: u32) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..=max_total, modes).prop_map(move |mut v| {
            while v.iter().sum::<u32>() > max_total {
                let i = v.iter().position(|&x| x > 0).unwrap();
                v[i] -= 1;
            }
            v
        })
    }
}
