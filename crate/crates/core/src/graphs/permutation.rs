use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`brute_force_isomorphic`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Bijection on `{0, …, n−1}`. As a matrix, `P[π(i)][i] = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    mapping: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidArgument(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b` on `n` points.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.mapping.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Self { mapping: inv }
    }

    /// `out[i] = values[π(i)]`, the coordinate action matching [`apply_permutation`].
    pub fn permute<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.mapping.iter().map(|&m| values[m].clone()).collect()
    }
}

/// `PᵀAP`: the result has `adj'[i][j] = adj[π(i)][π(j)]`.
pub fn apply_permutation(g: &Graph, p: &VertexPermutation) -> Result<Graph> {
    if p.degree() != g.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: p.degree(),
        });
    }
    let inv = p.inverse();
    let mut out = Graph::empty(g.order());
    for (u, v) in g.edges() {
        out.set_edge(inv.image(u), inv.image(v), true);
    }
    out.set_label(g.label().map(str::to_owned));
    Ok(out)
}

/// Backtracking search for `π` with `g1[i][j] == g2[π(i)][π(j)]`, pruning on
/// degrees and on adjacency to already-mapped vertices. No size limit.
pub(crate) fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<VertexPermutation> {
    let n = g1.order();
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }

    fn extend(
        i: usize,
        g1: &Graph,
        g2: &Graph,
        d1: &[usize],
        d2: &[usize],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = g1.order();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || d1[i] != d2[cand] {
                continue;
            }
            if (0..i).all(|j| g1.has_edge(i, j) == g2.has_edge(cand, map[j])) {
                used[cand] = true;
                map.push(cand);
                if extend(i + 1, g1, g2, d1, d2, map, used) {
                    return true;
                }
                map.pop();
                used[cand] = false;
            }
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(0, g1, g2, &d1, &d2, &mut map, &mut used).then_some(VertexPermutation { mapping: map })
}

/// Ground-truth isomorphism oracle for small graphs. Returns `π` with
/// `apply_permutation(g2, π) == g1`.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<VertexPermutation>> {
    if g1.order() != g2.order() {
        return Err(Error::OrderMismatch {
            left: g1.order(),
            right: g2.order(),
        });
    }
    if g1.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "brute-force isomorphism order",
            value: g1.order(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(find_isomorphism(g1, g2))
}
