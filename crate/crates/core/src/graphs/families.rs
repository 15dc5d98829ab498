//! Named constructions used as fixtures.

use super::Graph;

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.set_edge(u, v, true);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 1..n {
        g.set_edge(u - 1, u, true);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.set_edge(0, n - 1, true);
    }
    g
}

/// `m × m` rook's graph `K_m □ K_m`; vertex `(r, c)` is `m·r + c`.
pub fn rook_graph(m: usize) -> Graph {
    let mut g = Graph::empty(m * m);
    for a in 0..m * m {
        for b in (a + 1)..m * m {
            if a / m == b / m || a % m == b % m {
                g.set_edge(a, b, true);
            }
        }
    }
    g.with_label(format!("rook{m}x{m}"))
}

/// Shrikhande graph: Cayley graph on Z4 × Z4 with connection set
/// ±(0,1), ±(1,0), ±(1,1); vertex `(a, b)` is `4a + b`.
pub fn shrikhande() -> Graph {
    let mut g = Graph::empty(16);
    let gens = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];
    for a in 0..16 {
        for &(da, db) in &gens {
            let b = 4 * ((a / 4 + da) % 4) + (a % 4 + db) % 4;
            g.set_edge(a, b, true);
        }
    }
    g.with_label("shrikhande")
}

/// Disjoint union of `copies` copies of `g` (adjacency `A^{⊕k}`).
pub fn disjoint_union(g: &Graph, copies: usize) -> Graph {
    let n = g.order();
    let mut out = Graph::empty(n * copies);
    for c in 0..copies {
        for (u, v) in g.edges() {
            out.set_edge(c * n + u, c * n + v, true);
        }
    }
    out
}
