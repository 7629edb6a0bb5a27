//! Generators for the graph families used in the examples and sweeps.

use rand::Rng;

use super::{BipartiteGraph, GraphError, SemisimpleGraph};

/// `K_n°`: every pair and every loop.
pub fn complete_semisimple(n: usize) -> SemisimpleGraph {
    SemisimpleGraph::from_edges(n, (0..n).flat_map(|u| (u..n).map(move |v| (u, v))))
        .expect("complete pairs are distinct")
}

/// `K_n` without loops.
pub fn complete_graph(n: usize) -> SemisimpleGraph {
    SemisimpleGraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete pairs are distinct")
}

pub fn complete_bipartite(m: usize, n: usize) -> BipartiteGraph {
    BipartiteGraph::from_class_edges(m, n, (0..m).flat_map(|i| (0..n).map(move |j| (i, j))))
        .expect("complete bipartite pairs are distinct")
}

/// `K_{m1,m2,m3}` with classes laid out contiguously, as a semisimple graph.
pub fn complete_tripartite(m1: usize, m2: usize, m3: usize) -> SemisimpleGraph {
    let n = m1 + m2 + m3;
    let class = |v: usize| {
        if v < m1 {
            0
        } else if v < m1 + m2 {
            1
        } else {
            2
        }
    };
    SemisimpleGraph::from_edges(
        n,
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| class(u) != class(v)).map(move |v| (u, v))),
    )
    .expect("cross pairs are distinct")
}

pub fn cycle_graph(n: usize) -> SemisimpleGraph {
    let edges: Vec<_> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    SemisimpleGraph::from_edges(n, edges).expect("cycle edges are distinct")
}

pub fn path_graph(n: usize) -> SemisimpleGraph {
    SemisimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are distinct")
}

/// Cyclic bipartite graph on `x_0..x_{s-1}`, `y_0..y_{s-1}` with `x_i`
/// joined to `y_i, ..., y_{i+k-1}` (indices mod `s`). It is `k`-regular.
pub fn circulant_bipartite(s: usize, k: usize) -> Result<BipartiteGraph, GraphError> {
    if k == 0 || k > s {
        return Err(GraphError::InvalidParameters(format!(
            "circulant needs 1 <= k <= s, got s={s}, k={k}"
        )));
    }
    BipartiteGraph::from_class_edges(s, s, (0..s).flat_map(|i| (0..k).map(move |t| (i, (i + t) % s))))
}

/// Vertex-splitting family built on `circulant_bipartite(s, 2ab-1)`.
///
/// Every base vertex `v` becomes `A_v` (k vertices, each taking one of the
/// base edges at `v`) and `B_v` (k vertices), with all of `A_v × B_v` added.
/// Class X holds `A_x` for base X-vertices and `B_y` for base Y-vertices;
/// both classes have `2sk` vertices. Layout in class X: `A_{x_0}..A_{x_{s-1}}`
/// then `B_{y_0}..B_{y_{s-1}}`; class Y mirrors it.
pub fn ly_split_family(a: usize, b: usize, s: usize) -> Result<BipartiteGraph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameters("a and b must be positive".into()));
    }
    let k = 2 * a * b - 1;
    if !s.is_multiple_of(2) || s <= k || k < a * b {
        return Err(GraphError::InvalidParameters(format!(
            "need s even and s > 2ab-1 >= ab, got a={a}, b={b}, s={s}"
        )));
    }
    let block = s * k;
    // class-local indices
    let a_of_x = |i: usize, t: usize| i * k + t; // in X
    let b_of_y = |j: usize, t: usize| block + j * k + t; // in X
    let b_of_x = |i: usize, t: usize| i * k + t; // in Y
    let a_of_y = |j: usize, t: usize| block + j * k + t; // in Y

    let mut edges = Vec::new();
    // base edge x_i y_{i+t} uses slot t at both ends
    for i in 0..s {
        for t in 0..k {
            edges.push((a_of_x(i, t), a_of_y((i + t) % s, t)));
        }
    }
    for v in 0..s {
        for t in 0..k {
            for u in 0..k {
                edges.push((a_of_x(v, t), b_of_x(v, u)));
                edges.push((b_of_y(v, u), a_of_y(v, t)));
            }
        }
    }
    BipartiteGraph::from_class_edges(2 * block, 2 * block, edges)
}

/// `p` copies of `K_{k,k}` on `(A_i, B_i)` glued along `B_i - b_i` and at
/// the vertices `a_i`. Class A: the merged `a`, then the `k-1` private
/// vertices of each `A_i`. Class B: the `k-1` shared vertices, then
/// `b_1..b_p`. Parallel edges created by the gluing are merged.
pub fn critical_family(k: usize, p: usize) -> Result<BipartiteGraph, GraphError> {
    if k == 0 || p == 0 {
        return Err(GraphError::InvalidParameters(format!(
            "critical family needs k, p >= 1, got k={k}, p={p}"
        )));
    }
    let size_a = 1 + p * (k - 1);
    let size_b = (k - 1) + p;
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..p {
        let mut a_side = vec![0];
        a_side.extend((0..k - 1).map(|t| 1 + i * (k - 1) + t));
        let mut b_side: Vec<usize> = (0..k - 1).collect();
        b_side.push(k - 1 + i);
        for &x in &a_side {
            for &y in &b_side {
                edges.insert((x, y));
            }
        }
    }
    BipartiteGraph::from_class_edges(size_a, size_b, edges)
}

/// `G(n, prob)` without loops.
pub fn random_graph<R: Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> SemisimpleGraph {
    let mut g = SemisimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                g.insert(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Random semisimple graph: pairs with probability `prob`, loops with
/// probability `loop_prob`.
pub fn random_semisimple<R: Rng + ?Sized>(
    n: usize,
    prob: f64,
    loop_prob: f64,
    rng: &mut R,
) -> SemisimpleGraph {
    let mut g = SemisimpleGraph::empty(n);
    for u in 0..n {
        for v in u..n {
            let q = if u == v { loop_prob } else { prob };
            if rng.gen_bool(q) {
                g.insert(u, v).expect("fresh pair");
            }
        }
    }
    g
}

pub fn random_bipartite<R: Rng + ?Sized>(
    size_a: usize,
    size_b: usize,
    prob: f64,
    rng: &mut R,
) -> BipartiteGraph {
    let mut edges = Vec::new();
    for i in 0..size_a {
        for j in 0..size_b {
            if rng.gen_bool(prob) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::from_class_edges(size_a, size_b, edges).expect("fresh pairs")
}
