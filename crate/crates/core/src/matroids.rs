//! Generic matrices of graphs and their ranks.
//!
//! Each matroid is the row matroid of a matrix with one row per edge and
//! one block of columns per vertex, evaluated at a generic point. Generic
//! points are replaced by uniform random points of a large prime field: the
//! rank at a random point never exceeds the generic rank, and falls short
//! of it with probability at most `rank / p` per trial. [`generic_rank`]
//! takes the maximum over several independent points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{
    complete_graph, normalize, AnyGraph, Edge, GraphError, GraphRef, SemisimpleGraph, Side,
};
use crate::linalg::{DenseMatrix, Echelon, FieldElement, PrimeField, DEFAULT_PRIME};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatroidKind {
    /// `S_d`: semisimple graphs, loops allowed.
    SymCompletion(usize),
    /// `H_d`: simple graphs.
    Hyperconnectivity(usize),
    /// `B_d`: bipartite graphs; identical to `BirigidityAB(d, d)`.
    Birigidity(usize),
    /// `B_{a,b}`: bipartite graphs, `p: X -> F^a`, `q: Y -> F^b`.
    BirigidityAB(usize, usize),
    /// `R_d`: simple graphs.
    Rigidity(usize),
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidKind::SymCompletion(d) => write!(f, "S_{d}"),
            MatroidKind::Hyperconnectivity(d) => write!(f, "H_{d}"),
            MatroidKind::Birigidity(d) => write!(f, "B_{d}"),
            MatroidKind::BirigidityAB(a, b) => write!(f, "B_{{{a},{b}}}"),
            MatroidKind::Rigidity(d) => write!(f, "R_{d}"),
        }
    }
}

impl MatroidKind {
    /// Dimension of the 0-extensions this matroid is closed under: the
    /// number of neighbours a new vertex needs. Undefined for `B_{a,b}`
    /// with `a != b`, where the two classes need different counts.
    pub fn extension_dim(self) -> Option<usize> {
        match self {
            MatroidKind::SymCompletion(d)
            | MatroidKind::Hyperconnectivity(d)
            | MatroidKind::Birigidity(d)
            | MatroidKind::Rigidity(d) => Some(d),
            MatroidKind::BirigidityAB(a, b) => (a == b).then_some(a),
        }
    }

    pub fn is_bipartite(self) -> bool {
        matches!(self, MatroidKind::Birigidity(_) | MatroidKind::BirigidityAB(..))
    }

    pub fn allows_loops(self) -> bool {
        matches!(self, MatroidKind::SymCompletion(_))
    }

    fn dims(self) -> (usize, usize) {
        match self {
            MatroidKind::SymCompletion(d)
            | MatroidKind::Hyperconnectivity(d)
            | MatroidKind::Birigidity(d)
            | MatroidKind::Rigidity(d) => (d, d),
            MatroidKind::BirigidityAB(a, b) => (a, b),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("{0}: dimensions must be positive")]
    ZeroDimension(MatroidKind),
    #[error("{kind} does not accept this graph: {reason}")]
    GraphClass { kind: MatroidKind, reason: String },
    #[error("{{{0}, {1}}} is not a pair of the ambient graph of {2}")]
    NotAmbientPair(usize, usize, MatroidKind),
    #[error("no closed-form rank for {0}")]
    UnsupportedFormula(MatroidKind),
    #[error("{kind}: expected {expected} size parameter(s), got {got}")]
    Sizes {
        kind: MatroidKind,
        expected: usize,
        got: usize,
    },
    #[error("assignment does not match the matroid: {0}")]
    Assignment(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Controls the randomized rank estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankQueryConfig {
    pub trials: usize,
    pub field: PrimeField,
    pub seed: u64,
}

impl Default for RankQueryConfig {
    fn default() -> Self {
        RankQueryConfig {
            trials: 3,
            field: PrimeField::default(),
            seed: 0,
        }
    }
}

impl RankQueryConfig {
    pub fn new(trials: usize, prime: u64, seed: u64) -> Result<Self, MatroidError> {
        if trials == 0 {
            return Err(MatroidError::NoTrials);
        }
        let field = PrimeField::new(prime)
            .map_err(|e| MatroidError::Assignment(e.to_string()))?;
        Ok(RankQueryConfig { trials, field, seed })
    }

    pub fn seeded(seed: u64) -> Self {
        RankQueryConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        RankQueryConfig {
            trials: trials.max(1),
            ..self
        }
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }
}

/// Field vectors realising a graph: `vectors[v]` is `p(v)` (length `d`),
/// or for `B_{a,b}` `p(x)` of length `a` on class A and `q(y)` of length
/// `b` on class B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericAssignment {
    pub vectors: Vec<Vec<FieldElement>>,
    pub seed: u64,
}

/// The matroid of a kind on the ambient complete graph of a fixed vertex
/// layout: `K_n°` for `S_d`, `K_n` for `H_d` and `R_d`, `K_{a,b}` for the
/// bipartite kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericMatroid {
    kind: MatroidKind,
    n: usize,
    size_a: Option<usize>,
}

impl GenericMatroid {
    /// Validates that `graph` belongs to the class `kind` is defined on.
    pub fn new<'a>(kind: MatroidKind, graph: impl Into<GraphRef<'a>>) -> Result<Self, MatroidError> {
        let graph = graph.into();
        let (p, q) = kind.dims();
        if p == 0 || q == 0 {
            return Err(MatroidError::ZeroDimension(kind));
        }
        let base = graph.base();
        let size_a = match (kind.is_bipartite(), graph.bipartite()) {
            (true, Some(b)) => Some(b.size_a()),
            (true, None) => {
                return Err(MatroidError::GraphClass {
                    kind,
                    reason: "a bipartite graph is required".into(),
                })
            }
            (false, _) => None,
        };
        if !kind.allows_loops() {
            if let Some(v) = (0..base.vertex_count()).find(|&v| base.has_loop(v)) {
                return Err(MatroidError::GraphClass {
                    kind,
                    reason: format!("loop at vertex {v}"),
                });
            }
        }
        Ok(GenericMatroid {
            kind,
            n: base.vertex_count(),
            size_a,
        })
    }

    pub fn kind(&self) -> MatroidKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn side(&self, v: usize) -> Option<Side> {
        self.size_a.map(|a| if v < a { Side::A } else { Side::B })
    }

    /// Column count of vertex `v`'s block.
    pub fn block_width(&self, v: usize) -> usize {
        let (p, q) = self.kind.dims();
        match self.side(v) {
            // an X-vertex carries q(y) from its partners
            Some(Side::A) => q,
            Some(Side::B) => p,
            None => p,
        }
    }

    /// Length of the vector assigned to `v`.
    fn vector_len(&self, v: usize) -> usize {
        let (p, q) = self.kind.dims();
        match self.side(v) {
            Some(Side::A) | None => p,
            Some(Side::B) => q,
        }
    }

    pub fn column_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.n + 1);
        let mut acc = 0;
        offsets.push(0);
        for v in 0..self.n {
            acc += self.block_width(v);
            offsets.push(acc);
        }
        offsets
    }

    pub fn column_count(&self) -> usize {
        (0..self.n).map(|v| self.block_width(v)).sum()
    }

    pub fn is_ambient_pair(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        if u == v {
            return self.kind.allows_loops();
        }
        match (self.side(u), self.side(v)) {
            (Some(x), Some(y)) => x != y,
            _ => true,
        }
    }

    /// Edges of the ambient complete graph, in canonical order.
    pub fn ambient_pairs(&self) -> Vec<Edge> {
        (0..self.n)
            .flat_map(|u| (u..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.is_ambient_pair(u, v))
            .collect()
    }

    pub fn draw_assignment(&self, field: PrimeField, seed: u64) -> GenericAssignment {
        let mut rng = rng::stream(seed, 0);
        let vectors = (0..self.n)
            .map(|v| (0..self.vector_len(v)).map(|_| field.random(&mut rng)).collect())
            .collect();
        GenericAssignment { vectors, seed }
    }

    fn check_assignment(&self, assignment: &GenericAssignment) -> Result<(), MatroidError> {
        if assignment.vectors.len() != self.n {
            return Err(MatroidError::Assignment(format!(
                "{} vectors for {} vertices",
                assignment.vectors.len(),
                self.n
            )));
        }
        for (v, vec) in assignment.vectors.iter().enumerate() {
            if vec.len() != self.vector_len(v) {
                return Err(MatroidError::Assignment(format!(
                    "vertex {v} has a vector of length {}, expected {}",
                    vec.len(),
                    self.vector_len(v)
                )));
            }
        }
        Ok(())
    }

    /// The evaluated generic matrix: one row per edge in the given order.
    pub fn matrix(
        &self,
        edges: &[Edge],
        assignment: &GenericAssignment,
        field: PrimeField,
    ) -> Result<DenseMatrix, MatroidError> {
        self.check_assignment(assignment)?;
        let offsets = self.column_offsets();
        let mut m = DenseMatrix::zeros(field, edges.len(), offsets[self.n]);
        let p = &assignment.vectors;
        for (row, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = normalize(u, v);
            if !self.is_ambient_pair(u, v) {
                return Err(MatroidError::NotAmbientPair(u, v, self.kind));
            }
            let out = m.row_mut(row);
            let (bu, bv) = (offsets[u], offsets[v]);
            match self.kind {
                MatroidKind::SymCompletion(_) if u == v => {
                    out[bu..bu + p[u].len()].copy_from_slice(&p[u]);
                }
                MatroidKind::SymCompletion(_)
                | MatroidKind::Birigidity(_)
                | MatroidKind::BirigidityAB(..) => {
                    // u in class A for the bipartite kinds: q(v) in u's block, p(u) in v's
                    out[bu..bu + p[v].len()].copy_from_slice(&p[v]);
                    out[bv..bv + p[u].len()].copy_from_slice(&p[u]);
                }
                MatroidKind::Hyperconnectivity(_) => {
                    for (j, &x) in p[v].iter().enumerate() {
                        out[bu + j] = x;
                    }
                    for (j, &x) in p[u].iter().enumerate() {
                        out[bv + j] = field.neg(x);
                    }
                }
                MatroidKind::Rigidity(d) => {
                    for j in 0..d {
                        let diff = field.sub(p[u][j], p[v][j]);
                        out[bu + j] = diff;
                        out[bv + j] = field.neg(diff);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Closed-form rank of the ambient complete graph, when known.
    pub fn formula_rank(&self) -> Option<usize> {
        let sizes = match self.size_a {
            Some(a) => vec![a, self.n - a],
            None => vec![self.n],
        };
        rank_formula(self.kind, &sizes).ok()
    }

    /// Draws `config.trials` assignments up front so every query against the
    /// oracle is evaluated at the same points.
    pub fn oracle(&self, config: &RankQueryConfig) -> RankOracle {
        let assignments = (0..config.trials.max(1))
            .map(|t| self.draw_assignment(config.field, rng::substream_seed(config.seed, t as u64)))
            .collect();
        RankOracle {
            matroid: *self,
            field: config.field,
            assignments,
        }
    }
}

/// Rank queries on edge subsets of one ambient matroid, evaluated at a
/// fixed family of random points.
#[derive(Debug, Clone)]
pub struct RankOracle {
    matroid: GenericMatroid,
    field: PrimeField,
    assignments: Vec<GenericAssignment>,
}

impl RankOracle {
    pub fn matroid(&self) -> &GenericMatroid {
        &self.matroid
    }

    fn matrices(&self, edges: &[Edge]) -> Result<Vec<DenseMatrix>, MatroidError> {
        self.assignments
            .iter()
            .map(|a| self.matroid.matrix(edges, a, self.field))
            .collect()
    }

    /// Maximum rank over the oracle's points.
    pub fn rank(&self, edges: &[Edge]) -> Result<usize, MatroidError> {
        Ok(self
            .matrices(edges)?
            .iter()
            .map(DenseMatrix::rank)
            .max()
            .unwrap_or(0))
    }

    /// Greedy basis (in the given row order) at the point of highest rank.
    pub fn basis(&self, edges: &[Edge]) -> Result<Vec<Edge>, MatroidError> {
        let best = self
            .matrices(edges)?
            .into_iter()
            .max_by_key(DenseMatrix::rank)
            .map(|m| m.row_basis())
            .unwrap_or_default();
        Ok(best.into_iter().map(|i| edges[i]).collect())
    }

    /// For each candidate pair, whether adding it to `edges` leaves the rank
    /// unchanged. A pair counts as linked when it lies in the span of
    /// `edges` at every point where `edges` attains its maximum rank.
    pub fn linked(&self, edges: &[Edge], candidates: &[Edge]) -> Result<Vec<bool>, MatroidError> {
        let mut result = vec![true; candidates.len()];
        let mut echelons = Vec::new();
        for a in &self.assignments {
            let m = self.matroid.matrix(edges, a, self.field)?;
            let mut ech = Echelon::new(self.field, m.cols());
            for r in 0..m.rows() {
                ech.insert(m.row(r));
            }
            echelons.push((ech, a));
        }
        let best = echelons.iter().map(|(e, _)| e.rank()).max().unwrap_or(0);
        for (ech, a) in echelons.iter().filter(|(e, _)| e.rank() == best) {
            let cand = self.matroid.matrix(candidates, a, self.field)?;
            for (i, flag) in result.iter_mut().enumerate() {
                if *flag && ech.clone().insert(cand.row(i)) {
                    *flag = false;
                }
            }
        }
        Ok(result)
    }
}

/// Evaluated generic matrix of `graph` at `assignment`.
pub fn build_matrix<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    assignment: &GenericAssignment,
    field: PrimeField,
) -> Result<DenseMatrix, MatroidError> {
    let graph = graph.into();
    let m = GenericMatroid::new(kind, graph)?;
    m.matrix(&graph.base().edges(), assignment, field)
}

pub fn generic_rank<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    config: &RankQueryConfig,
) -> Result<usize, MatroidError> {
    let graph = graph.into();
    GenericMatroid::new(kind, graph)?
        .oracle(config)
        .rank(&graph.base().edges())
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Rank of the ambient complete graph: `sizes = [n]` for `S_d` and `H_d`,
/// `sizes = [m, n]` (class A, class B) for the bipartite kinds.
pub fn rank_formula(kind: MatroidKind, sizes: &[usize]) -> Result<usize, MatroidError> {
    let want = if kind.is_bipartite() { 2 } else { 1 };
    if matches!(kind, MatroidKind::Rigidity(_)) {
        return Err(MatroidError::UnsupportedFormula(kind));
    }
    if sizes.len() != want {
        return Err(MatroidError::Sizes {
            kind,
            expected: want,
            got: sizes.len(),
        });
    }
    let r = match kind {
        MatroidKind::SymCompletion(d) => {
            let n = sizes[0];
            if n >= d {
                d * n - binom2(d)
            } else {
                binom2(n + 1)
            }
        }
        MatroidKind::Hyperconnectivity(d) => {
            let n = sizes[0];
            if n >= d {
                d * n - binom2(d + 1)
            } else {
                binom2(n)
            }
        }
        MatroidKind::Birigidity(d) => {
            let (m, n) = (sizes[0], sizes[1]);
            if m.min(n) <= d {
                m * n
            } else {
                d * (m + n) - d * d
            }
        }
        MatroidKind::BirigidityAB(a, b) => {
            let (m, n) = (sizes[0], sizes[1]);
            if m >= a && n >= b {
                b * m + a * n - a * b
            } else {
                m * n
            }
        }
        MatroidKind::Rigidity(_) => unreachable!(),
    };
    Ok(r)
}

/// Whether the edge set spans the matroid of the ambient complete graph.
pub fn is_rigid<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    config: &RankQueryConfig,
) -> Result<bool, MatroidError> {
    let graph = graph.into();
    let matroid = GenericMatroid::new(kind, graph)?;
    let rank = matroid.oracle(config).rank(&graph.base().edges())?;
    let target = match kind {
        MatroidKind::Rigidity(_) => {
            let complete = complete_graph(graph.base().vertex_count());
            generic_rank(&complete, kind, config)?
        }
        MatroidKind::BirigidityAB(a, b) => {
            let g = graph.bipartite().expect("validated bipartite");
            if g.is_complete() {
                return Ok(true);
            }
            if g.size_a() < a || g.size_b() < b {
                return Ok(false);
            }
            matroid.formula_rank().expect("formula exists")
        }
        _ => matroid.formula_rank().expect("formula exists"),
    };
    Ok(rank == target)
}

pub fn is_independent<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    config: &RankQueryConfig,
) -> Result<bool, MatroidError> {
    let graph = graph.into();
    Ok(generic_rank(graph, kind, config)? == graph.base().edge_count())
}

/// Whether `r(E + uv) = r(E)`.
pub fn is_linked<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    u: usize,
    v: usize,
    config: &RankQueryConfig,
) -> Result<bool, MatroidError> {
    let graph = graph.into();
    let matroid = GenericMatroid::new(kind, graph)?;
    let (u, v) = normalize(u, v);
    if !matroid.is_ambient_pair(u, v) {
        return Err(MatroidError::NotAmbientPair(u, v, kind));
    }
    if graph.base().has_edge(u, v) {
        return Ok(true);
    }
    let edges = graph.base().edges();
    let oracle = matroid.oracle(config);
    let mut extended = edges.clone();
    extended.push((u, v));
    Ok(oracle.rank(&extended)? == oracle.rank(&edges)?)
}

/// Ambient pairs that are linked in `graph` but not edges of it.
pub fn linked_non_edges<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    config: &RankQueryConfig,
) -> Result<Vec<Edge>, MatroidError> {
    let graph = graph.into();
    let matroid = GenericMatroid::new(kind, graph)?;
    let base = graph.base();
    let candidates: Vec<Edge> = matroid
        .ambient_pairs()
        .into_iter()
        .filter(|&(u, v)| !base.has_edge(u, v))
        .collect();
    let flags = matroid.oracle(config).linked(&base.edges(), &candidates)?;
    Ok(candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(e, linked)| linked.then_some(e))
        .collect())
}

/// The closure: `graph` plus every linked ambient pair.
pub fn closure<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    config: &RankQueryConfig,
) -> Result<AnyGraph, MatroidError> {
    let graph = graph.into();
    let mut edges = graph.base().edges();
    edges.extend(linked_non_edges(graph, kind, config)?);
    Ok(graph.to_owned().with_edge_set(&edges)?)
}

/// `n - #components`: the rank of the cycle matroid.
pub fn cycle_matroid_rank(graph: &SemisimpleGraph) -> usize {
    graph.vertex_count() - graph.components().len()
}

/// Rank of the even cycle matroid: each component contributes its vertex
/// count if it has a loop or an odd cycle, and one less otherwise.
pub fn even_cycle_rank(graph: &SemisimpleGraph) -> usize {
    graph
        .components()
        .iter()
        .map(|comp| {
            let set: BTreeSet<usize> = comp.iter().copied().collect();
            let (sub, _) = graph.induced_subgraph(comp).expect("component vertices exist");
            let odd = set.iter().any(|&v| graph.has_loop(v)) || sub.two_coloring().is_none();
            if odd {
                comp.len()
            } else {
                comp.len() - 1
            }
        })
        .sum()
}

/// Checks that `graph` spans `R_d(K_n)` exactly when `graph°` spans
/// `S_{d+1}(K_n°)`; both sides are computed, neither is assumed.
pub fn rigidity_completability_link_check(
    graph: &SemisimpleGraph,
    d: usize,
    config: &RankQueryConfig,
) -> Result<bool, MatroidError> {
    let rigid = is_rigid(graph, MatroidKind::Rigidity(d), config)?;
    let looped = graph.add_loops()?;
    let completable = is_rigid(&looped, MatroidKind::SymCompletion(d + 1), config)?;
    Ok(rigid == completable)
}

/// Convenience: the default configuration at the default prime.
pub fn default_config(seed: u64) -> RankQueryConfig {
    RankQueryConfig {
        trials: 3,
        field: PrimeField::new(DEFAULT_PRIME).expect("default prime"),
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{
        complete_bipartite, complete_semisimple, complete_tripartite, cycle_graph, path_graph,
        BipartiteGraph,
    };

    fn cfg() -> RankQueryConfig {
        RankQueryConfig::seeded(1)
    }

    fn assignment(vectors: Vec<Vec<i64>>, field: PrimeField) -> GenericAssignment {
        GenericAssignment {
            vectors: vectors
                .into_iter()
                .map(|v| v.into_iter().map(|x| field.from_i64(x)).collect())
                .collect(),
            seed: 0,
        }
    }

    #[test]
    fn hyperconnectivity_row_pattern() {
        let f = PrimeField::default();
        let g = SemisimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        let a = assignment(vec![vec![2, 3], vec![5, 7]], f);
        let m = build_matrix(&g, MatroidKind::Hyperconnectivity(2), &a, f).unwrap();
        assert_eq!(m, DenseMatrix::from_rows(f, &[vec![5, 7, -2, -3]]));
    }

    #[test]
    fn symmetric_loop_and_edge_rows() {
        let f = PrimeField::default();
        let g = SemisimpleGraph::from_edges(3, [(0, 0), (0, 2)]).unwrap();
        let a = assignment(vec![vec![2, 3], vec![5, 7], vec![11, 13]], f);
        let m = build_matrix(&g, MatroidKind::SymCompletion(2), &a, f).unwrap();
        assert_eq!(
            m,
            DenseMatrix::from_rows(f, &[vec![2, 3, 0, 0, 0, 0], vec![11, 13, 0, 0, 2, 3]])
        );
    }

    #[test]
    fn rigidity_row_pattern() {
        let f = PrimeField::default();
        let g = SemisimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        let a = assignment(vec![vec![2, 3], vec![5, 7]], f);
        let m = build_matrix(&g, MatroidKind::Rigidity(2), &a, f).unwrap();
        assert_eq!(m, DenseMatrix::from_rows(f, &[vec![-3, -4, 3, 4]]));
    }

    #[test]
    fn birigidity_ab_row_pattern() {
        // X = {0}, Y = {1}; p(x) has length a = 1, q(y) length b = 2
        let f = PrimeField::default();
        let g = complete_bipartite(1, 1);
        let a = assignment(vec![vec![4], vec![6, 9]], f);
        let m = build_matrix(&g, MatroidKind::BirigidityAB(1, 2), &a, f).unwrap();
        assert_eq!(m, DenseMatrix::from_rows(f, &[vec![6, 9, 4]]));
        let matroid = GenericMatroid::new(MatroidKind::BirigidityAB(1, 2), &g).unwrap();
        assert_eq!(matroid.column_offsets(), vec![0, 2, 3]);
    }

    #[test]
    fn class_validation() {
        let looped = complete_semisimple(3);
        assert!(matches!(
            generic_rank(&looped, MatroidKind::Hyperconnectivity(2), &cfg()),
            Err(MatroidError::GraphClass { .. })
        ));
        assert!(matches!(
            generic_rank(&complete_graph(3), MatroidKind::Birigidity(2), &cfg()),
            Err(MatroidError::GraphClass { .. })
        ));
        assert!(matches!(
            generic_rank(&complete_graph(3), MatroidKind::SymCompletion(0), &cfg()),
            Err(MatroidError::ZeroDimension(_))
        ));
    }

    #[test]
    fn small_rank_examples() {
        assert_eq!(generic_rank(&complete_graph(4), MatroidKind::Hyperconnectivity(2), &cfg()).unwrap(), 5);
        assert_eq!(generic_rank(&complete_bipartite(2, 5), MatroidKind::Birigidity(2), &cfg()).unwrap(), 10);
        for kind in [
            MatroidKind::SymCompletion(2),
            MatroidKind::Hyperconnectivity(3),
            MatroidKind::Rigidity(2),
        ] {
            assert_eq!(generic_rank(&SemisimpleGraph::empty(4), kind, &cfg()).unwrap(), 0);
        }
        assert_eq!(
            generic_rank(&BipartiteGraph::empty(2, 3), MatroidKind::BirigidityAB(1, 2), &cfg()).unwrap(),
            0
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(rank_formula(MatroidKind::SymCompletion(3), &[2]).unwrap(), 3);
        assert_eq!(rank_formula(MatroidKind::Birigidity(2), &[3, 3]).unwrap(), 8);
        assert_eq!(rank_formula(MatroidKind::BirigidityAB(1, 2), &[2, 3]).unwrap(), 5);
        assert_eq!(rank_formula(MatroidKind::Hyperconnectivity(2), &[4]).unwrap(), 5);
        assert_eq!(rank_formula(MatroidKind::Hyperconnectivity(4), &[3]).unwrap(), 3);
        assert_eq!(rank_formula(MatroidKind::BirigidityAB(3, 1), &[2, 5]).unwrap(), 10);
        assert!(matches!(
            rank_formula(MatroidKind::Rigidity(2), &[4]),
            Err(MatroidError::UnsupportedFormula(_))
        ));
        assert!(matches!(
            rank_formula(MatroidKind::Birigidity(2), &[4]),
            Err(MatroidError::Sizes { .. })
        ));
    }

    #[test]
    fn rigidity_examples() {
        let k33 = complete_bipartite(3, 3).to_semisimple();
        assert!(!is_rigid(&k33, MatroidKind::Hyperconnectivity(2), &cfg()).unwrap());
        assert_eq!(generic_rank(&k33, MatroidKind::Hyperconnectivity(2), &cfg()).unwrap(), 8);
        for (m, n) in [(2, 2), (3, 4), (5, 2)] {
            assert!(is_rigid(&complete_bipartite(m, n), MatroidKind::Birigidity(2), &cfg()).unwrap());
        }
        let k331 = complete_tripartite(3, 3, 1);
        assert!(!is_rigid(&k331, MatroidKind::Hyperconnectivity(3), &cfg()).unwrap());
        assert!(is_rigid(&complete_graph(5), MatroidKind::Rigidity(2), &cfg()).unwrap());
    }

    #[test]
    fn ab_birigid_complete_fallback() {
        // |X| < a, so the rank test does not apply but completeness does
        let g = complete_bipartite(1, 4);
        assert!(is_rigid(&g, MatroidKind::BirigidityAB(2, 1), &cfg()).unwrap());
        let g = g.without_edge(0, 1).unwrap();
        assert!(!is_rigid(&g, MatroidKind::BirigidityAB(2, 1), &cfg()).unwrap());
    }

    #[test]
    fn linked_examples() {
        let k4 = complete_graph(4);
        assert!(is_linked(&k4, MatroidKind::Hyperconnectivity(2), 0, 1, &cfg()).unwrap());
        let path = path_graph(3);
        assert!(is_linked(&path, MatroidKind::Hyperconnectivity(1), 0, 2, &cfg()).unwrap());
        let two = SemisimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!is_linked(&two, MatroidKind::Hyperconnectivity(1), 0, 2, &cfg()).unwrap());
        assert!(matches!(
            is_linked(&path, MatroidKind::Hyperconnectivity(1), 1, 1, &cfg()),
            Err(MatroidError::NotAmbientPair(..))
        ));
        // every ambient pair of a spanning graph is linked
        let k5 = complete_graph(5).without_edge(0, 1).unwrap();
        assert!(is_rigid(&k5, MatroidKind::Hyperconnectivity(2), &cfg()).unwrap());
        let m = GenericMatroid::new(MatroidKind::Hyperconnectivity(2), &k5).unwrap();
        for (u, v) in m.ambient_pairs() {
            assert!(is_linked(&k5, MatroidKind::Hyperconnectivity(2), u, v, &cfg()).unwrap());
        }
    }

    #[test]
    fn closure_is_a_fixed_point() {
        let g = SemisimpleGraph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let c = closure(&g, MatroidKind::Hyperconnectivity(1), &cfg()).unwrap();
        assert_eq!(c.base().edges(), vec![(0, 1), (0, 2), (1, 2), (3, 4)]);
        let again = closure(&c, MatroidKind::Hyperconnectivity(1), &cfg()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn even_cycle_examples() {
        assert_eq!(even_cycle_rank(&complete_graph(3)), 3);
        assert_eq!(even_cycle_rank(&cycle_graph(4)), 3);
        assert_eq!(even_cycle_rank(&SemisimpleGraph::from_edges(1, [(0, 0)]).unwrap()), 1);
        assert_eq!(even_cycle_rank(&SemisimpleGraph::empty(3)), 0);
    }

    #[test]
    fn even_cycle_agrees_with_brute_force_matrix() {
        // 1 x |E| matrix oracle: rank of S(G, p) with d = 1 at a random point
        for g in [complete_graph(3), cycle_graph(4), cycle_graph(5)] {
            let f = PrimeField::default();
            let m = GenericMatroid::new(MatroidKind::SymCompletion(1), &g).unwrap();
            let a = m.draw_assignment(f, 99);
            let rank = m.matrix(&g.edges(), &a, f).unwrap().rank();
            assert_eq!(rank, even_cycle_rank(&g));
        }
    }

    #[test]
    fn link_check_examples() {
        assert!(rigidity_completability_link_check(&complete_graph(4), 2, &cfg()).unwrap());
        let two = SemisimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(rigidity_completability_link_check(&two, 1, &cfg()).unwrap());
        assert!(!is_rigid(&two, MatroidKind::Rigidity(1), &cfg()).unwrap());
        for n in 1..6 {
            for d in 1..=n {
                assert!(rigidity_completability_link_check(&complete_graph(n), d, &cfg()).unwrap());
            }
        }
    }

    #[test]
    fn generic_rank_is_deterministic_in_seed() {
        let g = complete_graph(6).without_edge(0, 1).unwrap();
        let a = generic_rank(&g, MatroidKind::Hyperconnectivity(3), &cfg()).unwrap();
        let b = generic_rank(&g, MatroidKind::Hyperconnectivity(3), &cfg()).unwrap();
        assert_eq!(a, b);
    }
}
