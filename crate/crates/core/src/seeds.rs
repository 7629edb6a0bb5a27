//! Matroid seeds.
//!
//! A vertex set `K` is a seed of `G` (for a matroid with the
//! d-dimensional 0-extension property) when `r(G) = r(G[K]) + d|V - K|`
//! and every proper superset `K' ⊇ K` has an outside vertex `x` with
//! `|(K' + x) ∩ N(x)| >= d`. Eligibility only grows with `K'`, so the
//! second condition holds exactly when greedily adding eligible vertices
//! starting from `K` reaches `V`; [`greedy_closure`] implements that check.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::min_vertex_cover;
use crate::graphs::{BipartiteGraph, Edge, GraphRef, SemisimpleGraph};
use crate::matroids::{GenericMatroid, MatroidError, MatroidKind, RankOracle, RankQueryConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("{0} has no 0-extension dimension")]
    NoExtensionDim(MatroidKind),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("minimum degree {min_degree} is below the required {required}")]
    MinDegree { min_degree: usize, required: usize },
    #[error("{0} is not a seed")]
    NotASeed(String),
    #[error("no non-loop edge has both ends outside the seed")]
    NoUncoveredEdge,
    #[error("rank anomaly: {0}")]
    RankAnomaly(String),
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(String),
    #[error("{0} does not have the required extension property")]
    MissingProperty(MatroidKind),
    #[error("size bound violated: |K| = {size}, bound {bound}")]
    BoundViolated { size: usize, bound: usize },
}

/// Witness that `seed_set` is a seed: replaying `elimination_order` as
/// 0-extensions (each vertex joined to its first `dim` witnesses) on
/// `basis_edges` gives a basis of the whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedCertificate {
    pub kind: MatroidKind,
    pub dim: usize,
    pub seed_set: Vec<usize>,
    pub elimination_order: Vec<usize>,
    pub witnesses: Vec<Vec<usize>>,
    pub basis_edges: Vec<Edge>,
    pub rank: usize,
    pub seed_rank: usize,
}

impl SeedCertificate {
    /// Edge set built by replaying the elimination order on the basis of
    /// `G[K]`.
    pub fn replay_edges(&self) -> Vec<Edge> {
        let mut edges = self.basis_edges.clone();
        for (v, wit) in self.elimination_order.iter().zip(&self.witnesses) {
            edges.extend(wit.iter().take(self.dim).map(|&w| crate::graphs::normalize(*v, w)));
        }
        edges
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }
}

/// Greedy closure with its elimination order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub set: BTreeSet<usize>,
    pub order: Vec<usize>,
    pub witnesses: Vec<Vec<usize>>,
}

fn eligible_witnesses(graph: &SemisimpleGraph, current: &BTreeSet<usize>, x: usize) -> Vec<usize> {
    graph
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&w| w == x || current.contains(&w))
        .collect()
}

/// Repeatedly adds the smallest vertex `x` with `|(C + x) ∩ N(x)| >= d`.
pub fn greedy_elimination(graph: &SemisimpleGraph, d: usize, start: &BTreeSet<usize>) -> Closure {
    let n = graph.vertex_count();
    let mut set: BTreeSet<usize> = start.iter().copied().filter(|&v| v < n).collect();
    let mut order = Vec::new();
    let mut witnesses = Vec::new();
    loop {
        let next = (0..n).filter(|v| !set.contains(v)).find_map(|x| {
            let wit = eligible_witnesses(graph, &set, x);
            (wit.len() >= d).then_some((x, wit))
        });
        let Some((x, wit)) = next else { break };
        set.insert(x);
        order.push(x);
        witnesses.push(wit);
    }
    Closure { set, order, witnesses }
}

pub fn greedy_closure(graph: &SemisimpleGraph, d: usize, start: &BTreeSet<usize>) -> BTreeSet<usize> {
    greedy_elimination(graph, d, start).set
}

/// The quantifier form of the reachability condition, by enumerating every
/// `K'` with `K ⊆ K' ⊊ V`. Exponential; for cross-checking only.
pub fn reachability_by_enumeration(graph: &SemisimpleGraph, d: usize, start: &BTreeSet<usize>) -> bool {
    let n = graph.vertex_count();
    assert!(n < 20, "enumeration is limited to small graphs");
    let free: Vec<usize> = (0..n).filter(|v| !start.contains(v)).collect();
    (0u32..1 << free.len()).all(|mask| {
        if mask == (1 << free.len()) - 1 {
            return true; // K' = V is excluded
        }
        let mut kp = start.clone();
        kp.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        (0..n)
            .filter(|x| !kp.contains(x))
            .any(|x| eligible_witnesses(graph, &kp, x).len() >= d)
    })
}

fn extension_dim(kind: MatroidKind) -> Result<usize, SeedError> {
    kind.extension_dim().ok_or(SeedError::NoExtensionDim(kind))
}

fn check_vertices(graph: &SemisimpleGraph, set: &BTreeSet<usize>) -> Result<(), SeedError> {
    match set.iter().find(|&&v| v >= graph.vertex_count()) {
        Some(&v) => Err(SeedError::VertexOutOfRange(v)),
        None => Ok(()),
    }
}

fn edges_avoiding(graph: &SemisimpleGraph, removed: &[usize]) -> Vec<Edge> {
    graph
        .edges()
        .into_iter()
        .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
        .collect()
}

/// Runs `f` with `config`, and once more with four times the trials if the
/// first result is `None`.
fn with_retry<T>(
    config: &RankQueryConfig,
    mut f: impl FnMut(&RankQueryConfig) -> Result<Option<T>, SeedError>,
) -> Result<Option<T>, SeedError> {
    match f(config)? {
        Some(t) => Ok(Some(t)),
        None => f(&config.with_trials(config.trials * 4)),
    }
}

fn certificate_with(
    oracle: &RankOracle,
    graph: &SemisimpleGraph,
    kind: MatroidKind,
    d: usize,
    seed_set: &BTreeSet<usize>,
    closure: &Closure,
) -> Result<Option<SeedCertificate>, SeedError> {
    let inner = graph.edges_within(seed_set);
    let rank = oracle.rank(&graph.edges())?;
    let seed_rank = oracle.rank(&inner)?;
    if rank != seed_rank + d * (graph.vertex_count() - seed_set.len()) {
        return Ok(None);
    }
    Ok(Some(SeedCertificate {
        kind,
        dim: d,
        seed_set: seed_set.iter().copied().collect(),
        elimination_order: closure.order.clone(),
        witnesses: closure.witnesses.clone(),
        basis_edges: oracle.basis(&inner)?,
        rank,
        seed_rank,
    }))
}

/// Checks both seed conditions. Returns a certificate when `seed_set` is a
/// seed. A failed rank equality is re-checked with four times the trials.
pub fn is_seed<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    seed_set: &BTreeSet<usize>,
    config: &RankQueryConfig,
) -> Result<Option<SeedCertificate>, SeedError> {
    let graph = graph.into();
    let d = extension_dim(kind)?;
    let base = graph.base();
    check_vertices(base, seed_set)?;
    let matroid = GenericMatroid::new(kind, graph)?;
    let closure = greedy_elimination(base, d, seed_set);
    if closure.set.len() != base.vertex_count() {
        return Ok(None);
    }
    with_retry(config, |cfg| {
        certificate_with(&matroid.oracle(cfg), base, kind, d, seed_set, &closure)
    })
}

/// A nested sequence `X_0 ⊆ X_1 ⊆ ... ⊆ X_t = V` in which every vertex of
/// `X_i - X_{i-1}` has at least `d` neighbours in `X_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedChain {
    pub levels: Vec<BTreeSet<usize>>,
}

impl SeedChain {
    pub fn new(levels: Vec<BTreeSet<usize>>) -> Self {
        SeedChain { levels }
    }

    pub fn base(&self) -> &BTreeSet<usize> {
        &self.levels[0]
    }

    /// The index `t` of the last level.
    pub fn length(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn validate(&self, graph: &SemisimpleGraph, d: usize) -> Result<(), SeedError> {
        let n = graph.vertex_count();
        let Some(last) = self.levels.last() else {
            return Err(SeedError::InvalidChain("no levels".into()));
        };
        if last.len() != n || last.iter().any(|&v| v >= n) {
            return Err(SeedError::InvalidChain("last level is not V".into()));
        }
        for (i, pair) in self.levels.windows(2).enumerate() {
            let (prev, cur) = (&pair[0], &pair[1]);
            if !prev.is_subset(cur) {
                return Err(SeedError::InvalidChain(format!("level {i} is not contained in level {}", i + 1)));
            }
            for &v in cur.difference(prev) {
                let inside = graph.neighbors(v).intersection(prev).count();
                if inside < d {
                    return Err(SeedError::InvalidChain(format!(
                        "vertex {v} of level {} has {inside} neighbours in level {i}, needs {d}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Output of [`find_seed`], with the intermediate sets of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedConstruction {
    pub certificate: SeedCertificate,
    /// Back-edges joining each later-level vertex to `d` earlier vertices.
    pub back_edges: Vec<Edge>,
    /// Edges completing the back-edges to a basis.
    pub completion_edges: Vec<Edge>,
    pub base_size: usize,
    pub chain_length: usize,
    /// `floor(2|X_0| d^(t+1) / (d-1))`, for `d >= 2`.
    pub size_bound: Option<usize>,
}

fn construct_seed(
    graph: GraphRef<'_>,
    kind: MatroidKind,
    d: usize,
    chain: &SeedChain,
    config: &RankQueryConfig,
) -> Result<Option<SeedConstruction>, SeedError> {
    let base = graph.base();
    let oracle = GenericMatroid::new(kind, graph)?.oracle(config);

    let mut level_of = vec![0usize; base.vertex_count()];
    let mut targets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut back_edges = Vec::new();
    for (i, pair) in chain.levels.windows(2).enumerate() {
        for &v in pair[1].difference(&pair[0]) {
            level_of[v] = i + 1;
            let t: Vec<usize> = base.neighbors(v).intersection(&pair[0]).copied().take(d).collect();
            back_edges.extend(t.iter().map(|&w| crate::graphs::normalize(v, w)));
            targets.insert(v, t);
        }
    }
    let back_set: BTreeSet<Edge> = back_edges.iter().copied().collect();
    let mut ordered = back_edges.clone();
    ordered.extend(base.edges().into_iter().filter(|e| !back_set.contains(e)));
    let basis: BTreeSet<Edge> = oracle.basis(&ordered)?.into_iter().collect();
    if !back_set.is_subset(&basis) {
        return Ok(None);
    }
    let completion_edges: Vec<Edge> = ordered.iter().copied().filter(|e| basis.contains(e) && !back_set.contains(e)).collect();

    // Y_v: v together with the Y-sets of its back-edge targets outside X_0
    let x0 = chain.base();
    let mut y_sets: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut by_level: Vec<usize> = targets.keys().copied().collect();
    by_level.sort_by_key(|&v| (level_of[v], v));
    for v in by_level {
        let mut y = BTreeSet::from([v]);
        for u in &targets[&v] {
            if let Some(yu) = y_sets.get(u) {
                y.extend(yu.iter().copied());
            }
        }
        y_sets.insert(v, y);
    }
    let z: BTreeSet<usize> = completion_edges
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter(|v| !x0.contains(v))
        .collect();
    let mut seed_set = x0.clone();
    for v in &z {
        seed_set.extend(y_sets[v].iter().copied());
    }

    let closure = greedy_elimination(base, d, &seed_set);
    if closure.set.len() != base.vertex_count() {
        return Err(SeedError::RankAnomaly("constructed set does not reach V".into()));
    }
    let Some(certificate) = certificate_with(&oracle, base, kind, d, &seed_set, &closure)? else {
        return Ok(None);
    };
    let t = chain.length();
    let size_bound = (d >= 2).then(|| 2 * x0.len() * d.pow(t as u32 + 1) / (d - 1));
    if d >= 2 && seed_set.len() * (d - 1) > 2 * x0.len() * d.pow(t as u32 + 1) {
        return Err(SeedError::BoundViolated {
            size: seed_set.len(),
            bound: size_bound.unwrap_or(0),
        });
    }
    Ok(Some(SeedConstruction {
        certificate,
        back_edges,
        completion_edges,
        base_size: x0.len(),
        chain_length: t,
        size_bound,
    }))
}

/// Builds a seed from a chain: back-edges `E'` to the `d` smallest
/// neighbours one level down, a basis `E' ∪ E''` chosen greedily with `E'`
/// first, `Z = V(E'') - X_0` and `K = X_0 ∪ ⋃_{v ∈ Z} Y_v`.
pub fn find_seed<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    chain: &SeedChain,
    config: &RankQueryConfig,
) -> Result<SeedConstruction, SeedError> {
    let graph = graph.into();
    let d = extension_dim(kind)?;
    chain.validate(graph.base(), d)?;
    with_retry(config, |cfg| construct_seed(graph, kind, d, chain, cfg))?
        .ok_or_else(|| SeedError::RankAnomaly("seed construction failed; rerun with more trials".into()))
}

/// Outcome of cover-set sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSample {
    pub set: BTreeSet<usize>,
    pub sampled: usize,
    pub patched: usize,
}

/// Samples each vertex of `pool` with probability `probability`, then adds
/// the smallest missing neighbours in `pool` of every vertex of `targets`
/// that has fewer than `d` neighbours in the set.
pub fn sample_cover_set_within<R: Rng + ?Sized>(
    graph: &SemisimpleGraph,
    d: usize,
    probability: f64,
    pool: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
    rng: &mut R,
) -> Result<CoverSample, SeedError> {
    for &v in targets {
        let available = graph.neighbors(v).intersection(pool).count();
        if available < d {
            return Err(SeedError::MinDegree {
                min_degree: available,
                required: d,
            });
        }
    }
    let p = probability.clamp(0.0, 1.0);
    let mut set: BTreeSet<usize> = pool.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    let sampled = set.len();
    for &v in targets {
        let mut have = graph.neighbors(v).intersection(&set).count();
        for &w in graph.neighbors(v).intersection(pool) {
            if have >= d {
                break;
            }
            if set.insert(w) {
                have += 1;
            }
        }
    }
    let patched = set.len() - sampled;
    Ok(CoverSample { set, sampled, patched })
}

/// A set `X_0` with `|N(v) ∩ X_0| >= d` for every vertex `v`.
pub fn sample_cover_set<R: Rng + ?Sized>(
    graph: &SemisimpleGraph,
    d: usize,
    probability: f64,
    rng: &mut R,
) -> Result<CoverSample, SeedError> {
    let all: BTreeSet<usize> = (0..graph.vertex_count()).collect();
    sample_cover_set_within(graph, d, probability, &all, &all, rng)
}

/// Deterministic cover set: repeatedly adds the vertex adjacent to the most
/// deficient vertices (ties to the smallest index).
pub fn greedy_cover_set(graph: &SemisimpleGraph, d: usize) -> Result<BTreeSet<usize>, SeedError> {
    let n = graph.vertex_count();
    if n > 0 && graph.min_degree() < d {
        return Err(SeedError::MinDegree {
            min_degree: graph.min_degree(),
            required: d,
        });
    }
    let mut set = BTreeSet::new();
    let mut count = vec![0usize; n];
    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| count[v] < d).collect();
        if deficient.is_empty() {
            return Ok(set);
        }
        let best = (0..n)
            .filter(|w| !set.contains(w))
            .max_by_key(|&w| {
                let gain = deficient.iter().filter(|&&v| graph.neighbors(v).contains(&w)).count();
                (gain, std::cmp::Reverse(w))
            })
            .expect("a deficient vertex has an unused neighbour");
        set.insert(best);
        for &v in graph.neighbors(best) {
            count[v] += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankChain {
    pub full: usize,
    pub without_u: usize,
    pub without_v: usize,
    pub without_both: usize,
}

impl RankChain {
    /// `r(G) = r(G-u) + d = r(G-v) + d = r(G-u-v) + 2d`.
    pub fn holds(&self, d: usize) -> bool {
        self.full == self.without_u + d && self.full == self.without_v + d && self.full == self.without_both + 2 * d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletablePair {
    pub u: usize,
    pub v: usize,
    /// The maximal seed `V - {u, v}` reached from the input seed.
    pub grown_seed: Vec<usize>,
    pub ranks: RankChain,
}

fn has_uncovered_edge(graph: &SemisimpleGraph, covered: &BTreeSet<usize>) -> Option<Edge> {
    graph
        .edges()
        .into_iter()
        .find(|&(a, b)| a != b && !covered.contains(&a) && !covered.contains(&b))
}

fn rank_chain(oracle: &RankOracle, graph: &SemisimpleGraph, u: usize, v: usize) -> Result<RankChain, SeedError> {
    Ok(RankChain {
        full: oracle.rank(&graph.edges())?,
        without_u: oracle.rank(&edges_avoiding(graph, &[u]))?,
        without_v: oracle.rank(&edges_avoiding(graph, &[v]))?,
        without_both: oracle.rank(&edges_avoiding(graph, &[u, v]))?,
    })
}

/// Finds an edge `uv` outside the seed whose endpoints each carry exactly
/// `d` of the rank. Grows the seed by eligible vertices for as long as a
/// non-loop edge stays outside it; the process ends at `V - {u, v}`.
pub fn deletable_pair<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    seed_set: &BTreeSet<usize>,
    config: &RankQueryConfig,
) -> Result<DeletablePair, SeedError> {
    let graph = graph.into();
    let d = extension_dim(kind)?;
    let base = graph.base();
    let n = base.vertex_count();
    if n > 0 && base.min_degree() < d + 2 {
        return Err(SeedError::MinDegree {
            min_degree: base.min_degree(),
            required: d + 2,
        });
    }
    if has_uncovered_edge(base, seed_set).is_none() {
        return Err(SeedError::NoUncoveredEdge);
    }
    if is_seed(graph, kind, seed_set, config)?.is_none() {
        return Err(SeedError::NotASeed(format!("{seed_set:?}")));
    }
    let mut grown = seed_set.clone();
    loop {
        let next = (0..n).filter(|x| !grown.contains(x)).find(|&x| {
            if eligible_witnesses(base, &grown, x).len() < d {
                return false;
            }
            let mut bigger = grown.clone();
            bigger.insert(x);
            has_uncovered_edge(base, &bigger).is_some()
        });
        match next {
            Some(x) => {
                grown.insert(x);
            }
            None => break,
        }
    }
    let rest: Vec<usize> = (0..n).filter(|x| !grown.contains(x)).collect();
    let &[u, v] = rest.as_slice() else {
        return Err(SeedError::RankAnomaly(format!(
            "seed growth stopped with {} outside vertices",
            rest.len()
        )));
    };
    if !base.has_edge(u, v) {
        return Err(SeedError::RankAnomaly(format!("{u} and {v} are not adjacent")));
    }
    let matroid = GenericMatroid::new(kind, graph)?;
    let ranks = with_retry(config, |cfg| {
        let chain = rank_chain(&matroid.oracle(cfg), base, u, v)?;
        Ok(chain.holds(d).then_some(chain))
    })?
    .ok_or_else(|| SeedError::RankAnomaly(format!("rank chain fails for ({u}, {v})")))?;
    Ok(DeletablePair {
        u,
        v,
        grown_seed: grown.into_iter().collect(),
        ranks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedPairsReport {
    pub u: usize,
    pub v: usize,
    /// Pairs certified linked by the rank drop at `u, v`.
    pub certified: Vec<Edge>,
    /// Certified pairs that the direct linkedness test rejected.
    pub violations: Vec<Edge>,
}

/// Pairs forced to be linked by a rank drop. With `u != v`, `uv ∈ E` and
/// `r(G) = r(G-u-v) + 2d`: every ambient pair `xy` with `x ∈ N(u) - {u,v}`
/// and `y ∈ N(v) - {u,v}`. With `u == v` looped and `r(G) = r(G-v) + d`:
/// every ambient pair of distinct `x, y ∈ N(v) - {v}`. Each pair is
/// cross-checked directly.
pub fn linked_neighbour_pairs<'a>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    u: usize,
    v: usize,
    config: &RankQueryConfig,
) -> Result<LinkedPairsReport, SeedError> {
    let graph = graph.into();
    let d = extension_dim(kind)?;
    let looped_case = u == v;
    let has_property = match kind {
        MatroidKind::SymCompletion(_) => true,
        MatroidKind::Hyperconnectivity(_) | MatroidKind::Birigidity(_) | MatroidKind::BirigidityAB(..) => !looped_case,
        MatroidKind::Rigidity(_) => false,
    };
    if !has_property {
        return Err(SeedError::MissingProperty(kind));
    }
    let base = graph.base();
    let n = base.vertex_count();
    if u >= n || v >= n {
        return Err(SeedError::VertexOutOfRange(u.max(v)));
    }
    if n > 0 && base.min_degree() < d + 1 {
        return Err(SeedError::MinDegree {
            min_degree: base.min_degree(),
            required: d + 1,
        });
    }
    if !base.has_edge(u, v) {
        return Err(SeedError::Hypotheses(format!("{{{u}, {v}}} is not an edge")));
    }
    let matroid = GenericMatroid::new(kind, graph)?;
    let (removed, drop): (Vec<usize>, usize) = if looped_case { (vec![v], d) } else { (vec![u, v], 2 * d) };
    let holds = with_retry(config, |cfg| {
        let oracle = matroid.oracle(cfg);
        let full = oracle.rank(&base.edges())?;
        let less = oracle.rank(&edges_avoiding(base, &removed))?;
        Ok((full == less + drop).then_some(()))
    })?;
    if holds.is_none() {
        return Err(SeedError::Hypotheses(format!(
            "rank does not drop by {drop} when deleting {removed:?}"
        )));
    }
    let outside = |w: &usize| *w != u && *w != v;
    let nu: Vec<usize> = base.neighbors(u).iter().copied().filter(outside).collect();
    let nv: Vec<usize> = base.neighbors(v).iter().copied().filter(outside).collect();
    let mut pairs = BTreeSet::new();
    for &x in &nu {
        for &y in &nv {
            if (!looped_case || x != y) && matroid.is_ambient_pair(x.min(y), x.max(y)) {
                pairs.insert(crate::graphs::normalize(x, y));
            }
        }
    }
    let certified: Vec<Edge> = pairs.into_iter().collect();
    let mut violations = Vec::new();
    let flags = matroid.oracle(config).linked(&base.edges(), &certified)?;
    let mut recheck = Vec::new();
    for (&pair, ok) in certified.iter().zip(flags) {
        if !ok {
            recheck.push(pair);
        }
    }
    if !recheck.is_empty() {
        let bigger = config.with_trials(config.trials * 4);
        let flags = matroid.oracle(&bigger).linked(&base.edges(), &recheck)?;
        violations.extend(recheck.into_iter().zip(flags).filter(|(_, ok)| !ok).map(|(e, _)| e));
    }
    Ok(LinkedPairsReport {
        u,
        v,
        certified,
        violations,
    })
}

/// Why a cover-based seed could not be built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BiconnectedSeedFailure {
    /// A vertex outside `A'` has fewer than `d` neighbours in the cover.
    CoverDegree { vertex: usize, available: usize },
    /// A vertex of `A'` has fewer than `d` neighbours in `X_1`.
    ChainDegree { vertex: usize, available: usize },
    /// The chain was valid but the resulting set failed verification.
    Verification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconnectedSeedReport {
    pub cover_size: usize,
    /// Cover vertices with at most `k - d` neighbours in the cover.
    pub sparse_cover: Vec<usize>,
    pub base_size: Option<usize>,
    pub outcome: Result<SeedConstruction, BiconnectedSeedFailure>,
}

/// Seed of a bipartite graph built from a minimum vertex cover `A`:
/// `A' = {v ∈ A : |N(v) ∩ A| <= k - d}`, a sampled `X_0 ⊆ A` in which every
/// vertex outside `A'` has `d` neighbours, and the chain
/// `X_0 ⊆ X_0 ∪ (V - A') ⊆ V`. Sampling probability is `(d-1)/(4d^3)`.
pub fn biconnected_seed<R: Rng + ?Sized>(
    graph: &BipartiteGraph,
    d: usize,
    k: usize,
    config: &RankQueryConfig,
    rng: &mut R,
) -> Result<BiconnectedSeedReport, SeedError> {
    let base = graph.as_semisimple();
    let n = base.vertex_count();
    let cover: BTreeSet<usize> = min_vertex_cover(graph.into()).into_iter().collect();
    let sparse: BTreeSet<usize> = cover
        .iter()
        .copied()
        .filter(|&v| base.neighbors(v).intersection(&cover).count() + d <= k)
        .collect();
    let mut report = BiconnectedSeedReport {
        cover_size: cover.len(),
        sparse_cover: sparse.iter().copied().collect(),
        base_size: None,
        outcome: Err(BiconnectedSeedFailure::Verification(String::new())),
    };
    let dense: BTreeSet<usize> = (0..n).filter(|v| !sparse.contains(v)).collect();
    if let Some(&vertex) = dense.iter().find(|&&v| base.neighbors(v).intersection(&cover).count() < d) {
        report.outcome = Err(BiconnectedSeedFailure::CoverDegree {
            vertex,
            available: base.neighbors(vertex).intersection(&cover).count(),
        });
        return Ok(report);
    }
    let p = if d >= 2 { (d - 1) as f64 / (4 * d * d * d) as f64 } else { 0.0 };
    let sample = sample_cover_set_within(base, d, p, &cover, &dense, rng)?;
    report.base_size = Some(sample.set.len());
    let x0 = sample.set;
    let mut x1 = x0.clone();
    x1.extend(dense.iter().copied());
    for &v in sparse.difference(&x0) {
        let available = base.neighbors(v).intersection(&x1).count();
        if available < d {
            report.outcome = Err(BiconnectedSeedFailure::ChainDegree { vertex: v, available });
            return Ok(report);
        }
    }
    let chain = SeedChain::new(vec![x0, x1, (0..n).collect()]);
    let kind = MatroidKind::Birigidity(d);
    report.outcome = match find_seed(graph, kind, &chain, config) {
        Ok(found) => {
            let set: BTreeSet<usize> = found.certificate.seed_set.iter().copied().collect();
            match is_seed(graph, kind, &set, config)? {
                Some(_) => Ok(found),
                None => Err(BiconnectedSeedFailure::Verification("constructed set is not a seed".into())),
            }
        }
        Err(e) => Err(BiconnectedSeedFailure::Verification(e.to_string())),
    };
    Ok(report)
}
