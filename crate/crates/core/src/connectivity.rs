//! Vertex connectivity and the vertex-cover machinery for critically
//! connected graphs.
//!
//! Local connectivity `κ(u,v;G)` is computed by unit-capacity max flow on
//! the vertex-split digraph. For adjacent `u, v` the direct edge counts as
//! one of the paths, so `κ(u,v;G) = 1 + κ(u,v;G-uv)`. Loops never affect
//! connectivity and are ignored throughout.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{normalize, BipartiteGraph, Edge, GraphRef, SemisimpleGraph, Side};

/// Default limit on the number of candidate vertex sets an exhaustive
/// search may examine.
pub const DEFAULT_SEARCH_CAP: u128 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("search would examine {candidates} sets, above the cap of {cap}")]
    SearchTooLarge { candidates: u128, cap: u128 },
    #[error("a bipartite graph is required")]
    NotBipartite,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction anomaly: {0}")]
    Anomaly(String),
    #[error("property violation: {0}")]
    Violation(String),
}

// ---------------------------------------------------------------------------
// flows

struct Network {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Shortest augmenting paths, stopping once `limit` units flow.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut pred = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([s]);
            pred[s] = usize::MAX - 1;
            while let Some(a) = queue.pop_front() {
                if a == t {
                    break;
                }
                for &e in &self.out[a] {
                    let b = self.head[e];
                    if self.cap[e] > 0 && pred[b] == usize::MAX {
                        pred[b] = e;
                        queue.push_back(b);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut node = t;
            while node != s {
                let e = pred[node];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                node = self.head[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

fn node_in(v: usize) -> usize {
    2 * v
}

fn node_out(v: usize) -> usize {
    2 * v + 1
}

/// Vertex-split network of `graph` without the edge `skip`.
fn split_network(graph: &SemisimpleGraph, s: usize, t: usize, skip: Option<Edge>) -> Network {
    let n = graph.vertex_count();
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { n as u32 } else { 1 };
        net.arc(node_in(v), node_out(v), c);
    }
    for (a, b) in graph.edges() {
        if a == b || Some((a, b)) == skip {
            continue;
        }
        net.arc(node_out(a), node_in(b), 1);
        net.arc(node_out(b), node_in(a), 1);
    }
    net
}

/// `κ(u,v;G)` for `u != v`.
pub fn local_connectivity(graph: &SemisimpleGraph, u: usize, v: usize) -> usize {
    local_connectivity_capped(graph, u, v, usize::MAX)
}

/// `min(κ(u,v;G), limit)`, stopping the flow early.
pub fn local_connectivity_capped(graph: &SemisimpleGraph, u: usize, v: usize, limit: usize) -> usize {
    debug_assert_ne!(u, v);
    let direct = usize::from(graph.has_edge(u, v));
    if limit <= direct {
        return limit;
    }
    let mut net = split_network(graph, u, v, Some(normalize(u, v)));
    direct + net.max_flow(node_out(u), node_in(v), limit - direct)
}

/// A maximum family of internally disjoint `s`-`t` paths, each listed from
/// `s` to `t`. The direct edge, if present, is the path `[s, t]`. Paths are
/// traced by always following the smallest next vertex.
pub fn disjoint_paths(graph: &SemisimpleGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut net = split_network(graph, s, t, Some(normalize(s, t)));
    let original = net.cap.clone();
    let count = net.max_flow(node_out(s), node_in(t), usize::MAX);
    let mut used: Vec<u32> = original.iter().zip(&net.cap).map(|(o, c)| o.saturating_sub(*c)).collect();
    let mut paths = Vec::new();
    if graph.has_edge(s, t) {
        paths.push(vec![s, t]);
    }
    for _ in 0..count {
        let mut path = vec![s];
        let mut at = node_out(s);
        while at != node_in(t) {
            let next = net.out[at]
                .iter()
                .copied()
                .filter(|&e| e % 2 == 0 && used[e] > 0)
                .min_by_key(|&e| net.head[e])
                .expect("flow conservation");
            used[next] -= 1;
            let w = net.head[next];
            if w.is_multiple_of(2) {
                // entering vertex w/2; continue from its out-node
                let v = w / 2;
                path.push(v);
                if v == t {
                    break;
                }
                let inner = net.out[w]
                    .iter()
                    .copied()
                    .find(|&e| e % 2 == 0 && net.head[e] == node_out(v) && used[e] > 0)
                    .expect("vertex arc carries the flow");
                used[inner] -= 1;
                at = node_out(v);
            } else {
                at = w;
            }
        }
        paths.push(path);
    }
    debug_assert!(paths.iter().all(|p| p.last() == Some(&t)));
    paths
}

/// Whether the graph has an edge between every pair of distinct vertices.
fn is_complete(graph: &SemisimpleGraph) -> bool {
    let n = graph.vertex_count();
    (0..n).all(|v| graph.neighbors(v).iter().filter(|&&w| w != v).count() == n - 1)
}

/// `κ(G)`: `n - 1` for complete graphs, otherwise the minimum of
/// `κ(u,v;G)` over non-adjacent pairs.
pub fn vertex_connectivity(graph: &SemisimpleGraph) -> usize {
    let n = graph.vertex_count();
    if n <= 1 {
        return 0;
    }
    if is_complete(graph) {
        return n - 1;
    }
    let mut best = n - 1;
    let mut i = 0;
    // some vertex among the first best+1 lies outside a minimum separator
    while i <= best && i < n {
        for w in i + 1..n {
            if !graph.has_edge(i, w) {
                best = best.min(local_connectivity_capped(graph, i, w, best));
            }
        }
        i += 1;
    }
    best
}

/// `G` is k-connected: more than `k` vertices and no separator of size `< k`.
pub fn is_k_connected(graph: &SemisimpleGraph, k: usize) -> bool {
    graph.vertex_count() > k && vertex_connectivity(graph) >= k
}

pub fn is_critically_k_connected(graph: &SemisimpleGraph, k: usize) -> bool {
    is_k_connected(graph, k)
        && (0..graph.vertex_count()).all(|v| !is_k_connected(&graph.delete_vertex(v).expect("vertex exists"), k))
}

// ---------------------------------------------------------------------------
// subsets

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` on every `r`-subset of `items` in lexicographic order, until it
/// returns `false`. Returns whether every call returned `true`.
fn for_each_subset(items: &[usize], r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if r > items.len() {
        return true;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if !f(&buf) {
            return false;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + items.len() - r {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        if idx[i] == i + items.len() - r {
            return true;
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..r {
            buf[j] = items[idx[j]];
        }
    }
}

fn connected_without(graph: &SemisimpleGraph, removed: &BTreeSet<usize>) -> bool {
    graph.components_avoiding(removed).len() <= 1
}

// ---------------------------------------------------------------------------
// k-biconnectivity

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconnectivityResult {
    pub biconnected: bool,
    /// A set with fewer than `k` vertices in each class whose removal
    /// disconnects the graph, when one exists.
    pub witness: Option<Vec<usize>>,
    /// Whether the answer came from `κ(G) >= 2k - 1`.
    pub by_connectivity: bool,
}

/// Exact test of k-biconnectivity: both classes have at least `k` vertices
/// and removing at most `k - 1` vertices from each class leaves the graph
/// connected.
pub fn is_k_biconnected(graph: &BipartiteGraph, k: usize) -> Result<BiconnectivityResult, ConnectivityError> {
    is_k_biconnected_capped(graph, k, DEFAULT_SEARCH_CAP)
}

pub fn is_k_biconnected_capped(
    graph: &BipartiteGraph,
    k: usize,
    cap: u128,
) -> Result<BiconnectivityResult, ConnectivityError> {
    let no = |witness| BiconnectivityResult {
        biconnected: false,
        witness,
        by_connectivity: false,
    };
    if graph.size_a() < k || graph.size_b() < k {
        return Ok(no(None));
    }
    let base = graph.as_semisimple();
    if k == 0 {
        return Ok(BiconnectivityResult {
            biconnected: true,
            witness: None,
            by_connectivity: false,
        });
    }
    if vertex_connectivity(base) >= 2 * k - 1 && base.is_connected() {
        return Ok(BiconnectivityResult {
            biconnected: true,
            witness: None,
            by_connectivity: true,
        });
    }
    let a: Vec<usize> = graph.class(Side::A).collect();
    let b: Vec<usize> = graph.class(Side::B).collect();
    let count_a: u128 = (0..k).map(|i| binomial(a.len(), i)).sum();
    let count_b: u128 = (0..k).map(|j| binomial(b.len(), j)).sum();
    let candidates = count_a.saturating_mul(count_b);
    if candidates > cap {
        return Err(ConnectivityError::SearchTooLarge { candidates, cap });
    }
    let mut witness = None;
    'outer: for total in 0..=2 * (k - 1) {
        for i in total.saturating_sub(k - 1)..=total.min(k - 1) {
            let j = total - i;
            let done = for_each_subset(&a, i, |wa| {
                for_each_subset(&b, j, |wb| {
                    let w: BTreeSet<usize> = wa.iter().chain(wb).copied().collect();
                    if connected_without(base, &w) {
                        true
                    } else {
                        witness = Some(w.into_iter().collect());
                        false
                    }
                })
            });
            if !done {
                break 'outer;
            }
        }
    }
    Ok(match witness {
        Some(w) => no(Some(w)),
        None => BiconnectivityResult {
            biconnected: true,
            witness: None,
            by_connectivity: false,
        },
    })
}

/// k-biconnected, and no single-vertex deletion is.
pub fn is_critically_k_biconnected(graph: &BipartiteGraph, k: usize) -> Result<bool, ConnectivityError> {
    if !is_k_biconnected(graph, k)?.biconnected {
        return Ok(false);
    }
    for v in 0..graph.vertex_count() {
        if is_k_biconnected(&graph.delete_vertex(v).expect("vertex exists"), k)?.biconnected {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// vertex covers

/// Maximum matching by augmenting paths, scanning vertices in index order.
pub fn maximum_matching(graph: &BipartiteGraph) -> Vec<Edge> {
    let a = graph.size_a();
    let n = graph.vertex_count();
    let mut mate = vec![usize::MAX; n];
    fn augment(graph: &BipartiteGraph, x: usize, seen: &mut [bool], mate: &mut [usize]) -> bool {
        for &y in graph.neighbors(x) {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            if mate[y] == usize::MAX || augment(graph, mate[y], seen, mate) {
                mate[y] = x;
                mate[x] = y;
                return true;
            }
        }
        false
    }
    for x in 0..a {
        let mut seen = vec![false; n];
        augment(graph, x, &mut seen, &mut mate);
    }
    (0..a).filter(|&x| mate[x] != usize::MAX).map(|x| (x, mate[x])).collect()
}

/// Minimum vertex cover of a bipartite graph from a maximum matching:
/// with `Z` the vertices reachable from unmatched class-A vertices by
/// alternating paths, the cover is `(A - Z) ∪ (B ∩ Z)`.
pub fn konig_cover(graph: &BipartiteGraph) -> Vec<usize> {
    let matching = maximum_matching(graph);
    let n = graph.vertex_count();
    let mut mate = vec![usize::MAX; n];
    for &(x, y) in &matching {
        mate[x] = y;
        mate[y] = x;
    }
    let mut reached = vec![false; n];
    let mut queue: VecDeque<usize> = graph.class(Side::A).filter(|&x| mate[x] == usize::MAX).collect();
    for &x in &queue {
        reached[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if !reached[y] && mate[x] != y {
                reached[y] = true;
                let z = mate[y];
                if z != usize::MAX && !reached[z] {
                    reached[z] = true;
                    queue.push_back(z);
                }
            }
        }
    }
    (0..n)
        .filter(|&v| match graph.side(v) {
            Side::A => !reached[v],
            Side::B => reached[v],
        })
        .collect()
}

/// Exact minimum vertex cover by branch and bound; a looped vertex is
/// always in the cover. Supports up to 128 vertices.
pub fn branch_and_bound_cover(graph: &SemisimpleGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    assert!(n <= 128, "branch and bound supports at most 128 vertices");
    let adj: Vec<u128> = (0..n)
        .map(|v| graph.neighbors(v).iter().filter(|&&w| w != v).fold(0u128, |m, &w| m | 1 << w))
        .collect();
    let forced: u128 = (0..n).filter(|&v| graph.has_loop(v)).fold(0, |m, v| m | 1 << v);
    let all: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };

    struct Search<'a> {
        adj: &'a [u128],
        best: u128,
        best_size: u32,
    }

    fn degree(adj: &[u128], v: usize, alive: u128) -> u32 {
        (adj[v] & alive).count_ones()
    }

    fn matching_bound(adj: &[u128], alive: u128) -> u32 {
        let mut free = alive;
        let mut size = 0;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= !(1 << v);
            let partners = adj[v] & free;
            if partners != 0 {
                let w = partners.trailing_zeros() as usize;
                free &= !(1 << w);
                size += 1;
            }
        }
        size
    }

    impl Search<'_> {
        fn run(&mut self, alive: u128, chosen: u128) {
            let size = chosen.count_ones();
            if size + matching_bound(self.adj, alive) >= self.best_size {
                return;
            }
            let mut pick = None;
            let mut max_deg = 0;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= !(1 << v);
                let d = degree(self.adj, v, alive);
                if d == 1 {
                    // take the neighbour of a degree-one vertex
                    let w = (self.adj[v] & alive).trailing_zeros() as usize;
                    return self.run(alive & !(1 << w) & !(1 << v), chosen | 1 << w);
                }
                if d > max_deg {
                    max_deg = d;
                    pick = Some(v);
                }
            }
            let Some(v) = pick else {
                self.best = chosen;
                self.best_size = size;
                return;
            };
            let nbrs = self.adj[v] & alive;
            self.run(alive & !(1 << v), chosen | 1 << v);
            self.run(alive & !nbrs & !(1 << v), chosen | nbrs);
        }
    }

    let start_alive = all & !forced;
    let mut search = Search {
        adj: &adj,
        best: all,
        best_size: n as u32 + 1,
    };
    search.run(start_alive, forced);
    (0..n).filter(|&v| search.best >> v & 1 == 1).collect()
}

/// Exact minimum vertex cover: König for bipartite graphs, branch and bound
/// otherwise.
pub fn min_vertex_cover(graph: GraphRef<'_>) -> Vec<usize> {
    match graph {
        GraphRef::Bipartite(g) => konig_cover(g),
        GraphRef::Semisimple(g) => branch_and_bound_cover(g),
    }
}

pub fn is_vertex_cover(graph: &SemisimpleGraph, cover: &BTreeSet<usize>) -> bool {
    graph.edges().iter().all(|(a, b)| cover.contains(a) || cover.contains(b))
}

// ---------------------------------------------------------------------------
// essential separators

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparatorMode {
    /// `k` vertices in one class and at most `k - 1` in the other.
    Bipartite,
    /// Exactly `k` vertices.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorReport {
    pub separator: Vec<usize>,
    /// `(|S ∩ A|, |S ∩ B|)` in bipartite mode.
    pub side_counts: Option<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    /// Per separator vertex: whether it has a neighbour in every component.
    pub reaches_every_component: Vec<bool>,
    pub essential: bool,
}

fn separator_report(graph: &SemisimpleGraph, set: &BTreeSet<usize>, side_counts: Option<(usize, usize)>) -> SeparatorReport {
    let components = graph.components_avoiding(set);
    let reaches: Vec<bool> = set
        .iter()
        .map(|&s| {
            components
                .iter()
                .all(|c| c.iter().any(|w| graph.neighbors(s).contains(w)))
        })
        .collect();
    let essential = components.len() >= 2 && reaches.iter().all(|&r| r);
    SeparatorReport {
        separator: set.iter().copied().collect(),
        side_counts,
        components,
        reaches_every_component: reaches,
        essential,
    }
}

/// Every essential separator, in lexicographic order of the sorted vertex
/// list, found by enumerating all candidate sets of the right shape.
pub fn essential_separators(
    graph: GraphRef<'_>,
    k: usize,
    mode: SeparatorMode,
    cap: u128,
) -> Result<Vec<SeparatorReport>, ConnectivityError> {
    let base = graph.base();
    let mut found = Vec::new();
    match mode {
        SeparatorMode::General => {
            let n = base.vertex_count();
            let candidates = binomial(n, k);
            if candidates > cap {
                return Err(ConnectivityError::SearchTooLarge { candidates, cap });
            }
            let all: Vec<usize> = (0..n).collect();
            for_each_subset(&all, k, |s| {
                let set: BTreeSet<usize> = s.iter().copied().collect();
                let report = separator_report(base, &set, None);
                if report.essential {
                    found.push(report);
                }
                true
            });
        }
        SeparatorMode::Bipartite => {
            let g = graph.bipartite().ok_or(ConnectivityError::NotBipartite)?;
            if k == 0 {
                return Ok(found);
            }
            let a: Vec<usize> = g.class(Side::A).collect();
            let b: Vec<usize> = g.class(Side::B).collect();
            let shapes: Vec<(usize, usize)> = (0..k).map(|j| (k, j)).chain((0..k).map(|i| (i, k))).collect();
            let candidates: u128 = shapes.iter().map(|&(i, j)| binomial(a.len(), i) * binomial(b.len(), j)).sum();
            if candidates > cap {
                return Err(ConnectivityError::SearchTooLarge { candidates, cap });
            }
            for (i, j) in shapes {
                for_each_subset(&a, i, |sa| {
                    for_each_subset(&b, j, |sb| {
                        let set: BTreeSet<usize> = sa.iter().chain(sb).copied().collect();
                        let report = separator_report(base, &set, Some((i, j)));
                        if report.essential {
                            found.push(report);
                        }
                        true
                    })
                });
            }
            found.sort_by(|x, y| x.separator.cmp(&y.separator));
        }
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// pairings

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingEntry {
    pub x: usize,
    pub separator: Vec<usize>,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub mode: SeparatorMode,
    pub k: usize,
    /// Vertices of `X` lying in some essential separator.
    pub domain: Vec<usize>,
    pub entries: Vec<PairingEntry>,
    /// The multigraph `G^f_X` as `(edge, multiplicity)`.
    pub multigraph: Vec<(Edge, usize)>,
    /// `F`: one copy of each edge of `G^f_X`.
    pub support: Vec<Edge>,
}

impl Pairing {
    fn assemble(mode: SeparatorMode, k: usize, domain: Vec<usize>, entries: Vec<PairingEntry>) -> Self {
        let mut counts: BTreeMap<Edge, usize> = BTreeMap::new();
        for e in &entries {
            *counts.entry(normalize(e.u, e.v)).or_default() += 1;
        }
        Pairing {
            mode,
            k,
            domain,
            entries,
            support: counts.keys().copied().collect(),
            multigraph: counts.into_iter().collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.multigraph.iter().map(|(_, m)| m).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multigraph.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    pub fn disjoint_from(&self, graph: &SemisimpleGraph) -> bool {
        self.support.iter().all(|&(a, b)| !graph.has_edge(a, b))
    }

    pub fn pairs_are_neighbours(&self, graph: &SemisimpleGraph) -> bool {
        self.entries
            .iter()
            .all(|e| graph.has_edge(e.x, e.u) && graph.has_edge(e.x, e.v))
    }
}

/// Pairing for a k-biconnected bipartite graph. For each `x` the first
/// essential separator containing it is used, and `u, v` are the smallest
/// neighbours of `x` in the first two components. Checks that `G^f_X` has
/// `|X̂|` edges, none of them in `G`, each of multiplicity at most `k`.
pub fn build_pairing_bipartite(
    graph: &BipartiteGraph,
    k: usize,
    x: &BTreeSet<usize>,
    cap: u128,
) -> Result<Pairing, ConnectivityError> {
    let base = graph.as_semisimple();
    let separators = essential_separators(graph.into(), k, SeparatorMode::Bipartite, cap)?;
    let mut entries = Vec::new();
    let mut domain = Vec::new();
    for &xv in x {
        let Some(sep) = separators.iter().find(|s| s.separator.contains(&xv)) else {
            return Err(ConnectivityError::Precondition(format!(
                "vertex {xv} lies in no essential separator"
            )));
        };
        let pick = |c: &Vec<usize>| {
            c.iter()
                .copied()
                .find(|w| base.neighbors(xv).contains(w))
                .expect("essential separators reach every component")
        };
        domain.push(xv);
        entries.push(PairingEntry {
            x: xv,
            separator: sep.separator.clone(),
            u: pick(&sep.components[0]),
            v: pick(&sep.components[1]),
        });
    }
    let pairing = Pairing::assemble(SeparatorMode::Bipartite, k, domain, entries);
    if pairing.edge_count() != pairing.domain.len() {
        return Err(ConnectivityError::Violation("G^f_X does not have |X̂| edges".into()));
    }
    if !pairing.disjoint_from(base) {
        return Err(ConnectivityError::Violation("G^f_X shares an edge with G".into()));
    }
    if pairing.max_multiplicity() > k {
        return Err(ConnectivityError::Violation(format!(
            "multiplicity {} exceeds k = {k}",
            pairing.max_multiplicity()
        )));
    }
    Ok(pairing)
}

/// Pairing for a critically k-connected graph on at least `3k - 1`
/// vertices. Essential separators are the `k`-separators. A covering
/// sequence `S_1, ..., S_r` is chosen greedily and pruned to be minimal;
/// for each `S_j`, `C` is the smallest component leaving at least `k`
/// vertices in `D = V - S_j - C`, an auxiliary vertex is joined to the `k`
/// smallest vertices of `D`, and `k` disjoint paths from it to the smallest
/// vertex of `C` are traced. Each new `x ∈ S_j` gets `(successor in C,
/// predecessor in D)` on its path.
pub fn build_pairing_general(
    graph: &SemisimpleGraph,
    k: usize,
    x: &BTreeSet<usize>,
    cap: u128,
) -> Result<Pairing, ConnectivityError> {
    let n = graph.vertex_count();
    if n + 1 < 3 * k {
        return Err(ConnectivityError::Precondition(format!("need at least 3k-1 = {} vertices", 3 * k - 1)));
    }
    let separators = essential_separators(graph.into(), k, SeparatorMode::General, cap)?;
    let sets: Vec<BTreeSet<usize>> = separators.iter().map(|s| s.separator.iter().copied().collect()).collect();
    if let Some(&v) = x.iter().find(|v| !sets.iter().any(|s| s.contains(v))) {
        return Err(ConnectivityError::Precondition(format!("vertex {v} lies in no essential separator")));
    }

    // greedy cover of X, then drop separators that are not needed
    let mut chosen: Vec<usize> = Vec::new();
    let mut uncovered = x.clone();
    while !uncovered.is_empty() {
        let best = (0..sets.len())
            .max_by_key(|&i| (sets[i].intersection(&uncovered).count(), std::cmp::Reverse(i)))
            .expect("separators exist");
        uncovered.retain(|v| !sets[best].contains(v));
        chosen.push(best);
    }
    let mut j = 0;
    while j < chosen.len() {
        let others: BTreeSet<usize> = chosen
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .flat_map(|(_, &s)| sets[s].iter().copied())
            .collect();
        if x.iter().filter(|v| sets[chosen[j]].contains(v)).all(|v| others.contains(v)) {
            chosen.remove(j);
        } else {
            j += 1;
        }
    }

    let mut entries = Vec::new();
    let mut done: BTreeSet<usize> = BTreeSet::new();
    for &si in &chosen {
        let sep = &separators[si];
        let s_set = &sets[si];
        let fresh: Vec<usize> = s_set.iter().copied().filter(|v| x.contains(v) && !done.contains(v)).collect();
        let c = sep
            .components
            .iter()
            .filter(|c| n - k - c.len() >= k)
            .min_by_key(|c| (c.len(), c[0]))
            .ok_or_else(|| ConnectivityError::Anomaly(format!("no component of G - {:?} leaves k vertices", sep.separator)))?;
        let c_set: BTreeSet<usize> = c.iter().copied().collect();
        let d: Vec<usize> = (0..n).filter(|v| !s_set.contains(v) && !c_set.contains(v)).collect();
        let mut aux = graph.with_new_vertices(1);
        let p = n;
        for &w in d.iter().take(k) {
            aux.insert(p, w).expect("fresh auxiliary edge");
        }
        let q = c[0];
        let paths = disjoint_paths(&aux, p, q);
        if paths.len() < k {
            return Err(ConnectivityError::Anomaly(format!("only {} disjoint paths to {q}", paths.len())));
        }
        for &xv in &fresh {
            let path = paths
                .iter()
                .find(|path| path.contains(&xv))
                .ok_or_else(|| ConnectivityError::Anomaly(format!("vertex {xv} is on no path")))?;
            let pos = path.iter().position(|&w| w == xv).expect("present");
            let (pred, succ) = (path[pos - 1], path[pos + 1]);
            if !c_set.contains(&succ) || !d.contains(&pred) {
                return Err(ConnectivityError::Anomaly(format!(
                    "vertex {xv} does not lie on a length-two subpath from D to C"
                )));
            }
            entries.push(PairingEntry {
                x: xv,
                separator: sep.separator.clone(),
                u: succ,
                v: pred,
            });
            done.insert(xv);
        }
    }
    entries.sort_by_key(|e| e.x);
    let pairing = Pairing::assemble(SeparatorMode::General, k, x.iter().copied().collect(), entries);
    if !pairing.is_simple() {
        return Err(ConnectivityError::Violation("G^f_X is not simple".into()));
    }
    if !pairing.pairs_are_neighbours(graph) {
        return Err(ConnectivityError::Violation("a pair is not in N(x)".into()));
    }
    Ok(pairing)
}

// ---------------------------------------------------------------------------
// sparse certificates

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseCertificate {
    pub k: usize,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub edge_count: usize,
    /// `kn - C(k+1, 2)`, stated when `n > k`.
    pub edge_bound: Option<usize>,
    pub within_bound: bool,
    /// Whether `κ(u,v;H) >= min(k, κ(u,v;G))` for all pairs.
    pub preserves_connectivity: bool,
}

/// Forest decomposition by maximum-adjacency scanning: the scanned vertex
/// `v` sends each edge to an unscanned `w` into forest `r(w) + 1`, where
/// `r(w)` counts edges from `w` to already scanned vertices. `H` is the
/// union of the first `k` forests. Ties go to the smallest vertex.
pub fn sparse_local_certificate(graph: &SemisimpleGraph, k: usize) -> SparseCertificate {
    let n = graph.vertex_count();
    let mut r = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut edges = Vec::new();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !scanned[v])
            .max_by_key(|&v| (r[v], std::cmp::Reverse(v)))
            .expect("unscanned vertex");
        scanned[v] = true;
        for &w in graph.neighbors(v) {
            if w != v && !scanned[w] {
                r[w] += 1;
                if r[w] <= k {
                    edges.push(normalize(v, w));
                }
            }
        }
    }
    edges.sort();
    let h = SemisimpleGraph::from_edges(n, edges.iter().copied()).expect("subgraph edges are distinct");
    let edge_bound = (n > k).then(|| k * n - k * (k + 1) / 2);
    let preserves = (0..n).all(|u| {
        (u + 1..n).all(|v| local_connectivity_capped(&h, u, v, k) >= local_connectivity_capped(graph, u, v, k))
    });
    SparseCertificate {
        k,
        vertex_count: n,
        edge_count: edges.len(),
        within_bound: edge_bound.is_none_or(|b| edges.len() <= b),
        edges,
        edge_bound,
        preserves_connectivity: preserves,
    }
}

// ---------------------------------------------------------------------------
// vertex cover bound

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub statement: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Inequality {
    fn le(statement: &str, lhs: f64, rhs: f64) -> Self {
        Inequality {
            statement: statement.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs + 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauBranch {
    /// A class has exactly `k` vertices, so the graph is `K_{k,k}`.
    CompleteBipartite,
    /// At most `3k - 2` vertices; the bound is checked directly.
    SmallGraph,
    /// Pairing, auxiliary graph `G+` and sparse certificate.
    Pipeline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauBoundReport {
    pub mode: SeparatorMode,
    pub k: usize,
    pub vertex_count: usize,
    pub tau: usize,
    pub cover: Vec<usize>,
    pub branch: TauBranch,
    /// `|V| / (2k^2)` in bipartite mode, `|V| / (k+1)` in general mode.
    pub lower_bound: f64,
    pub pairing: Option<Pairing>,
    /// `κ(u,v;G+)` for each `uv ∈ F`.
    pub support_connectivity: Vec<(Edge, usize)>,
    pub certificate: Option<SparseCertificate>,
    pub support_in_certificate: Option<bool>,
    pub inequalities: Vec<Inequality>,
    pub all_hold: bool,
}

/// `G+ = G[T] ∪ F` relabelled onto `0..|T|`; returns it with the map
/// from old to new indices.
fn augmented_graph(graph: &SemisimpleGraph, cover: &[usize], support: &[Edge]) -> Result<(SemisimpleGraph, BTreeMap<usize, usize>), ConnectivityError> {
    let index: BTreeMap<usize, usize> = cover.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for (a, b) in graph.edges() {
        if a != b {
            if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
                edges.insert(normalize(i, j));
            }
        }
    }
    for &(a, b) in support {
        match (index.get(&a), index.get(&b)) {
            (Some(&i), Some(&j)) => {
                edges.insert(normalize(i, j));
            }
            _ => return Err(ConnectivityError::Violation(format!("pair {{{a}, {b}}} is not inside the cover"))),
        }
    }
    let g = SemisimpleGraph::from_edges(cover.len(), edges).expect("deduplicated edges");
    Ok((g, index))
}

/// Runs the vertex-cover lower-bound argument on a critically
/// k-biconnected bipartite graph (`|V| <= 2k^2 τ`) or a critically
/// k-connected graph (`|V| <= (k+1) τ`) and records every inequality of it.
pub fn tau_bound_report(graph: GraphRef<'_>, k: usize, mode: SeparatorMode, cap: u128) -> Result<TauBoundReport, ConnectivityError> {
    let base = graph.base();
    if k == 0 {
        return Err(ConnectivityError::Precondition("k must be positive".into()));
    }
    match mode {
        SeparatorMode::Bipartite => {
            let g = graph.bipartite().ok_or(ConnectivityError::NotBipartite)?;
            if !is_critically_k_biconnected(g, k)? {
                return Err(ConnectivityError::Precondition(format!("not critically {k}-biconnected")));
            }
        }
        SeparatorMode::General => {
            if !is_critically_k_connected(base, k) {
                return Err(ConnectivityError::Precondition(format!("not critically {k}-connected")));
            }
        }
    }
    tau_bound_chain(graph, k, mode, cap)
}

/// The inequality chain of [`tau_bound_report`] without the criticality
/// check. Every vertex outside the minimum cover must still lie in an
/// essential separator.
pub fn tau_bound_chain(graph: GraphRef<'_>, k: usize, mode: SeparatorMode, cap: u128) -> Result<TauBoundReport, ConnectivityError> {
    let base = graph.base();
    let n = base.vertex_count();
    if k == 0 {
        return Err(ConnectivityError::Precondition("k must be positive".into()));
    }
    if mode == SeparatorMode::Bipartite && graph.bipartite().is_none() {
        return Err(ConnectivityError::NotBipartite);
    }
    let cover = min_vertex_cover(graph);
    let tau = cover.len();
    let lower_bound = match mode {
        SeparatorMode::Bipartite => n as f64 / (2 * k * k) as f64,
        SeparatorMode::General => n as f64 / (k + 1) as f64,
    };
    let mut report = TauBoundReport {
        mode,
        k,
        vertex_count: n,
        tau,
        cover: cover.clone(),
        branch: TauBranch::Pipeline,
        lower_bound,
        pairing: None,
        support_connectivity: Vec::new(),
        certificate: None,
        support_in_certificate: None,
        inequalities: Vec::new(),
        all_hold: false,
    };
    let mut ineq = Vec::new();

    let small_branch = match mode {
        SeparatorMode::Bipartite => {
            let g = graph.bipartite().expect("checked");
            (g.size_a().min(g.size_b()) == k).then(|| {
                report.branch = TauBranch::CompleteBipartite;
                ineq.push(Inequality::le("|E| <= k^2 (graph is K_{k,k})", g.edge_count() as f64, (k * k) as f64));
                ineq.push(Inequality::le("|V| <= 2k", n as f64, (2 * k) as f64));
            })
        }
        SeparatorMode::General => (n + 2 <= 3 * k).then(|| report.branch = TauBranch::SmallGraph),
    };

    if small_branch.is_none() {
        let x: BTreeSet<usize> = (0..n).filter(|v| !cover.contains(v)).collect();
        let (pairing, cert_k, claim_bound) = match mode {
            SeparatorMode::Bipartite => (
                build_pairing_bipartite(graph.bipartite().expect("checked"), k, &x, cap)?,
                2 * k - 1,
                2 * k - 1,
            ),
            SeparatorMode::General => (build_pairing_general(base, k, &x, cap)?, k, k),
        };
        let (g_plus, index) = augmented_graph(base, &cover, &pairing.support)?;
        for &(a, b) in &pairing.support {
            let kappa = local_connectivity(&g_plus, index[&a], index[&b]);
            report.support_connectivity.push(((a, b), kappa));
            ineq.push(Inequality::le(&format!("κ({a},{b};G+) <= {claim_bound}"), kappa as f64, claim_bound as f64));
        }
        let cert = sparse_local_certificate(&g_plus, cert_k);
        let e_plus: BTreeSet<Edge> = cert.edges.iter().copied().collect();
        let inside = pairing.support.iter().all(|&(a, b)| e_plus.contains(&normalize(index[&a], index[&b])));
        let (xs, fs, es, ts) = (x.len() as f64, pairing.support.len() as f64, cert.edge_count as f64, tau as f64);
        let kf = k as f64;
        match mode {
            SeparatorMode::Bipartite => {
                ineq.push(Inequality::le("|X| <= k|F|", xs, kf * fs));
                ineq.push(Inequality::le("k|F| <= k|E+|", kf * fs, kf * es));
                ineq.push(Inequality::le("k|E+| <= k(2k-1)|T|", kf * es, kf * (2.0 * kf - 1.0) * ts));
            }
            SeparatorMode::General => {
                ineq.push(Inequality::le("|X| <= |F|", xs, fs));
                ineq.push(Inequality::le("|F| <= |E+|", fs, es));
                ineq.push(Inequality::le("|E+| <= k|T|", es, kf * ts));
            }
        }
        ineq.push(Inequality::le("F ⊆ E+ (0 = holds)", if inside { 0.0 } else { 1.0 }, 0.0));
        if let Some(bound) = cert.edge_bound {
            ineq.push(Inequality::le("|E(H+)| <= k'|T| - C(k'+1, 2)", es, bound as f64));
        }
        ineq.push(Inequality::le(
            "certificate preserves local connectivity (0 = holds)",
            if cert.preserves_connectivity { 0.0 } else { 1.0 },
            0.0,
        ));
        report.support_in_certificate = Some(inside);
        report.certificate = Some(cert);
        report.pairing = Some(pairing);
    }
    ineq.push(Inequality::le("lower bound <= τ", lower_bound, tau as f64));
    report.all_hold = ineq.iter().all(|i| i.holds);
    report.inequalities = ineq;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{circulant_bipartite, complete_bipartite, complete_graph, critical_family, cycle_graph, path_graph};

    #[test]
    fn local_connectivity_examples() {
        let k5 = complete_graph(5);
        assert_eq!(local_connectivity(&k5, 0, 3), 4);
        let bowtie = SemisimpleGraph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(local_connectivity(&bowtie, 0, 4), 1);
        let c = circulant_bipartite(6, 3).unwrap();
        for y in 6..12 {
            assert_eq!(local_connectivity(c.as_semisimple(), 0, y), 3);
        }
    }

    #[test]
    fn vertex_connectivity_examples() {
        assert_eq!(vertex_connectivity(&complete_graph(5)), 4);
        assert_eq!(vertex_connectivity(&cycle_graph(6)), 2);
        assert_eq!(vertex_connectivity(&path_graph(4)), 1);
        assert_eq!(vertex_connectivity(&SemisimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap()), 0);
        assert_eq!(vertex_connectivity(complete_bipartite(3, 5).as_semisimple()), 3);
        assert_eq!(vertex_connectivity(circulant_bipartite(4, 3).unwrap().as_semisimple()), 3);
    }

    #[test]
    fn disjoint_paths_are_disjoint() {
        let g = complete_bipartite(3, 3).to_semisimple();
        let paths = disjoint_paths(&g, 0, 1);
        assert_eq!(paths.len(), 3);
        let mut inner = BTreeSet::new();
        for p in &paths {
            assert_eq!((p[0], *p.last().unwrap()), (0, 1));
            for w in &p[1..p.len() - 1] {
                assert!(inner.insert(*w));
            }
            for pair in p.windows(2) {
                assert!(g.has_edge(pair[0], pair[1]));
            }
        }
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let mut empty = 0;
        for_each_subset(&[1, 2], 0, |_| {
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
        let mut none = 0;
        for_each_subset(&[1, 2], 3, |_| {
            none += 1;
            true
        });
        assert_eq!(none, 0);
    }

    #[test]
    fn biconnectivity_examples() {
        for k in 1..5 {
            assert!(is_k_biconnected(&complete_bipartite(k, k), k).unwrap().biconnected);
        }
        let g = complete_bipartite(2, 2).without_edge(0, 2).unwrap();
        assert!(is_k_biconnected(&g, 1).unwrap().biconnected);
        let split = BipartiteGraph::from_class_edges(2, 2, [(0, 0), (1, 1)]).unwrap();
        let r = is_k_biconnected(&split, 1).unwrap();
        assert!(!r.biconnected);
        assert_eq!(r.witness, Some(vec![]));
        // the merged vertex and the shared class-B block cut every copy apart
        let r = is_k_biconnected(&critical_family(3, 4).unwrap(), 3).unwrap();
        assert_eq!(r.witness, Some(vec![0, 9, 10]));
        assert!(is_critically_k_biconnected(&complete_bipartite(3, 3), 3).unwrap());
    }

    #[test]
    fn cover_examples() {
        assert_eq!(konig_cover(&complete_bipartite(3, 5)).len(), 3);
        assert_eq!(branch_and_bound_cover(&cycle_graph(5)).len(), 3);
        let looped = SemisimpleGraph::from_edges(3, [(0, 0), (1, 2)]).unwrap();
        let c = branch_and_bound_cover(&looped);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&0));
        let t = konig_cover(&critical_family(3, 4).unwrap()).len();
        assert!(t <= 7 && (t as f64) >= 15.0 / 4.0);
    }

    #[test]
    fn separators_examples() {
        // a full class; adding any vertex of the other class breaks essentiality
        let kb = complete_bipartite(3, 3);
        assert_eq!(essential_separators((&kb).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).unwrap().len(), 2);
        let p4 = path_graph(4);
        let seps = essential_separators((&p4).into(), 1, SeparatorMode::General, DEFAULT_SEARCH_CAP).unwrap();
        let found: Vec<Vec<usize>> = seps.into_iter().map(|s| s.separator).collect();
        assert_eq!(found, vec![vec![1], vec![2]]);
        let cf = critical_family(3, 4).unwrap();
        let seps = essential_separators((&cf).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).unwrap();
        assert!(!seps.is_empty());
    }

    #[test]
    fn sparse_certificate_examples() {
        let c = sparse_local_certificate(&path_graph(5), 1);
        assert_eq!(c.edge_count, 4);
        let c = sparse_local_certificate(&complete_graph(6), 2);
        assert!(c.edge_count <= 9);
        assert!(c.within_bound && c.preserves_connectivity);
    }

    #[test]
    fn general_pairing_on_cycle() {
        let c6 = cycle_graph(6);
        let x: BTreeSet<usize> = [0, 2, 4].into_iter().collect();
        let p = build_pairing_general(&c6, 2, &x, DEFAULT_SEARCH_CAP).unwrap();
        assert!(p.is_simple());
        assert!(p.pairs_are_neighbours(&c6));
        assert_eq!(p.entries.len(), 3);
    }

    #[test]
    fn tau_report_on_complete_bipartite() {
        let kb = complete_bipartite(3, 3);
        let r = tau_bound_report((&kb).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(r.branch, TauBranch::CompleteBipartite);
        assert!(r.all_hold);
        assert_eq!(r.tau, 3);
    }

    #[test]
    fn tau_report_rejects_non_critical() {
        let kb = complete_bipartite(4, 4);
        assert!(matches!(
            tau_bound_report((&kb).into(), 3, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP),
            Err(ConnectivityError::Precondition(_))
        ));
    }
}
