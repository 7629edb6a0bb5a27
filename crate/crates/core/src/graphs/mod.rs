//! Graph model: semisimple graphs (at most one loop per vertex, no parallel
//! edges) and bipartite graphs stored as a flat semisimple graph whose
//! first class occupies indices `0..a` and second class `a..a+b`.

mod families;
mod io;

pub use families::*;
pub use io::{GraphDocument, GraphJson};

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An unordered vertex pair stored as `(min, max)`; `u == v` is a loop.
pub type Edge = (usize, usize);

pub fn normalize(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed header `{text}` (expected `semisimple <n>` or `bipartite <a> <b>`)")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed edge line `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0} in a bipartite graph")]
    LoopInBipartite(usize),
    #[error("edge {{{0}, {1}}} does not cross the bipartition")]
    SameSide(usize, usize),
    #[error("vertex {0} already carries a loop")]
    AlreadyLooped(usize),
    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed JSON graph: {0}")]
    Json(String),
}

/// A graph on vertices `0..n` with at most one loop per vertex and no
/// parallel edges. A loop at `v` is stored as `v ∈ adj[v]`, so
/// `neighbors(v)` contains `v` exactly when `v` is looped and the degree
/// counts a loop once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SemisimpleGraph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl SemisimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        SemisimpleGraph {
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.insert(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        let (u, v) = normalize(u, v);
        if !self.adj[u].insert(v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    fn remove(&mut self, u: usize, v: usize) -> bool {
        if u >= self.adj.len() || v >= self.adj.len() || !self.adj[u].remove(&v) {
            return false;
        }
        self.adj[v].remove(&u);
        self.edge_count -= 1;
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges in lexicographic order of `(min, max)`.
    pub fn edges(&self) -> Vec<Edge> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.adj.len()).all(|v| !self.has_loop(v))
    }

    pub fn loop_count(&self) -> usize {
        (0..self.adj.len()).filter(|&v| self.has_loop(v)).count()
    }

    /// `N_G(v)`; contains `v` iff `v` carries a loop.
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn checked_neighbors(&self, v: usize) -> Result<&BTreeSet<usize>, GraphError> {
        self.adj.get(v).ok_or(GraphError::VertexOutOfRange {
            vertex: v,
            n: self.adj.len(),
        })
    }

    /// Number of incident edges, a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `δ(G)`; zero for the graph without vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        if g.remove(u, v) {
            Ok(g)
        } else {
            let (u, v) = normalize(u, v);
            Err(GraphError::MissingEdge(u, v))
        }
    }

    /// Removes every edge at `v` but keeps the vertex (and all indices).
    pub fn isolate_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.checked_neighbors(v)?;
        let mut g = self.clone();
        let nb: Vec<usize> = g.adj[v].iter().copied().collect();
        for w in nb {
            g.remove(v, w);
        }
        Ok(g)
    }

    /// `G - v` with vertices above `v` shifted down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.checked_neighbors(v)?;
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&x| x != v).collect();
        Ok(self.induced_subgraph(&keep)?.0)
    }

    /// `G[K]` relabelled to `0..|K|` in the order given (duplicates are
    /// dropped). Returns the subgraph and the map new index -> old index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>), GraphError> {
        let mut order = Vec::with_capacity(vertices.len());
        let mut index = vec![usize::MAX; self.vertex_count()];
        for &v in vertices {
            self.checked_neighbors(v)?;
            if index[v] == usize::MAX {
                index[v] = order.len();
                order.push(v);
            }
        }
        let mut g = Self::empty(order.len());
        for (u, v) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.insert(index[u], index[v])?;
            }
        }
        Ok((g, order))
    }

    /// Edges with both ends inside `vertices` (indices unchanged).
    pub fn edges_within(&self, vertices: &BTreeSet<usize>) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .collect()
    }

    /// `G°`: one loop added at every vertex. Fails if a loop already exists.
    pub fn add_loops(&self) -> Result<Self, GraphError> {
        let mut g = self.clone();
        for v in 0..g.vertex_count() {
            if g.has_loop(v) {
                return Err(GraphError::AlreadyLooped(v));
            }
            g.insert(v, v)?;
        }
        Ok(g)
    }

    /// Appends `extra` isolated vertices.
    pub fn with_new_vertices(&self, extra: usize) -> Self {
        let mut g = self.clone();
        g.adj.extend(std::iter::repeat_with(BTreeSet::new).take(extra));
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            if r < n {
                seen[r] = true;
            }
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-colouring of a loopless graph, or `None` if it has an odd cycle
    /// or a loop.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for &y in &self.adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }
}

/// Which class of a bipartite graph a vertex lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A bipartite graph with classes `A = 0..a` and `B = a..a+b` in flat
/// indexing. Every edge crosses the bipartition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BipartiteGraph {
    size_a: usize,
    size_b: usize,
    graph: SemisimpleGraph,
}

impl BipartiteGraph {
    pub fn empty(size_a: usize, size_b: usize) -> Self {
        BipartiteGraph {
            size_a,
            size_b,
            graph: SemisimpleGraph::empty(size_a + size_b),
        }
    }

    /// From pairs `(i, j)` with `i` indexing class A and `j` indexing class B.
    pub fn from_class_edges<I>(size_a: usize, size_b: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(size_a, size_b);
        for (i, j) in edges {
            if i >= size_a {
                return Err(GraphError::VertexOutOfRange { vertex: i, n: size_a });
            }
            if j >= size_b {
                return Err(GraphError::VertexOutOfRange { vertex: j, n: size_b });
            }
            g.graph.insert(i, size_a + j)?;
        }
        Ok(g)
    }

    /// From flat-indexed pairs; each must cross the bipartition.
    pub fn from_flat_edges<I>(size_a: usize, size_b: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::empty(size_a, size_b);
        for (u, v) in edges {
            g.insert_flat(u, v)?;
        }
        Ok(g)
    }

    fn insert_flat(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::LoopInBipartite(u));
        }
        if self.side(u) == self.side(v) {
            let (u, v) = normalize(u, v);
            return Err(GraphError::SameSide(u, v));
        }
        self.graph.insert(u, v)
    }

    pub fn size_a(&self) -> usize {
        self.size_a
    }

    pub fn size_b(&self) -> usize {
        self.size_b
    }

    pub fn vertex_count(&self) -> usize {
        self.size_a + self.size_b
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Flat edges `(x, y)` with `x` in A and `y` in B, lexicographic.
    pub fn edges(&self) -> Vec<Edge> {
        self.graph.edges()
    }

    pub fn side(&self, v: usize) -> Side {
        if v < self.size_a {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn class(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::A => 0..self.size_a,
            Side::B => self.size_a..self.size_a + self.size_b,
        }
    }

    pub fn flat_index(&self, side: Side, index: usize) -> usize {
        match side {
            Side::A => index,
            Side::B => self.size_a + index,
        }
    }

    pub fn as_semisimple(&self) -> &SemisimpleGraph {
        &self.graph
    }

    pub fn to_semisimple(&self) -> SemisimpleGraph {
        self.graph.clone()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        self.graph.neighbors(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn min_degree(&self) -> usize {
        self.graph.min_degree()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_flat(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        Ok(BipartiteGraph {
            graph: self.graph.without_edge(u, v)?,
            ..*self
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.size_a * self.size_b
    }

    /// `G - v`, relabelled so the flat layout stays A-then-B.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.graph.checked_neighbors(v)?;
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&x| x != v).collect();
        Ok(self.induced_subgraph(&keep)?.0)
    }

    /// `G[K]` with the class layout preserved. Returns the map new -> old.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>), GraphError> {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        for &v in &set {
            self.graph.checked_neighbors(v)?;
        }
        let order: Vec<usize> = set.iter().copied().collect();
        let size_a = order.iter().filter(|&&v| v < self.size_a).count();
        let (graph, order) = self.graph.induced_subgraph(&order)?;
        Ok((
            BipartiteGraph {
                size_a,
                size_b: order.len() - size_a,
                graph,
            },
            order,
        ))
    }

    /// Adds a vertex to `side`. The new graph's flat indices shift B up by
    /// one when the vertex joins A. Returns the graph, the new vertex's
    /// index and the map old index -> new index.
    pub fn with_new_vertex(&self, side: Side) -> (Self, usize, Vec<usize>) {
        let (size_a, size_b) = match side {
            Side::A => (self.size_a + 1, self.size_b),
            Side::B => (self.size_a, self.size_b + 1),
        };
        let remap: Vec<usize> = (0..self.vertex_count())
            .map(|v| if side == Side::A && v >= self.size_a { v + 1 } else { v })
            .collect();
        let new_vertex = match side {
            Side::A => self.size_a,
            Side::B => self.vertex_count(),
        };
        let mut graph = SemisimpleGraph::empty(size_a + size_b);
        for (u, v) in self.edges() {
            graph.insert(remap[u], remap[v]).expect("relabelled edge is fresh");
        }
        (
            BipartiteGraph {
                size_a,
                size_b,
                graph,
            },
            new_vertex,
            remap,
        )
    }

    /// Views a semisimple graph as bipartite with the given class sizes.
    pub fn from_semisimple(size_a: usize, graph: &SemisimpleGraph) -> Result<Self, GraphError> {
        if size_a > graph.vertex_count() {
            return Err(GraphError::InvalidParameters(format!(
                "class size {size_a} exceeds {} vertices",
                graph.vertex_count()
            )));
        }
        Self::from_flat_edges(size_a, graph.vertex_count() - size_a, graph.edges())
    }
}

/// An owned graph of either class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Semisimple(SemisimpleGraph),
    Bipartite(BipartiteGraph),
}

/// A borrowed graph of either class.
#[derive(Debug, Clone, Copy)]
pub enum GraphRef<'a> {
    Semisimple(&'a SemisimpleGraph),
    Bipartite(&'a BipartiteGraph),
}

impl<'a> GraphRef<'a> {
    pub fn base(self) -> &'a SemisimpleGraph {
        match self {
            GraphRef::Semisimple(g) => g,
            GraphRef::Bipartite(g) => g.as_semisimple(),
        }
    }

    pub fn bipartite(self) -> Option<&'a BipartiteGraph> {
        match self {
            GraphRef::Bipartite(g) => Some(g),
            GraphRef::Semisimple(_) => None,
        }
    }

    pub fn to_owned(self) -> AnyGraph {
        match self {
            GraphRef::Semisimple(g) => AnyGraph::Semisimple(g.clone()),
            GraphRef::Bipartite(g) => AnyGraph::Bipartite(g.clone()),
        }
    }
}

impl AnyGraph {
    pub fn as_ref(&self) -> GraphRef<'_> {
        match self {
            AnyGraph::Semisimple(g) => GraphRef::Semisimple(g),
            AnyGraph::Bipartite(g) => GraphRef::Bipartite(g),
        }
    }

    pub fn base(&self) -> &SemisimpleGraph {
        self.as_ref().base()
    }

    /// Same class, same vertex layout, different edge set.
    pub fn with_edge_set(&self, edges: &[Edge]) -> Result<AnyGraph, GraphError> {
        match self {
            AnyGraph::Semisimple(g) => Ok(AnyGraph::Semisimple(SemisimpleGraph::from_edges(
                g.vertex_count(),
                edges.iter().copied(),
            )?)),
            AnyGraph::Bipartite(g) => Ok(AnyGraph::Bipartite(BipartiteGraph::from_flat_edges(
                g.size_a(),
                g.size_b(),
                edges.iter().copied(),
            )?)),
        }
    }
}

impl<'a> From<&'a SemisimpleGraph> for GraphRef<'a> {
    fn from(g: &'a SemisimpleGraph) -> Self {
        GraphRef::Semisimple(g)
    }
}

impl<'a> From<&'a BipartiteGraph> for GraphRef<'a> {
    fn from(g: &'a BipartiteGraph) -> Self {
        GraphRef::Bipartite(g)
    }
}

impl<'a> From<&'a AnyGraph> for GraphRef<'a> {
    fn from(g: &'a AnyGraph) -> Self {
        g.as_ref()
    }
}

impl From<SemisimpleGraph> for AnyGraph {
    fn from(g: SemisimpleGraph) -> Self {
        AnyGraph::Semisimple(g)
    }
}

impl From<BipartiteGraph> for AnyGraph {
    fn from(g: BipartiteGraph) -> Self {
        AnyGraph::Bipartite(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_once_and_appear_in_neighbourhood() {
        let g = SemisimpleGraph::from_edges(3, [(0, 1), (2, 2), (1, 2)]).unwrap();
        assert_eq!(g.degree(2), 2);
        assert!(g.neighbors(2).contains(&2));
        assert!(!g.neighbors(0).contains(&0));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn duplicate_and_out_of_range_are_rejected() {
        assert_eq!(
            SemisimpleGraph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            SemisimpleGraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            BipartiteGraph::from_flat_edges(1, 1, [(0, 0)]),
            Err(GraphError::LoopInBipartite(0))
        );
        assert_eq!(
            BipartiteGraph::from_flat_edges(2, 1, [(0, 1)]),
            Err(GraphError::SameSide(0, 1))
        );
    }

    #[test]
    fn min_degree_of_k4() {
        assert_eq!(complete_graph(4).min_degree(), 3);
    }

    #[test]
    fn looped_complete_graph_neighbourhood_contains_vertex() {
        let g = complete_semisimple(5);
        assert!((0..5).all(|v| g.neighbors(v).contains(&v)));
    }

    #[test]
    fn induced_subgraph_of_complete_graph() {
        let (h, map) = complete_graph(5).induced_subgraph(&[4, 1, 2]).unwrap();
        assert_eq!(h, complete_graph(3));
        assert_eq!(map, vec![4, 1, 2]);
        let (h, _) = complete_semisimple(5).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(h, complete_semisimple(3));
    }

    #[test]
    fn delete_vertex_and_isolate() {
        let g = complete_graph(4);
        assert_eq!(g.delete_vertex(2).unwrap(), complete_graph(3));
        let h = g.isolate_vertex(2).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 3);
        assert!(g.delete_vertex(7).is_err());
    }

    #[test]
    fn add_loops_examples() {
        let k3 = complete_graph(3).add_loops().unwrap();
        assert_eq!(k3.edge_count(), 6);
        assert_eq!(SemisimpleGraph::empty(2).add_loops().unwrap().edge_count(), 2);
        assert_eq!(complete_graph(6).add_loops().unwrap(), complete_semisimple(6));
        assert_eq!(k3.add_loops(), Err(GraphError::AlreadyLooped(0)));
    }

    #[test]
    fn bipartite_new_vertex_shifts_class_b() {
        let g = complete_bipartite(2, 2);
        let (h, v, remap) = g.with_new_vertex(Side::A);
        assert_eq!(v, 2);
        assert_eq!(remap, vec![0, 1, 3, 4]);
        assert_eq!(h.size_a(), 3);
        assert!(h.has_edge(0, 3) && h.has_edge(1, 4));
        assert_eq!(h.degree(2), 0);
        let (h, v, _) = g.with_new_vertex(Side::B);
        assert_eq!((v, h.size_b()), (4, 3));
    }

    #[test]
    fn bipartite_delete_vertex_keeps_layout() {
        let g = complete_bipartite(3, 2);
        let h = g.delete_vertex(1).unwrap();
        assert_eq!((h.size_a(), h.size_b()), (2, 2));
        assert_eq!(h, complete_bipartite(2, 2));
        let h = g.delete_vertex(4).unwrap();
        assert_eq!(h, complete_bipartite(3, 1));
    }

    #[test]
    fn components_and_coloring() {
        let g = SemisimpleGraph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(cycle_graph(4).two_coloring().is_some());
        assert!(cycle_graph(5).two_coloring().is_none());
    }
}
