//! The d-dimensional vertex-addition operations.
//!
//! * 0-extension: add a vertex `v` joined to `d` targets; a target equal to
//!   `v` itself is the loop `vv`.
//! * Double 1-extension: delete an edge `xy` (a loop when `x = y`), add
//!   adjacent vertices `u` and `v`, join `u` to `d` targets including `x`
//!   and `v` to `d` targets including `y`.
//! * Looped 1-extension: delete a non-loop edge `xy`, add a looped vertex
//!   `v` joined to `d` existing vertices including `x` and `y`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{normalize, AnyGraph, BipartiteGraph, Edge, GraphRef, SemisimpleGraph, Side};
use crate::linalg::{DenseMatrix, PrimeField};
use crate::matroids::{GenericMatroid, MatroidKind};

/// A neighbour of a new vertex: an existing vertex or the new vertex itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Attach {
    Vertex(usize),
    /// The new vertex itself, i.e. a loop.
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepVariant {
    Zero {
        targets: Vec<Attach>,
    },
    DoubleOne {
        removed: Edge,
        u_targets: Vec<Attach>,
        v_targets: Vec<Attach>,
    },
    LoopedOne {
        removed: Edge,
        targets: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariantName {
    Zero,
    DoubleOne,
    LoopedOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStep {
    pub dim: usize,
    pub variant: StepVariant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected {expected} targets, got {got}")]
    TargetCount { expected: usize, got: usize },
    #[error("target {0:?} listed twice")]
    DuplicateTarget(Attach),
    #[error("target vertex {vertex} out of range for {n} vertices")]
    TargetOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} to be removed is not in the graph")]
    MissingEdge(usize, usize),
    #[error("targets must contain vertex {0}")]
    MissingEndpoint(usize),
    #[error("looped 1-extension needs a non-loop edge, got a loop at {0}")]
    LoopRemoved(usize),
    #[error("bipartite graphs cannot receive loops")]
    LoopInBipartite,
    #[error("targets {0:?} are not all in one class")]
    MixedClasses(Vec<usize>),
    #[error("new vertices u and v would lie in the same class")]
    SameClassPair,
    #[error("looped 1-extensions do not apply to bipartite graphs")]
    LoopedOneBipartite,
}

impl ExtensionStep {
    pub fn zero(dim: usize, targets: Vec<Attach>) -> Self {
        ExtensionStep {
            dim,
            variant: StepVariant::Zero { targets },
        }
    }

    pub fn double_one(dim: usize, removed: Edge, u_targets: Vec<Attach>, v_targets: Vec<Attach>) -> Self {
        ExtensionStep {
            dim,
            variant: StepVariant::DoubleOne {
                removed,
                u_targets,
                v_targets,
            },
        }
    }

    pub fn looped_one(dim: usize, removed: Edge, targets: Vec<usize>) -> Self {
        ExtensionStep {
            dim,
            variant: StepVariant::LoopedOne { removed, targets },
        }
    }

    pub fn name(&self) -> VariantName {
        match self.variant {
            StepVariant::Zero { .. } => VariantName::Zero,
            StepVariant::DoubleOne { .. } => VariantName::DoubleOne,
            StepVariant::LoopedOne { .. } => VariantName::LoopedOne,
        }
    }

    /// Whether the step creates a loop.
    pub fn has_loop(&self) -> bool {
        match &self.variant {
            StepVariant::Zero { targets } => targets.contains(&Attach::Loop),
            StepVariant::DoubleOne {
                u_targets, v_targets, ..
            } => u_targets.contains(&Attach::Loop) || v_targets.contains(&Attach::Loop),
            StepVariant::LoopedOne { .. } => true,
        }
    }

    /// Change in edge count when applied.
    pub fn edge_delta(&self) -> isize {
        match self.variant {
            StepVariant::Zero { .. } | StepVariant::LoopedOne { .. } => self.dim as isize,
            StepVariant::DoubleOne { .. } => 2 * self.dim as isize,
        }
    }

    pub fn validate(&self, graph: &SemisimpleGraph) -> Result<(), ExtensionError> {
        if self.dim == 0 {
            return Err(ExtensionError::ZeroDimension);
        }
        let n = graph.vertex_count();
        match &self.variant {
            StepVariant::Zero { targets } => check_targets(targets, self.dim, n, None),
            StepVariant::DoubleOne {
                removed: (x, y),
                u_targets,
                v_targets,
            } => {
                check_removed(graph, *x, *y)?;
                check_targets(u_targets, self.dim, n, Some(*x))?;
                check_targets(v_targets, self.dim, n, Some(*y))
            }
            StepVariant::LoopedOne {
                removed: (x, y),
                targets,
            } => {
                check_removed(graph, *x, *y)?;
                if x == y {
                    return Err(ExtensionError::LoopRemoved(*x));
                }
                let attached: Vec<Attach> = targets.iter().map(|&t| Attach::Vertex(t)).collect();
                check_targets(&attached, self.dim, n, Some(*x))?;
                if !targets.contains(y) {
                    return Err(ExtensionError::MissingEndpoint(*y));
                }
                Ok(())
            }
        }
    }
}

fn check_removed(graph: &SemisimpleGraph, x: usize, y: usize) -> Result<(), ExtensionError> {
    if graph.has_edge(x, y) {
        Ok(())
    } else {
        let (x, y) = normalize(x, y);
        Err(ExtensionError::MissingEdge(x, y))
    }
}

fn check_targets(targets: &[Attach], dim: usize, n: usize, required: Option<usize>) -> Result<(), ExtensionError> {
    if targets.len() != dim {
        return Err(ExtensionError::TargetCount {
            expected: dim,
            got: targets.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for &t in targets {
        if !seen.insert(t) {
            return Err(ExtensionError::DuplicateTarget(t));
        }
        if let Attach::Vertex(v) = t {
            if v >= n {
                return Err(ExtensionError::TargetOutOfRange { vertex: v, n });
            }
        }
    }
    if let Some(x) = required {
        if !seen.contains(&Attach::Vertex(x)) {
            return Err(ExtensionError::MissingEndpoint(x));
        }
    }
    Ok(())
}

fn resolve(t: Attach, new: usize) -> usize {
    match t {
        Attach::Vertex(v) => v,
        Attach::Loop => new,
    }
}

/// Applies a step to a semisimple graph. New vertices get the next free
/// indices: `n` for a 0-extension or looped 1-extension, `u = n`, `v = n+1`
/// for a double 1-extension.
pub fn apply(graph: &SemisimpleGraph, step: &ExtensionStep) -> Result<SemisimpleGraph, ExtensionError> {
    step.validate(graph)?;
    let n = graph.vertex_count();
    let fresh = "new vertex edges are fresh";
    let g = match &step.variant {
        StepVariant::Zero { targets } => {
            let mut g = graph.with_new_vertices(1);
            for &t in targets {
                g.insert(n, resolve(t, n)).expect(fresh);
            }
            g
        }
        StepVariant::DoubleOne {
            removed: (x, y),
            u_targets,
            v_targets,
        } => {
            let mut g = graph.without_edge(*x, *y).expect("validated").with_new_vertices(2);
            let (u, v) = (n, n + 1);
            for &t in u_targets {
                g.insert(u, resolve(t, u)).expect(fresh);
            }
            for &t in v_targets {
                g.insert(v, resolve(t, v)).expect(fresh);
            }
            g.insert(u, v).expect(fresh);
            g
        }
        StepVariant::LoopedOne {
            removed: (x, y),
            targets,
        } => {
            let mut g = graph.without_edge(*x, *y).expect("validated").with_new_vertices(1);
            for &t in targets {
                g.insert(n, t).expect(fresh);
            }
            g.insert(n, n).expect(fresh);
            g
        }
    };
    Ok(g)
}

/// Class shared by all targets; the new vertex goes to the other class.
fn target_class(graph: &BipartiteGraph, targets: &[Attach]) -> Result<Side, ExtensionError> {
    let vertices: Vec<usize> = targets
        .iter()
        .map(|&t| match t {
            Attach::Vertex(v) => Ok(v),
            Attach::Loop => Err(ExtensionError::LoopInBipartite),
        })
        .collect::<Result<_, _>>()?;
    let sides: BTreeSet<Side> = vertices.iter().map(|&v| graph.side(v)).collect();
    match sides.len() {
        1 => Ok(*sides.iter().next().unwrap()),
        _ => Err(ExtensionError::MixedClasses(vertices)),
    }
}

/// Checks that a step keeps the graph bipartite and returns the classes
/// the new vertices join.
pub fn bipartite_sides(graph: &BipartiteGraph, step: &ExtensionStep) -> Result<Vec<Side>, ExtensionError> {
    step.validate(graph.as_semisimple())?;
    match &step.variant {
        StepVariant::Zero { targets } => Ok(vec![target_class(graph, targets)?.other()]),
        StepVariant::DoubleOne {
            u_targets, v_targets, ..
        } => {
            let su = target_class(graph, u_targets)?.other();
            let sv = target_class(graph, v_targets)?.other();
            if su == sv {
                return Err(ExtensionError::SameClassPair);
            }
            Ok(vec![su, sv])
        }
        StepVariant::LoopedOne { .. } => Err(ExtensionError::LoopedOneBipartite),
    }
}

/// Applies a step to a bipartite graph, placing each new vertex in the class
/// opposite its targets. Returns the graph, the new vertex indices and the
/// map old index -> new index.
pub fn apply_bipartite(
    graph: &BipartiteGraph,
    step: &ExtensionStep,
) -> Result<(BipartiteGraph, Vec<usize>, Vec<usize>), ExtensionError> {
    let sides = bipartite_sides(graph, step)?;
    let mut current = graph.clone();
    let mut remap: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut new_vertices: Vec<usize> = Vec::new();
    for side in sides {
        let (g, v, step_map) = current.with_new_vertex(side);
        for r in remap.iter_mut() {
            *r = step_map[*r];
        }
        for w in new_vertices.iter_mut() {
            *w = step_map[*w];
        }
        new_vertices.push(v);
        current = g;
    }
    let vertex = |t: &Attach| match t {
        Attach::Vertex(v) => remap[*v],
        Attach::Loop => unreachable!("bipartite steps are loop-free"),
    };
    let mut edges = current.edges();
    match &step.variant {
        StepVariant::Zero { targets } => {
            edges.extend(targets.iter().map(|t| normalize(new_vertices[0], vertex(t))));
        }
        StepVariant::DoubleOne {
            removed: (x, y),
            u_targets,
            v_targets,
        } => {
            let gone = normalize(remap[*x], remap[*y]);
            edges.retain(|&e| e != gone);
            let (u, v) = (new_vertices[0], new_vertices[1]);
            edges.extend(u_targets.iter().map(|t| normalize(u, vertex(t))));
            edges.extend(v_targets.iter().map(|t| normalize(v, vertex(t))));
            edges.push(normalize(u, v));
        }
        StepVariant::LoopedOne { .. } => unreachable!("rejected by bipartite_sides"),
    }
    let g = BipartiteGraph::from_flat_edges(current.size_a(), current.size_b(), edges)
        .expect("extension keeps the graph bipartite");
    Ok((g, new_vertices, remap))
}

/// Applies a step to either graph class.
pub fn apply_any<'a>(graph: impl Into<GraphRef<'a>>, step: &ExtensionStep) -> Result<AnyGraph, ExtensionError> {
    match graph.into() {
        GraphRef::Semisimple(g) => apply(g, step).map(AnyGraph::Semisimple),
        GraphRef::Bipartite(g) => apply_bipartite(g, step).map(|(g, _, _)| AnyGraph::Bipartite(g)),
    }
}

/// Whether `step` is one of the operations known to preserve independence
/// and spanning in `kind`: every variant for `S_d`; loop-free 0- and
/// double 1-extensions for `H_d` and the bipartite kinds, which must also
/// respect the bipartition of `graph`; loop-free 0-extensions for `R_d`.
pub fn simple_variant_allowed<'a>(step: &ExtensionStep, kind: MatroidKind, graph: impl Into<GraphRef<'a>>) -> bool {
    if kind.extension_dim() != Some(step.dim) {
        return false;
    }
    let graph = graph.into();
    if step.validate(graph.base()).is_err() {
        return false;
    }
    match kind {
        MatroidKind::SymCompletion(_) => true,
        MatroidKind::Hyperconnectivity(_) => !step.has_loop(),
        MatroidKind::Rigidity(_) => step.name() == VariantName::Zero && !step.has_loop(),
        MatroidKind::Birigidity(_) | MatroidKind::BirigidityAB(..) => match graph.bipartite() {
            Some(b) => bipartite_sides(b, step).is_ok(),
            None => false,
        },
    }
}

fn pick<R: Rng + ?Sized>(pool: &[usize], count: usize, rng: &mut R) -> Option<Vec<usize>> {
    (pool.len() >= count).then(|| pool.choose_multiple(rng, count).copied().collect())
}

/// Targets of size `dim` that contain `required` (if any), drawn from `pool`,
/// with an optional loop when `loops` is set.
fn draw_targets<R: Rng + ?Sized>(
    pool: &[usize],
    dim: usize,
    required: Option<usize>,
    loops: bool,
    rng: &mut R,
) -> Option<Vec<Attach>> {
    let mut out: Vec<Attach> = required.map(Attach::Vertex).into_iter().collect();
    let looped = loops && out.len() < dim && rng.gen_bool(0.5);
    if looped {
        out.push(Attach::Loop);
    }
    let rest: Vec<usize> = pool.iter().copied().filter(|&v| Some(v) != required).collect();
    let chosen = pick(&rest, dim - out.len(), rng)?;
    out.extend(chosen.into_iter().map(Attach::Vertex));
    out.sort();
    Some(out)
}

/// A uniformly drawn step of `variant` allowed for `kind` on `graph`, or
/// `None` when no such step exists (for instance, no edge to delete).
pub fn random_step<'a, R: Rng + ?Sized>(
    graph: impl Into<GraphRef<'a>>,
    kind: MatroidKind,
    variant: VariantName,
    rng: &mut R,
) -> Option<ExtensionStep> {
    let graph = graph.into();
    let dim = kind.extension_dim()?;
    let base = graph.base();
    let n = base.vertex_count();
    let loops = kind.allows_loops();
    let all: Vec<usize> = (0..n).collect();
    let step = match (variant, graph.bipartite()) {
        (VariantName::Zero, None) => ExtensionStep::zero(dim, draw_targets(&all, dim, None, loops, rng)?),
        (VariantName::Zero, Some(b)) => {
            let side = if rng.gen_bool(0.5) { Side::A } else { Side::B };
            let pool: Vec<usize> = b.class(side).collect();
            ExtensionStep::zero(dim, draw_targets(&pool, dim, None, false, rng)?)
        }
        (VariantName::DoubleOne, bip) => {
            let edges = base.edges();
            let edges: Vec<Edge> = edges.into_iter().filter(|&(x, y)| bip.is_none() || x != y).collect();
            let &(x, y) = edges.choose(rng)?;
            let (x, y) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
            let (pool_u, pool_v): (Vec<usize>, Vec<usize>) = match bip {
                None => (all.clone(), all.clone()),
                Some(b) => (b.class(b.side(x)).collect(), b.class(b.side(y)).collect()),
            };
            let u_targets = draw_targets(&pool_u, dim, Some(x), loops, rng)?;
            let v_targets = draw_targets(&pool_v, dim, Some(y), loops, rng)?;
            ExtensionStep::double_one(dim, (x, y), u_targets, v_targets)
        }
        (VariantName::LoopedOne, None) => {
            let edges: Vec<Edge> = base.edges().into_iter().filter(|&(x, y)| x != y).collect();
            let &(x, y) = edges.choose(rng)?;
            if dim < 2 {
                return None;
            }
            let rest: Vec<usize> = all.iter().copied().filter(|&v| v != x && v != y).collect();
            let mut targets = vec![x, y];
            targets.extend(pick(&rest, dim - 2, rng)?);
            targets.sort();
            ExtensionStep::looped_one(dim, (x, y), targets)
        }
        (VariantName::LoopedOne, Some(_)) => return None,
    };
    simple_variant_allowed(&step, kind, graph).then_some(step)
}

/// Rank of the four `H_d` rows `xy, xy', x'y, x'y'` at a point where
/// `x'` and `y'` sit on top of `x` and `y`. The rows form a circuit, so
/// the rank is 3 for every `d >= 1` and every choice of `p(x), p(y)`.
pub fn degenerate_circuit_rank(d: usize, field: PrimeField, seed: u64) -> usize {
    // x = 0, y = 1, x' = 2, y' = 3
    let graph = SemisimpleGraph::from_edges(4, [(0, 1), (0, 3), (1, 2), (2, 3)]).expect("four distinct edges");
    let kind = MatroidKind::Hyperconnectivity(d);
    let matroid = GenericMatroid::new(kind, &graph).expect("simple graph");
    let mut point = matroid.draw_assignment(field, seed);
    point.vectors[2] = point.vectors[0].clone();
    point.vectors[3] = point.vectors[1].clone();
    let m: DenseMatrix = matroid.matrix(&graph.edges(), &point, field).expect("valid assignment");
    m.rank()
}
