use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use rigidity_core::connectivity::{
    is_critically_k_biconnected, is_critically_k_connected, is_k_biconnected_capped, is_k_connected,
    min_vertex_cover, sparse_local_certificate, tau_bound_report, vertex_connectivity, BiconnectivityResult,
    ConnectivityError, SeparatorMode,
};
use rigidity_core::graphs::{AnyGraph, GraphDocument};
use rigidity_core::matroids::{closure as matroid_closure, GenericMatroid, MatroidKind};
use rigidity_core::rng;
use rigidity_core::seeds::{
    biconnected_seed, find_seed, greedy_cover_set, sample_cover_set, BiconnectedSeedFailure, SeedChain,
};

use crate::output::{Outcome, Status};
use crate::{CliError, GlobalArgs, Strategy};

/// Largest general graph handed to the exact vertex cover search.
const MAX_COVER_VERTICES: usize = 128;

pub fn read_graph(path: &Path) -> Result<GraphDocument, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    Ok(GraphDocument::parse_any(&text)?)
}

fn one_or_many(items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.into_iter().next().unwrap()
    } else {
        Value::Array(items)
    }
}

#[derive(Debug, Serialize)]
struct RankReport {
    file: String,
    kind: String,
    vertices: usize,
    edges: usize,
    rank: usize,
    formula_rank: Option<usize>,
    is_rigid: bool,
}

pub fn rank(global: &GlobalArgs, paths: &[std::path::PathBuf]) -> Result<Outcome, CliError> {
    let config = global.config()?;
    let mut reports = Vec::new();
    let mut text = String::new();
    for path in paths {
        let doc = read_graph(path)?;
        let kind = global.kind_for(&doc.graph)?;
        let graph = &doc.graph;
        let matroid = GenericMatroid::new(kind, graph)?;
        let r = matroid.oracle(&config).rank(&graph.base().edges())?;
        let report = RankReport {
            file: path.display().to_string(),
            kind: kind.to_string(),
            vertices: graph.base().vertex_count(),
            edges: graph.base().edge_count(),
            rank: r,
            formula_rank: matroid.formula_rank(),
            is_rigid: rigidity_core::matroids::is_rigid(graph, kind, &config)?,
        };
        let formula = report.formula_rank.map_or("-".to_string(), |f| f.to_string());
        writeln!(
            text,
            "{}: {} rank {} formula {} rigid {}",
            report.file, report.kind, report.rank, formula, report.is_rigid
        )
        .unwrap();
        reports.push(serde_json::to_value(&report).expect("serialises"));
    }
    Ok(Outcome::new(&one_or_many(reports), Status::Passed).with_text(text))
}

pub fn check(global: &GlobalArgs, paths: &[std::path::PathBuf]) -> Result<Outcome, CliError> {
    let config = global.config()?;
    let mut reports = Vec::new();
    for path in paths {
        let doc = read_graph(path)?;
        let kind = global.kind_for(&doc.graph)?;
        let linked = rigidity_core::matroids::linked_non_edges(&doc.graph, kind, &config)?;
        reports.push(json!({
            "file": path.display().to_string(),
            "kind": kind.to_string(),
            "independent": rigidity_core::matroids::is_independent(&doc.graph, kind, &config)?,
            "rigid": rigidity_core::matroids::is_rigid(&doc.graph, kind, &config)?,
            "closed": linked.is_empty(),
            "linked_non_edges": linked,
        }));
    }
    Ok(Outcome::new(&one_or_many(reports), Status::Passed))
}

fn graph_outcome(doc: GraphDocument) -> Outcome {
    let text = doc.serialize();
    Outcome::new(&doc.to_json(), Status::Passed).with_text(text)
}

pub fn closure(global: &GlobalArgs, path: &Path) -> Result<Outcome, CliError> {
    let doc = read_graph(path)?;
    let kind = global.kind_for(&doc.graph)?;
    let closed = matroid_closure(&doc.graph, kind, &global.config()?)?;
    let name = format!("{} closure of {}", kind, doc.name.as_deref().unwrap_or("input"));
    Ok(graph_outcome(GraphDocument::new(closed).named(name).param("kind", kind)))
}

fn parse_levels(text: &str) -> Result<Vec<BTreeSet<usize>>, CliError> {
    text.split(';')
        .map(|level| {
            level
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex `{t}` in --levels"))))
                .collect()
        })
        .collect()
}

pub fn seed(
    global: &GlobalArgs,
    path: &Path,
    strategy: Strategy,
    levels: Option<&str>,
    probability: f64,
    k: Option<usize>,
) -> Result<Outcome, CliError> {
    let doc = read_graph(path)?;
    let kind = global.kind_for(&doc.graph)?;
    let config = global.config()?;
    let base = doc.graph.base();
    let all: BTreeSet<usize> = (0..base.vertex_count()).collect();
    let d = kind.extension_dim().ok_or(rigidity_core::seeds::SeedError::NoExtensionDim(kind))?;
    let chain = match (strategy, levels) {
        (Strategy::Biconnected, _) => {
            let AnyGraph::Bipartite(g) = &doc.graph else {
                return Err(CliError::Usage("the biconnected strategy needs a bipartite graph".into()));
            };
            if !matches!(kind, MatroidKind::Birigidity(_)) {
                return Err(CliError::Usage("the biconnected strategy uses B_d".into()));
            }
            let k = k.ok_or_else(|| CliError::Usage("the biconnected strategy needs -k".into()))?;
            let report = biconnected_seed(g, d, k, &config, &mut rng::stream(global.seed, 0))?;
            let status = match &report.outcome {
                Err(BiconnectedSeedFailure::Verification(_)) => Status::Violation,
                _ => Status::Passed,
            };
            return Ok(Outcome::new(&report, status));
        }
        (Strategy::Chain, Some(text)) => SeedChain::new(parse_levels(text)?),
        (Strategy::Chain, None) => SeedChain::new(vec![greedy_cover_set(base, d)?, all]),
        (Strategy::Sample, _) => {
            let sample = sample_cover_set(base, d, probability, &mut rng::stream(global.seed, 0))?;
            SeedChain::new(vec![sample.set, all])
        }
    };
    let found = find_seed(&doc.graph, kind, &chain, &config)?;
    let report = json!({
        "kind": kind.to_string(),
        "chain": chain.levels,
        "construction": found,
    });
    Ok(Outcome::new(&report, Status::Passed))
}

#[derive(Debug, Serialize)]
struct ConnectivityReport {
    vertices: usize,
    k: usize,
    kappa: usize,
    k_connected: bool,
    critically_k_connected: bool,
    k_biconnected: Option<BiconnectivityResult>,
    critically_k_biconnected: Option<bool>,
    tau: Option<usize>,
    cover: Option<Vec<usize>>,
    tau_report: Option<Value>,
}

pub fn connectivity(
    path: &Path,
    k: usize,
    mode: Option<SeparatorMode>,
    cap: u128,
) -> Result<Outcome, CliError> {
    let doc = read_graph(path)?;
    let base = doc.graph.base();
    let n = base.vertex_count();
    let (k_biconnected, critically_k_biconnected) = match &doc.graph {
        AnyGraph::Bipartite(g) => (Some(is_k_biconnected_capped(g, k, cap)?), Some(is_critically_k_biconnected(g, k)?)),
        AnyGraph::Semisimple(_) => (None, None),
    };
    let cover = (matches!(doc.graph, AnyGraph::Bipartite(_)) || n <= MAX_COVER_VERTICES).then(|| min_vertex_cover((&doc.graph).into()));
    let mut status = Status::Passed;
    let tau_report = match mode {
        None => None,
        Some(mode) => Some(match tau_bound_report((&doc.graph).into(), k, mode, cap) {
            Ok(r) => {
                if !r.all_hold {
                    status = Status::Violation;
                }
                serde_json::to_value(r).expect("serialises")
            }
            Err(e @ (ConnectivityError::Precondition(_) | ConnectivityError::NotBipartite)) => {
                json!({ "error": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        }),
    };
    let report = ConnectivityReport {
        vertices: n,
        k,
        kappa: vertex_connectivity(base),
        k_connected: is_k_connected(base, k),
        critically_k_connected: is_critically_k_connected(base, k),
        k_biconnected,
        critically_k_biconnected,
        tau: cover.as_ref().map(Vec::len),
        cover,
        tau_report,
    };
    Ok(Outcome::new(&report, status))
}

pub fn certify(path: &Path, k: usize) -> Result<Outcome, CliError> {
    let doc = read_graph(path)?;
    let cert = sparse_local_certificate(doc.graph.base(), k);
    let status = if cert.within_bound && cert.preserves_connectivity {
        Status::Passed
    } else {
        Status::Violation
    };
    Ok(Outcome::new(&cert, status))
}
