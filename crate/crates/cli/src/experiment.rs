//! Family generation and parameter sweeps.
//!
//! Every instance of a sweep gets its own seed, derived from `--seed` and
//! the instance index, so instances can run in parallel without changing
//! the report. Sweeps tied to open problems or to asymptotic statements are
//! labelled exploratory and never count as violations.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use rigidity_core::connectivity::{
    is_k_biconnected, is_k_connected, tau_bound_chain, tau_bound_report, vertex_connectivity,
    SeparatorMode, DEFAULT_SEARCH_CAP,
};
use rigidity_core::graphs::{
    circulant_bipartite, complete_bipartite, complete_graph, complete_semisimple, complete_tripartite,
    critical_family, cycle_graph, ly_split_family, path_graph, random_bipartite, random_graph, random_semisimple,
    AnyGraph, GraphDocument, SemisimpleGraph,
};
use rigidity_core::matroids::{generic_rank, is_rigid, MatroidKind, RankQueryConfig};
use rigidity_core::rng;

use crate::output::{Outcome, Status};
use crate::{CliError, GlobalArgs, KindArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    /// K_n: n
    Complete,
    /// K_n with every loop: n
    CompleteSemisimple,
    /// K_{m,n}: m n
    CompleteBipartite,
    /// K_{m1,m2,m3}: m1 m2 m3
    CompleteTripartite,
    /// C_n: n
    Cycle,
    /// P_n: n
    Path,
    /// k-regular circulant bipartite graph on s + s vertices: s k
    CirculantBipartite,
    /// Split construction defeating (a,b)-birigidity: a b s
    SplitFamily,
    /// Glued copies of K_{k,k}: k p
    Critical,
    /// G(n, p): n p
    Random,
    /// G(n, p) with loops of probability q: n p q
    RandomSemisimple,
    /// Random bipartite graph: a b p
    RandomBipartite,
}

fn count(params: &[f64], i: usize) -> Result<usize, CliError> {
    let x = params[i];
    if x < 0.0 || x.fract() != 0.0 {
        return Err(CliError::Usage(format!("parameter {} must be a non-negative integer, got {x}", i + 1)));
    }
    Ok(x as usize)
}

fn probability(params: &[f64], i: usize) -> Result<f64, CliError> {
    let x = params[i];
    if !(0.0..=1.0).contains(&x) {
        return Err(CliError::Usage(format!("parameter {} must be a probability, got {x}", i + 1)));
    }
    Ok(x)
}

pub fn build_family(name: FamilyName, params: &[f64], seed: u64) -> Result<GraphDocument, CliError> {
    let want = match name {
        FamilyName::Complete | FamilyName::CompleteSemisimple | FamilyName::Cycle | FamilyName::Path => 1,
        FamilyName::CompleteBipartite | FamilyName::CirculantBipartite | FamilyName::Critical | FamilyName::Random => 2,
        _ => 3,
    };
    if params.len() != want {
        return Err(CliError::Usage(format!("{name:?} takes {want} parameters, got {}", params.len())));
    }
    let mut rng = rng::stream(seed, 0);
    let graph: AnyGraph = match name {
        FamilyName::Complete => complete_graph(count(params, 0)?).into(),
        FamilyName::CompleteSemisimple => complete_semisimple(count(params, 0)?).into(),
        FamilyName::CompleteBipartite => complete_bipartite(count(params, 0)?, count(params, 1)?).into(),
        FamilyName::CompleteTripartite => {
            complete_tripartite(count(params, 0)?, count(params, 1)?, count(params, 2)?).into()
        }
        FamilyName::Cycle => cycle_graph(count(params, 0)?).into(),
        FamilyName::Path => path_graph(count(params, 0)?).into(),
        FamilyName::CirculantBipartite => circulant_bipartite(count(params, 0)?, count(params, 1)?)?.into(),
        FamilyName::SplitFamily => ly_split_family(count(params, 0)?, count(params, 1)?, count(params, 2)?)?.into(),
        FamilyName::Critical => critical_family(count(params, 0)?, count(params, 1)?)?.into(),
        FamilyName::Random => random_graph(count(params, 0)?, probability(params, 1)?, &mut rng).into(),
        FamilyName::RandomSemisimple => {
            random_semisimple(count(params, 0)?, probability(params, 1)?, probability(params, 2)?, &mut rng).into()
        }
        FamilyName::RandomBipartite => {
            random_bipartite(count(params, 0)?, count(params, 1)?, probability(params, 2)?, &mut rng).into()
        }
    };
    let label = serde_json::to_value(name).expect("serialises");
    let mut doc = GraphDocument::new(graph).named(label.as_str().expect("string"));
    for (i, p) in params.iter().enumerate() {
        doc = doc.param(format!("p{}", i + 1), p);
    }
    if matches!(name, FamilyName::Random | FamilyName::RandomSemisimple | FamilyName::RandomBipartite) {
        doc = doc.param("seed", seed);
    }
    Ok(doc)
}

pub fn family(global: &GlobalArgs, name: FamilyName, params: &[f64]) -> Result<Outcome, CliError> {
    let doc = build_family(name, params, global.seed)?;
    let text = doc.serialize();
    Ok(Outcome::new(&doc.to_json(), Status::Passed).with_text(text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sweep {
    /// Random graphs above the minimum-degree threshold (exploratory).
    MinDegree,
    /// K_{m,m,d-2} and K_{m,m,d-1} stay below full rank (asserted).
    Tightness,
    /// k-biconnectivity against d-birigidity on random graphs (exploratory).
    Biconnectivity,
    /// Vertex-cover bound argument on the critical family (asserted).
    TauBound,
    /// Rank lower bound dn - d^2 on k-connected graphs (exploratory).
    RankLowerBound,
    /// 2ab-connected bipartite graphs against (a,b)-birigidity (exploratory).
    AbConnectivity,
    /// The split construction is (2ab-1)-connected but not (a,b)-birigid (asserted).
    SplitFamily,
}

impl Sweep {
    fn exploratory(self) -> bool {
        matches!(self, Sweep::MinDegree | Sweep::Biconnectivity | Sweep::RankLowerBound | Sweep::AbConnectivity)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    sweep: Sweep,
    /// Dimensions, as `2`, `2,3` or `2..4` (inclusive); defaults to --dim.
    #[arg(long)]
    dims: Option<String>,
    /// Graph or class sizes.
    #[arg(long)]
    sizes: Option<String>,
    /// Connectivity parameters k.
    #[arg(long)]
    ks: Option<String>,
    /// Copy counts p for the critical family.
    #[arg(long)]
    ps: Option<String>,
    /// Random instances per parameter combination.
    #[arg(long, default_value_t = 10)]
    instances: usize,
    /// Directory for counterexample graph files.
    #[arg(long)]
    counterexamples: Option<PathBuf>,
}

/// Resolved sweep parameters, echoed into the report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    sweep: Sweep,
    dims: Vec<usize>,
    sizes: Vec<usize>,
    ks: Vec<usize>,
    ps: Vec<usize>,
    ab: (usize, usize),
    instances: usize,
    trials: usize,
    prime: u64,
    seed: u64,
}

fn parse_range(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad {what} range `{text}`"));
    let values: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        text.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(CliError::Usage(format!("{what} range `{text}` is empty")));
    }
    Ok(values)
}

impl ExperimentConfig {
    fn resolve(global: &GlobalArgs, args: &ExperimentArgs) -> Result<Self, CliError> {
        let range = |given: &Option<String>, default: &str, what: &str| parse_range(given.as_deref().unwrap_or(default), what);
        let (sizes, ks, ps, dims) = match args.sweep {
            Sweep::MinDegree => ("12..20", "1", "1", None),
            Sweep::Tightness => ("3..5", "1", "1", Some("2,3")),
            Sweep::Biconnectivity => ("4..6", "2,3", "1", None),
            Sweep::TauBound => ("1", "2,3", "2..5", None),
            Sweep::RankLowerBound => ("8..10", "3,4", "1", None),
            Sweep::AbConnectivity => ("5..7", "1", "1", None),
            Sweep::SplitFamily => ("4", "1", "1", None),
        };
        let dim_default = global.dim.to_string();
        if args.instances == 0 {
            return Err(CliError::Usage("--instances must be at least 1".into()));
        }
        if global.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        Ok(ExperimentConfig {
            sweep: args.sweep,
            dims: range(&args.dims, dims.unwrap_or(&dim_default), "dimension")?,
            sizes: range(&args.sizes, sizes, "size")?,
            ks: range(&args.ks, ks, "k")?,
            ps: range(&args.ps, ps, "p")?,
            ab: global.ab_pair().unwrap_or((1, 2)),
            instances: args.instances,
            trials: global.trials,
            prime: global.prime,
            seed: global.seed,
        })
    }

    fn rank_config(&self, instance_seed: u64) -> Result<RankQueryConfig, CliError> {
        Ok(RankQueryConfig::new(self.trials, self.prime, rng::substream_seed(instance_seed, 1))?)
    }
}

/// One evaluated instance: its JSON record, whether it breaks an asserted
/// property, and a graph worth saving.
struct InstanceResult {
    record: Value,
    violation: bool,
    keep: Option<GraphDocument>,
}

type Task = (usize, usize, usize, usize);

fn grid(a: &[usize], b: &[usize], reps: usize) -> Vec<Task> {
    let mut tasks = Vec::new();
    for &x in a {
        for &y in b {
            for r in 0..reps {
                tasks.push((tasks.len(), x, y, r));
            }
        }
    }
    tasks
}

/// Raises degrees to the threshold by joining deficient vertices to random
/// non-neighbours. Looped graphs use `(n+d)/2` at unlooped vertices.
fn dense_graph(n: usize, d: usize, looped: bool, rng: &mut impl Rng) -> SemisimpleGraph {
    let mut g = if looped { random_semisimple(n, 0.5, 0.5, rng) } else { random_graph(n, 0.5, rng) };
    for v in 0..n {
        let need = if looped && !g.has_loop(v) { (n + d).div_ceil(2) } else { (n + d - 1).div_ceil(2) };
        while g.degree(v) < need.min(n - 1 + usize::from(g.has_loop(v))) {
            let w = rng.gen_range(0..n);
            if w != v && !g.has_edge(v, w) {
                g = g.with_edge(v, w).expect("fresh pair");
            }
        }
    }
    g
}

fn run_instance(cfg: &ExperimentConfig, kind_arg: Option<KindArg>, task: Task) -> Result<InstanceResult, CliError> {
    let (index, x, y, rep) = task;
    let inst_seed = rng::substream_seed(cfg.seed, index as u64);
    let mut gen = rng::stream(inst_seed, 0);
    let rc = cfg.rank_config(inst_seed)?;
    let plain = |record: Value| InstanceResult {
        record,
        violation: false,
        keep: None,
    };
    Ok(match cfg.sweep {
        Sweep::MinDegree => {
            let (d, n) = (x, y);
            let looped = kind_arg == Some(KindArg::Sym);
            let kind = if looped { MatroidKind::SymCompletion(d) } else { MatroidKind::Hyperconnectivity(d) };
            let g = dense_graph(n, d, looped, &mut gen);
            let rigid = is_rigid(&g, kind, &rc)?;
            InstanceResult {
                record: json!({"d": d, "n": n, "instance": rep, "kind": kind.to_string(), "min_degree": g.min_degree(), "rigid": rigid}),
                violation: false,
                keep: (!rigid).then(|| GraphDocument::new(g).named(format!("min-degree d={d} n={n} #{rep}"))),
            }
        }
        Sweep::Tightness => {
            let (d, m) = (x, y);
            let hyper = complete_tripartite(m, m, d - 2);
            let completion = complete_tripartite(m, m, d - 1);
            let h_rigid = is_rigid(&hyper, MatroidKind::Hyperconnectivity(d), &rc)?;
            let s_rigid = is_rigid(&completion, MatroidKind::SymCompletion(d), &rc)?;
            InstanceResult {
                record: json!({"d": d, "m": m, "hyperconnected_K_mm(d-2)": h_rigid, "completable_K_mm(d-1)": s_rigid}),
                violation: h_rigid || s_rigid,
                keep: None,
            }
        }
        Sweep::Biconnectivity => {
            let (k, n) = (x, y);
            let g = random_bipartite(n, n, 0.7, &mut gen);
            let bicon = is_k_biconnected(&g, k)?.biconnected;
            let birigid: Vec<Value> = cfg
                .dims
                .iter()
                .map(|&d| Ok(json!({"d": d, "birigid": is_rigid(&g, MatroidKind::Birigidity(d), &rc)?})))
                .collect::<Result<_, CliError>>()?;
            plain(json!({"k": k, "class_size": n, "instance": rep, "k_biconnected": bicon, "birigid": birigid}))
        }
        Sweep::TauBound => {
            let (k, p) = (x, y);
            let g = critical_family(k, p)?;
            let general = tau_bound_report(g.as_semisimple().into(), k, SeparatorMode::General, DEFAULT_SEARCH_CAP)?;
            let chain = tau_bound_chain((&g).into(), k, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP)?;
            let strict = tau_bound_report((&g).into(), k, SeparatorMode::Bipartite, DEFAULT_SEARCH_CAP)
                .map(|r| r.all_hold)
                .map_err(|e| e.to_string());
            let tau = general.tau;
            let family_bound = tau <= k + p;
            InstanceResult {
                record: json!({
                    "k": k, "p": p, "vertices": g.vertex_count(), "tau": tau,
                    "tau_at_most_k_plus_p": family_bound,
                    "general": {"all_hold": general.all_hold, "inequalities": general.inequalities},
                    "bipartite_chain": {"all_hold": chain.all_hold, "inequalities": chain.inequalities},
                    "bipartite_report": match strict { Ok(h) => json!({"all_hold": h}), Err(e) => json!({"error": e}) },
                }),
                violation: !general.all_hold || !chain.all_hold || !family_bound,
                keep: None,
            }
        }
        Sweep::RankLowerBound => {
            let (k, n) = (x, y);
            let mut found = None;
            for _ in 0..50 {
                let g = random_graph(n, 0.7, &mut gen);
                if is_k_connected(&g, k) {
                    found = Some(g);
                    break;
                }
            }
            let Some(g) = found else {
                return Ok(plain(json!({"k": k, "n": n, "instance": rep, "sampled": false})));
            };
            let mut checks = Vec::new();
            let mut below = false;
            for &d in &cfg.dims {
                let target = (d * n).saturating_sub(d * d);
                let s = generic_rank(&g.add_loops()?, MatroidKind::SymCompletion(d), &rc)?;
                let s_plain = generic_rank(&g, MatroidKind::SymCompletion(d), &rc)?;
                let h = generic_rank(&g, MatroidKind::Hyperconnectivity(d), &rc)?;
                below |= s_plain < target || h < target;
                checks.push(json!({"d": d, "target": target, "rank_S": s_plain, "rank_S_looped": s, "rank_H": h}));
            }
            InstanceResult {
                record: json!({"k": k, "n": n, "instance": rep, "sampled": true, "ranks": checks}),
                violation: false,
                keep: below.then(|| GraphDocument::new(g).named(format!("rank-lower-bound k={k} n={n} #{rep}"))),
            }
        }
        Sweep::AbConnectivity => {
            let (a, b) = cfg.ab;
            let n = y;
            let g = random_bipartite(n, n, 0.8, &mut gen);
            let kappa = vertex_connectivity(g.as_semisimple());
            let eligible = kappa >= 2 * a * b;
            let birigid = if eligible { Some(is_rigid(&g, MatroidKind::BirigidityAB(a, b), &rc)?) } else { None };
            InstanceResult {
                record: json!({"a": a, "b": b, "class_size": n, "instance": rep, "kappa": kappa, "birigid": birigid}),
                violation: false,
                keep: (birigid == Some(false)).then(|| GraphDocument::new(g).named(format!("ab a={a} b={b} #{rep}"))),
            }
        }
        Sweep::SplitFamily => {
            let (a, b) = cfg.ab;
            let s = y;
            let g = ly_split_family(a, b, s)?;
            let k = 2 * a * b - 1;
            let kind = MatroidKind::BirigidityAB(a, b);
            let r = generic_rank(&g, kind, &rc)?;
            let full = b * g.size_a() + a * g.size_b();
            let connected = is_k_connected(g.as_semisimple(), k);
            let birigid = is_rigid(&g, kind, &rc)?;
            let chain = r + s <= full + a * b && r + a * b < full;
            InstanceResult {
                record: json!({
                    "a": a, "b": b, "s": s, "k": k, "vertices": g.vertex_count(),
                    "k_connected": connected, "birigid": birigid, "rank": r,
                    "bound_minus_s": (full + a * b).saturating_sub(s), "bound_minus_ab": full,
                }),
                violation: !connected || birigid || !chain,
                keep: None,
            }
        }
    })
}

pub fn run(global: &GlobalArgs, args: &ExperimentArgs) -> Result<Outcome, CliError> {
    let cfg = ExperimentConfig::resolve(global, args)?;
    let reps = if cfg.sweep.exploratory() { cfg.instances } else { 1 };
    let tasks = match cfg.sweep {
        Sweep::MinDegree => grid(&cfg.dims, &cfg.sizes, reps),
        Sweep::Tightness => grid(&cfg.dims, &cfg.sizes, reps),
        Sweep::Biconnectivity | Sweep::RankLowerBound => grid(&cfg.ks, &cfg.sizes, reps),
        Sweep::TauBound => grid(&cfg.ks, &cfg.ps, reps),
        Sweep::AbConnectivity | Sweep::SplitFamily => grid(&[0], &cfg.sizes, reps),
    };
    if cfg.sweep == Sweep::Tightness && cfg.dims.contains(&1) {
        return Err(CliError::Usage("the tightness sweep needs d >= 2".into()));
    }
    let kind_arg = global.kind;
    let results: Vec<InstanceResult> = tasks
        .par_iter()
        .map(|&t| run_instance(&cfg, kind_arg, t))
        .collect::<Result<_, _>>()?;

    let mut files = Vec::new();
    if let Some(dir) = &args.counterexamples {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for (i, r) in results.iter().enumerate() {
            if let Some(doc) = &r.keep {
                let path = dir.join(format!("{}-{i:04}.graph", serde_json::to_value(cfg.sweep).unwrap().as_str().unwrap()));
                std::fs::write(&path, doc.serialize()).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                files.push(path.display().to_string());
            }
        }
    }
    let violations = results.iter().filter(|r| r.violation).count();
    let flagged = results.iter().filter(|r| r.keep.is_some()).count();
    let status = if violations > 0 {
        Status::Violation
    } else if cfg.sweep.exploratory() {
        Status::Exploratory
    } else {
        Status::Passed
    };
    let report = json!({
        "label": if cfg.sweep.exploratory() { "EXPLORATORY" } else { "ASSERTED" },
        "config": cfg,
        "instances": results.iter().map(|r| &r.record).collect::<Vec<_>>(),
        "violations": violations,
        "flagged_graphs": flagged,
        "counterexample_files": files,
    });
    Ok(Outcome::new(&report, status))
}
