//! Loading an instance and running one algorithm on it.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use steiner_anneal::anneal::{replicate, AnnealingConfig, StartFamily, Variant};
use steiner_anneal::baselines::{best_benchmark, shp1, shp2};
use steiner_anneal::dp::extract_tree;
use steiner_anneal::graph::ArcId;
use steiner_anneal::io::{parse_stp, to_instance, LoadedInstance, ResultRow, RootPolicy};
use steiner_anneal::{Apsp, ExecMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Sa,
    SaTest,
    SaRect,
    Shp1,
    Shp2,
    /// Best of shp1 and shp2, reported as `bb2`.
    Bb,
}

impl Algorithm {
    fn variant(self) -> Option<Variant> {
        match self {
            Algorithm::Sa => Some(Variant::Sa),
            Algorithm::SaTest => Some(Variant::SaTest),
            Algorithm::SaRect => Some(Variant::SaRect),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Start {
    SingleLinkage,
    Random,
}

/// `--root`: a 1-based node id, `auto` or `central`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootArg {
    Auto,
    Central,
    Node(usize),
}

impl std::str::FromStr for RootArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(RootArg::Auto),
            "central" => Ok(RootArg::Central),
            _ => match s.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("expected a node id (1-based), `auto` or `central`, got {s:?}")),
                Ok(v) => Ok(RootArg::Node(v)),
            },
        }
    }
}

impl fmt::Display for RootArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootArg::Auto => f.write_str("auto"),
            RootArg::Central => f.write_str("central"),
            RootArg::Node(v) => write!(f, "{v}"),
        }
    }
}

impl RootArg {
    fn policy(self) -> RootPolicy {
        match self {
            RootArg::Auto => RootPolicy::FirstTerminal,
            RootArg::Central => RootPolicy::Central,
            RootArg::Node(v) => RootPolicy::Node(v - 1),
        }
    }
}

/// Everything about a run except the instance.
#[derive(Clone, Debug)]
pub struct RunSettings {
    pub iterations: usize,
    pub replications: usize,
    pub seed: u64,
    pub root: RootArg,
    pub start: Start,
    pub clusterizations: usize,
    pub prune_baseline: bool,
    pub exec: ExecMode,
}

pub struct Outcome {
    pub row: ResultRow,
    pub loaded: LoadedInstance,
    pub arcs: Vec<ArcId>,
}

pub fn load(path: &Path, root: RootArg) -> Result<LoadedInstance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw = parse_stp(&text).with_context(|| format!("parsing {}", path.display()))?;
    to_instance(&raw, root.policy()).with_context(|| format!("building {}", path.display()))
}

/// Row template for `algorithm` on `instance`, before anything ran.
pub fn empty_row(instance: &str, algorithm: Algorithm, settings: &RunSettings, opt: Option<f64>) -> ResultRow {
    let sa = algorithm.variant().is_some();
    ResultRow {
        instance: instance.to_string(),
        algorithm: algorithm_name(algorithm).to_string(),
        iterations: sa.then_some(settings.iterations),
        replications: sa.then_some(settings.replications),
        seed: sa.then_some(settings.seed),
        cost: None,
        opt,
        iters_run: None,
        avg_iter_ms: None,
        root: String::new(),
        status: String::new(),
    }
}

pub fn algorithm_name(algorithm: Algorithm) -> &'static str {
    match algorithm {
        Algorithm::Bb => "bb2",
        Algorithm::Shp1 => "shp1",
        Algorithm::Shp2 => "shp2",
        a => a.variant().expect("annealing variant").name(),
    }
}

pub fn run(
    path: &Path,
    label: &str,
    algorithm: Algorithm,
    settings: &RunSettings,
    opt: Option<f64>,
) -> Result<Outcome> {
    let loaded = load(path, settings.root)?;
    let instance = &loaded.instance;
    let apsp = Apsp::compute(instance, settings.exec);
    let mut row = empty_row(label, algorithm, settings, opt);
    row.root = loaded.root_rule.name().to_string();
    let arcs = match algorithm.variant() {
        Some(variant) => {
            if variant == Variant::SaRect && loaded.coordinates.is_none() {
                bail!("sa-rect needs coordinates for every terminal");
            }
            let config = AnnealingConfig {
                iterations: settings.iterations,
                replications: settings.replications,
                seed: settings.seed,
                variant,
                clusterizations: settings.clusterizations,
                start: match settings.start {
                    Start::SingleLinkage => StartFamily::SingleLinkage,
                    Start::Random => StartFamily::Random,
                },
                exec: settings.exec,
                record_trace: false,
                ..AnnealingConfig::default()
            };
            let reps = replicate(instance, &apsp, loaded.coordinates.as_ref(), &config)?;
            let times: Vec<f64> = reps.runs.iter().filter_map(|r| r.avg_iter_ms()).collect();
            if !times.is_empty() {
                row.avg_iter_ms = Some(times.iter().sum::<f64>() / times.len() as f64);
            }
            let best = reps.into_best();
            row.iters_run = Some(best.iterations_run);
            best.best_tree.arcs
        }
        None => {
            let result = match algorithm {
                Algorithm::Shp1 => shp1(instance, &apsp),
                Algorithm::Shp2 => shp2(instance),
                _ => best_benchmark(instance, &apsp),
            };
            if settings.prune_baseline {
                extract_tree(&result.arcs, instance)?.arcs
            } else {
                result.arcs
            }
        }
    };
    row.cost = Some(instance.cost_of(&arcs));
    row.status = "ok".to_string();
    Ok(Outcome { row, loaded, arcs })
}
