//! Simulated annealing over laminar structures.
//!
//! A state is a full-binary family; its cost is the structured optimum
//! `z(r, K)`. Each iteration draws an SPR neighbor, solves it, and accepts
//! it if it is strictly better or with probability `p(delta, T_j)`
//! otherwise. `SaTest` first passes every candidate through
//! [`improve_solution`]; `SaRect` seeds that loop with the best of several
//! k-means clusterizations.

mod schedule;

pub use schedule::{acceptance_probability, temperature};

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dp::{extract_tree, improve_solution, DpCache, DpError, DpOptions, Solver, SteinerTree, StructuredSolution};
use crate::graph::{Apsp, Instance};
use crate::laminar::{
    initial_single_linkage, part_kmeans, random_full_binary, spr_neighbor, LaminarError, LaminarFamily,
    TerminalCoordinates,
};
use crate::par::{self, ExecMode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnnealError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("SA-Rect needs terminal coordinates")]
    MissingCoordinates,
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Laminar(#[from] LaminarError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    #[default]
    Sa,
    SaTest,
    SaRect,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Sa => "sa",
            Variant::SaTest => "sa-test",
            Variant::SaRect => "sa-rect",
        }
    }
}

/// Where `Sa` and `SaTest` start.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StartFamily {
    /// Single-linkage clustering of the terminal metric closure.
    #[default]
    SingleLinkage,
    /// A uniformly random full-binary family.
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealingConfig {
    pub iterations: usize,
    pub cooling_rate: f64,
    pub seed: u64,
    pub variant: Variant,
    /// Candidate clusterizations for `SaRect`.
    pub clusterizations: usize,
    pub replications: usize,
    pub start: StartFamily,
    pub dp: DpOptions,
    /// Fan-out for replications and clusterizations.
    pub exec: ExecMode,
    pub record_trace: bool,
}

impl Default for AnnealingConfig {
    fn default() -> Self {
        AnnealingConfig {
            iterations: 1000,
            cooling_rate: 0.95,
            seed: 0,
            variant: Variant::Sa,
            clusterizations: 50,
            replications: 10,
            start: StartFamily::SingleLinkage,
            dp: DpOptions::default(),
            exec: ExecMode::default(),
            record_trace: true,
        }
    }
}

impl AnnealingConfig {
    pub fn validate(&self) -> Result<(), AnnealError> {
        let bad = |msg: &str| Err(AnnealError::InvalidConfig(msg.to_string()));
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return bad("cooling rate must lie in (0, 1)");
        }
        if self.iterations == 0 {
            return bad("iterations must be positive");
        }
        if self.replications == 0 {
            return bad("replications must be positive");
        }
        if self.clusterizations == 0 {
            return bad("clusterizations must be positive");
        }
        Ok(())
    }
}

/// One iteration of the annealing loop.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub j: usize,
    pub temperature: f64,
    /// Cost of the candidate after the tester, if any.
    pub candidate_cost: f64,
    pub accepted: bool,
    pub improved_by_tester: bool,
    pub current_cost: f64,
    pub best_cost: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub variant: Variant,
    pub seed: u64,
    pub initial_family: LaminarFamily,
    pub initial_cost: f64,
    /// Best structured cost `z(r, K)` seen.
    pub best_cost: f64,
    pub best_family: LaminarFamily,
    pub best_solution: StructuredSolution,
    /// A Steiner tree inside the support of the best solution; its cost is
    /// at most `best_cost`.
    pub best_tree: SteinerTree,
    pub trace: Vec<TraceRecord>,
    pub iterations_run: usize,
    pub elapsed: Duration,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

impl RunResult {
    /// Cost of the returned Steiner tree.
    pub fn cost(&self) -> f64 {
        self.best_tree.cost
    }

    /// Wall time per annealing iteration, `None` when no iteration ran.
    pub fn avg_iter_ms(&self) -> Option<f64> {
        (self.iterations_run > 0).then(|| self.elapsed.as_secs_f64() * 1e3 / self.iterations_run as f64)
    }
}

/// Neighbor draws, acceptance draws, and everything else (binarization,
/// random starts, clusterizations) each get their own stream of one seed.
struct Streams {
    neighbor: ChaCha8Rng,
    accept: ChaCha8Rng,
    aux: ChaCha8Rng,
}

impl Streams {
    fn new(seed: u64) -> Self {
        let stream = |s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            rng
        };
        Streams {
            neighbor: stream(0),
            accept: stream(1),
            aux: stream(2),
        }
    }
}

fn start_family(
    instance: &Instance,
    apsp: &Apsp,
    start: StartFamily,
    aux: &mut ChaCha8Rng,
) -> LaminarFamily {
    let b = instance.commodity_count();
    match start {
        StartFamily::SingleLinkage => match initial_single_linkage(instance, apsp) {
            Ok(f) => f,
            // Some terminals are mutually unreachable in both directions;
            // clustering has nothing to say about them.
            Err(_) => random_full_binary(b, aux),
        },
        StartFamily::Random => random_full_binary(b, aux),
    }
}

fn anneal(
    solver: &Solver<'_>,
    initial: LaminarFamily,
    config: &AnnealingConfig,
    seed: u64,
    mut streams: Streams,
) -> Result<RunResult, AnnealError> {
    let tester = config.variant != Variant::Sa;
    let mut cache = DpCache::new();
    let mut current = solver.solve(&initial, Some(&mut cache))?;
    let t0 = current.structured_cost;
    let mut best = current.clone();
    let mut trace = Vec::new();
    let has_neighbors = initial.commodity_count() >= 3;
    let iterations = if has_neighbors { config.iterations } else { 0 };

    let started = Instant::now();
    for j in 1..=iterations {
        let t = temperature(t0, j, config.cooling_rate);
        let family = spr_neighbor(&current.family, &mut streams.neighbor)?;
        let mut candidate = solver.solve(&family, Some(&mut cache))?;
        let mut improved = false;
        if tester {
            let imp = improve_solution(&candidate, solver, &mut streams.aux, Some(&mut cache))?;
            if imp.improved {
                improved = true;
                candidate = imp.solution;
            }
        }
        let delta = candidate.structured_cost - current.structured_cost;
        let u: f64 = streams.accept.gen();
        let accepted = delta < 0.0 || u < acceptance_probability(delta, t);
        let candidate_cost = candidate.structured_cost;
        if accepted {
            current = candidate;
            if current.structured_cost < best.structured_cost {
                best = current.clone();
            }
        }
        if config.record_trace {
            trace.push(TraceRecord {
                j,
                temperature: t,
                candidate_cost,
                accepted,
                improved_by_tester: improved,
                current_cost: current.structured_cost,
                best_cost: best.structured_cost,
            });
        }
    }
    let elapsed = started.elapsed();

    let best_tree = extract_tree(&best.support, solver.instance())?;
    Ok(RunResult {
        variant: config.variant,
        seed,
        initial_family: initial,
        initial_cost: t0,
        best_cost: best.structured_cost,
        best_family: best.family.clone(),
        best_solution: best,
        best_tree,
        trace,
        iterations_run: iterations,
        elapsed,
        cache_hits: cache.hits(),
        cache_misses: cache.misses(),
    })
}

fn run_variant(
    solver: &Solver<'_>,
    coords: Option<&TerminalCoordinates>,
    config: &AnnealingConfig,
    seed: u64,
) -> Result<RunResult, AnnealError> {
    let instance = solver.instance();
    let mut streams = Streams::new(seed);
    let initial = match config.variant {
        Variant::Sa | Variant::SaTest => start_family(instance, solver.apsp(), config.start, &mut streams.aux),
        Variant::SaRect => {
            let coords = coords.ok_or(AnnealError::MissingCoordinates)?;
            if coords.len() != instance.commodity_count() {
                return Err(LaminarError::MissingCoordinates(coords.len()).into());
            }
            best_clusterization(solver, coords, config, &mut streams.aux)?
        }
    };
    anneal(solver, initial, config, seed, streams)
}

/// Solves `config.clusterizations` k-means families and keeps the cheapest
/// (lowest index on ties).
fn best_clusterization(
    solver: &Solver<'_>,
    coords: &TerminalCoordinates,
    config: &AnnealingConfig,
    aux: &mut ChaCha8Rng,
) -> Result<LaminarFamily, AnnealError> {
    let seeds: Vec<u64> = (0..config.clusterizations).map(|_| aux.gen()).collect();
    let scored = par::map_slice(config.exec, &seeds, |&s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let family = part_kmeans(coords, &mut rng);
        solver
            .solve(&family, None)
            .map(|sol| (sol.structured_cost, family))
    });
    let mut best: Option<(f64, LaminarFamily)> = None;
    for item in scored {
        let (cost, family) = item?;
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, family));
        }
    }
    Ok(best.expect("at least one clusterization").1)
}

/// Plain SA from the configured start family.
pub fn run_sa(instance: &Instance, apsp: &Apsp, config: &AnnealingConfig) -> Result<RunResult, AnnealError> {
    let config = AnnealingConfig {
        variant: Variant::Sa,
        ..config.clone()
    };
    run(instance, apsp, None, &config, config.seed)
}

/// SA with every candidate passed through the improvement routine.
pub fn run_sa_test(instance: &Instance, apsp: &Apsp, config: &AnnealingConfig) -> Result<RunResult, AnnealError> {
    let config = AnnealingConfig {
        variant: Variant::SaTest,
        ..config.clone()
    };
    run(instance, apsp, None, &config, config.seed)
}

/// SA with improvement, started from the best k-means clusterization.
pub fn run_sa_rect(
    instance: &Instance,
    apsp: &Apsp,
    coords: &TerminalCoordinates,
    config: &AnnealingConfig,
) -> Result<RunResult, AnnealError> {
    let config = AnnealingConfig {
        variant: Variant::SaRect,
        ..config.clone()
    };
    run(instance, apsp, Some(coords), &config, config.seed)
}

/// One run of `config.variant` with the given seed.
pub fn run(
    instance: &Instance,
    apsp: &Apsp,
    coords: Option<&TerminalCoordinates>,
    config: &AnnealingConfig,
    seed: u64,
) -> Result<RunResult, AnnealError> {
    config.validate()?;
    let solver = Solver::new(instance, apsp, config.dp);
    run_variant(&solver, coords, config, seed)
}

/// All replications of one configuration.
#[derive(Clone, Debug)]
pub struct Replicated {
    pub runs: Vec<RunResult>,
    /// Index of the cheapest tree, lowest index on ties.
    pub best_index: usize,
}

impl Replicated {
    pub fn best(&self) -> &RunResult {
        &self.runs[self.best_index]
    }

    pub fn into_best(mut self) -> RunResult {
        self.runs.swap_remove(self.best_index)
    }
}

/// Runs `config.replications` independent runs with seeds `seed, seed + 1,
/// ..` and keeps the cheapest.
pub fn replicate(
    instance: &Instance,
    apsp: &Apsp,
    coords: Option<&TerminalCoordinates>,
    config: &AnnealingConfig,
) -> Result<Replicated, AnnealError> {
    config.validate()?;
    let solver = Solver::new(instance, apsp, config.dp);
    let runs = par::map_indexed(config.exec, config.replications, |i| {
        run_variant(&solver, coords, config, config.seed.wrapping_add(i as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut best_index = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.cost() < runs[best_index].cost() {
            best_index = i;
        }
    }
    Ok(Replicated { runs, best_index })
}
