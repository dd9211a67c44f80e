//! `steiner-anneal`: solve single instances, run benchmark manifests, and
//! turn result tables into performance profiles.

mod runner;

use std::fs::File;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use steiner_anneal::io::{format_number, read_results, write_results, write_solution, ResultRow};
use steiner_anneal::profile::{default_thresholds, performance_profile, write_profile};
use steiner_anneal::ExecMode;

use runner::{Algorithm, RootArg, RunSettings, Start};

#[derive(Parser)]
#[command(name = "steiner-anneal", version, about = "Directed Steiner tree heuristics on laminar structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one STP instance.
    Solve(SolveArgs),
    /// Run every listed instance with every requested algorithm.
    Bench(BenchArgs),
    /// Build a performance profile from a results CSV.
    Profile(ProfileArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Annealing iterations per replication.
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    /// Independent annealing runs; the cheapest tree is kept.
    #[arg(long, default_value_t = 10)]
    replications: usize,
    /// Seed of the first replication; replication i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Root when the file declares none: a 1-based node id, `auto` (first
    /// terminal) or `central` (needs coordinates).
    #[arg(long, default_value_t = RootArg::Auto)]
    root: RootArg,
    /// Starting family for sa and sa-test.
    #[arg(long, value_enum, default_value_t = Start::SingleLinkage)]
    start: Start,
    /// k-means clusterizations tried by sa-rect.
    #[arg(long, default_value_t = 50)]
    clusterizations: usize,
    /// Reduce baseline arc sets to Steiner trees.
    #[arg(long)]
    prune_baseline: bool,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl CommonArgs {
    fn settings(&self) -> RunSettings {
        RunSettings {
            iterations: self.iterations,
            replications: self.replications,
            seed: self.seed,
            root: self.root,
            start: self.start,
            clusterizations: self.clusterizations,
            prune_baseline: self.prune_baseline,
            exec: if self.sequential {
                ExecMode::Sequential
            } else {
                ExecMode::Parallel
            },
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Known optimum, for the gap.
    #[arg(long)]
    opt: Option<f64>,
    /// Where to write the tree arcs.
    #[arg(long)]
    solution_out: Option<PathBuf>,
    /// Results CSV; the row is appended if the file exists.
    #[arg(long)]
    csv_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// CSV of `path,opt` lines; relative paths are taken from the
    /// manifest's directory.
    #[arg(long)]
    manifest: PathBuf,
    /// Repeat for several algorithms.
    #[arg(long = "algorithm", value_enum, required = true)]
    algorithms: Vec<Algorithm>,
    /// Results CSV; rows are appended if the file exists.
    #[arg(long)]
    csv_out: PathBuf,
    /// Instances solved at once.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated gap thresholds in percent.
    #[arg(long, value_delimiter = ',')]
    thresholds: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Profile(args) => cmd_profile(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn append_rows(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut all = if path.exists() && std::fs::metadata(path)?.len() > 0 {
        read_results(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        Vec::new()
    };
    all.extend_from_slice(rows);
    write_results(&all, path).with_context(|| format!("writing {}", path.display()))
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let settings = args.common.settings();
    let label = args.input.display().to_string();
    let outcome = runner::run(&args.input, &label, args.algorithm, &settings, args.opt)?;
    let row = &outcome.row;
    println!("cost {}", format_number(row.cost.expect("successful run has a cost")));
    if let Some(gap) = row.gap_percent() {
        println!("gap {}", format_number(gap));
    }
    if let Some(path) = &args.solution_out {
        std::fs::write(path, write_solution(&outcome.loaded.instance, &outcome.arcs))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.csv_out {
        append_rows(path, std::slice::from_ref(row))?;
    }
    Ok(ExitCode::SUCCESS)
}

struct Entry {
    label: String,
    path: PathBuf,
    opt: Option<f64>,
}

fn read_manifest(path: &Path) -> Result<Vec<Entry>> {
    let base = path.parent().unwrap_or(Path::new("."));
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut entries = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let label = rec.get(0).unwrap_or("");
        if label.is_empty() || (i == 0 && label == "path") {
            continue;
        }
        let opt = match rec.get(1).unwrap_or("") {
            "" => None,
            s => Some(
                s.parse::<f64>()
                    .with_context(|| format!("manifest line {}: bad optimum {s:?}", i + 1))?,
            ),
        };
        entries.push(Entry {
            label: label.to_string(),
            path: base.join(label),
            opt,
        });
    }
    Ok(entries)
}

#[cfg(feature = "parallel")]
fn run_jobs<T: Sync, U: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Result<Vec<U>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_jobs<T: Sync, U: Send>(_jobs: usize, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Result<Vec<U>> {
    Ok(items.iter().map(f).collect())
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    if args.jobs == 0 {
        bail!("--jobs must be positive");
    }
    let settings = args.common.settings();
    let entries = read_manifest(&args.manifest)?;
    let pairs: Vec<(&Entry, Algorithm)> = entries
        .iter()
        .flat_map(|e| args.algorithms.iter().map(move |&a| (e, a)))
        .collect();
    let rows = run_jobs(args.jobs, &pairs, |&(entry, algorithm)| {
        match runner::run(&entry.path, &entry.label, algorithm, &settings, entry.opt) {
            Ok(outcome) => outcome.row,
            Err(e) => {
                let mut row = runner::empty_row(&entry.label, algorithm, &settings, entry.opt);
                row.status = format!("error: {e:#}");
                row
            }
        }
    })?;
    for row in &rows {
        match row.cost {
            Some(c) => eprintln!("{} {}: {}", row.instance, row.algorithm, format_number(c)),
            None => eprintln!("{} {}: {}", row.instance, row.algorithm, row.status),
        }
    }
    append_rows(&args.csv_out, &rows)?;
    if rows.iter().any(ResultRow::is_ok) {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: no instance was solved");
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_profile(args: ProfileArgs) -> Result<ExitCode> {
    let rows = read_results(&args.csv).with_context(|| format!("reading {}", args.csv.display()))?;
    let thresholds = args.thresholds.unwrap_or_else(default_thresholds);
    let points = performance_profile(&rows, &thresholds)?;
    let file = File::create(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    write_profile(&points, file)?;
    Ok(ExitCode::SUCCESS)
}
