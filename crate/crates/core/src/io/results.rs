use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

pub const RESULTS_HEADER: [&str; 12] = [
    "instance",
    "algorithm",
    "iterations",
    "replications",
    "seed",
    "cost",
    "opt",
    "gap_percent",
    "iters_run",
    "avg_iter_ms",
    "root",
    "status",
];

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    BadHeader(Vec<String>),
    #[error("record {record}: bad {column} value {value:?}")]
    BadField {
        record: usize,
        column: &'static str,
        value: String,
    },
}

/// One line of the results CSV. `status` is `ok` or an error description.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub instance: String,
    pub algorithm: String,
    pub iterations: Option<usize>,
    pub replications: Option<usize>,
    pub seed: Option<u64>,
    pub cost: Option<f64>,
    pub opt: Option<f64>,
    pub iters_run: Option<usize>,
    pub avg_iter_ms: Option<f64>,
    pub root: String,
    pub status: String,
}

impl ResultRow {
    /// `100 (cost - opt) / opt` when both are known.
    pub fn gap_percent(&self) -> Option<f64> {
        match (self.cost, self.opt) {
            (Some(c), Some(o)) => Some(100.0 * (c - o) / o),
            _ => None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Shortest decimal that reads back to the same value; `0` for zero.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

fn opt_field<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn num_field(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

/// Writes the header and `rows` in order.
pub fn write_results_to<W: Write>(rows: &[ResultRow], writer: W) -> Result<(), ResultsError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RESULTS_HEADER)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.algorithm.clone(),
            opt_field(r.iterations),
            opt_field(r.replications),
            opt_field(r.seed),
            num_field(r.cost),
            num_field(r.opt),
            num_field(r.gap_percent()),
            opt_field(r.iters_run),
            num_field(r.avg_iter_ms),
            r.root.clone(),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_results(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<(), ResultsError> {
    write_results_to(rows, File::create(path)?)
}

fn parse_opt<T: std::str::FromStr>(record: usize, column: &'static str, value: &str) -> Result<Option<T>, ResultsError> {
    if value.is_empty() {
        return Ok(None);
    }
    value.parse().map(Some).map_err(|_| ResultsError::BadField {
        record,
        column,
        value: value.to_string(),
    })
}

pub fn read_results_from<R: Read>(reader: R) -> Result<Vec<ResultRow>, ResultsError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != RESULTS_HEADER {
        return Err(ResultsError::BadHeader(header));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let f = |c: usize| rec.get(c).unwrap_or("");
        rows.push(ResultRow {
            instance: f(0).to_string(),
            algorithm: f(1).to_string(),
            iterations: parse_opt(i + 1, "iterations", f(2))?,
            replications: parse_opt(i + 1, "replications", f(3))?,
            seed: parse_opt(i + 1, "seed", f(4))?,
            cost: parse_opt(i + 1, "cost", f(5))?,
            opt: parse_opt(i + 1, "opt", f(6))?,
            iters_run: parse_opt(i + 1, "iters_run", f(8))?,
            avg_iter_ms: parse_opt(i + 1, "avg_iter_ms", f(9))?,
            root: f(10).to_string(),
            status: f(11).to_string(),
        });
    }
    Ok(rows)
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRow>, ResultsError> {
    read_results_from(File::open(path)?)
}
