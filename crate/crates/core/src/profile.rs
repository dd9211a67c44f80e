//! Performance profiles: for each algorithm, the share of instances solved
//! within a given optimality gap.

use std::io::Write;

use thiserror::Error;

use crate::io::{format_number, ResultRow};

/// Gaps are compared against thresholds with this slack, so that a gap
/// printed as `1.5` counts at threshold `1.5`.
const GAP_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("no result row has a known optimum")]
    NoKnownOptima,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint {
    pub algorithm: String,
    /// Gap threshold in percent.
    pub threshold: f64,
    /// Share of instances with gap at most `threshold`.
    pub fraction: f64,
}

/// `0, 0.25, .., 5.0`.
pub fn default_thresholds() -> Vec<f64> {
    (0..=20).map(|i| i as f64 * 0.25).collect()
}

/// One point per (algorithm, threshold), algorithms in order of first
/// appearance. Rows without a known optimum are skipped; failed rows with a
/// known optimum count as never within any threshold.
pub fn performance_profile(rows: &[ResultRow], thresholds: &[f64]) -> Result<Vec<ProfilePoint>, ProfileError> {
    let mut algorithms: Vec<&str> = Vec::new();
    let mut gaps: Vec<Vec<Option<f64>>> = Vec::new();
    for row in rows.iter().filter(|r| r.opt.is_some()) {
        let idx = match algorithms.iter().position(|&a| a == row.algorithm) {
            Some(i) => i,
            None => {
                algorithms.push(&row.algorithm);
                gaps.push(Vec::new());
                algorithms.len() - 1
            }
        };
        let gap = if row.is_ok() { row.gap_percent() } else { None };
        gaps[idx].push(gap);
    }
    if algorithms.is_empty() {
        return Err(ProfileError::NoKnownOptima);
    }
    let mut points = Vec::with_capacity(algorithms.len() * thresholds.len());
    for (alg, gs) in algorithms.iter().zip(&gaps) {
        for &t in thresholds {
            let within = gs.iter().filter(|g| g.is_some_and(|g| g <= t + GAP_EPS)).count();
            points.push(ProfilePoint {
                algorithm: alg.to_string(),
                threshold: t,
                fraction: within as f64 / gs.len() as f64,
            });
        }
    }
    Ok(points)
}

/// Long-format CSV `algorithm,threshold,fraction`.
pub fn write_profile<W: Write>(points: &[ProfilePoint], writer: W) -> Result<(), ProfileError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["algorithm", "threshold", "fraction"])?;
    for p in points {
        w.write_record([p.algorithm.clone(), format_number(p.threshold), format_number(p.fraction)])?;
    }
    w.flush()?;
    Ok(())
}
