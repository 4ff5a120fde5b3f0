use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Statistics, Threads};
use super::experiment::run_experiment;
use crate::bounds::{bound_report, BoundReport};
use crate::error::{Error, Result};
use crate::randmodel::PFamily;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureRate {
    pub failures: u64,
    pub trials: u64,
    pub rate: f64,
    /// Theoretical bound on the failure probability.
    pub bound: f64,
    /// `rate > bound + 4 sqrt(bound (1 - bound) / trials)`
    pub violation: bool,
}

impl FailureRate {
    fn new(failures: u64, trials: u64, bound: f64) -> Self {
        let rate = failures as f64 / trials as f64;
        let b = bound.clamp(0.0, 1.0);
        let se = (b * (1.0 - b) / trials as f64).sqrt();
        Self {
            failures,
            trials,
            rate,
            bound,
            violation: rate > bound + 4.0 * se,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub report: BoundReport,
    /// `|A|` outside the cardinality interval, against `P1`.
    pub cardinality: FailureRate,
    /// `Y` above its threshold, against `P2`.
    pub collisions: FailureRate,
}

impl VerifyReport {
    pub fn any_violation(&self) -> bool {
        self.cardinality.violation || self.collisions.violation
    }
}

/// Samples `trials` sets at `p = c N^(-delta)` and compares how often each
/// explicit sub-event fails with its theoretical bound.
pub fn verify_bounds(
    c: f64,
    delta: f64,
    g_exp: f64,
    n: u64,
    trials: u64,
    seed: u64,
    threads: Threads,
) -> Result<VerifyReport> {
    let report = bound_report(c, delta, g_exp, n)?;
    let config = ExperimentConfig {
        n_list: vec![n],
        family: PFamily::power_law(c, delta),
        trials,
        seed,
        statistics: Statistics {
            sizes: false,
            missing: false,
            xk: None,
            forms: Vec::new(),
            y: true,
        },
        output: super::config::OutputFormat::Csv,
        threads,
    };
    let run = run_experiment(&config)?;
    if let Some(reason) = run.aborted {
        return Err(Error::Resource(reason));
    }
    let (lo, hi) = report.card_interval;
    let card_fail = run
        .records
        .iter()
        .filter(|r| (r.set_size as f64) < lo || (r.set_size as f64) > hi)
        .count() as u64;
    let y_fail = run
        .records
        .iter()
        .filter(|r| r.y.expect("y requested") as f64 > report.y_threshold)
        .count() as u64;
    Ok(VerifyReport {
        cardinality: FailureRate::new(card_fail, trials, report.p1),
        collisions: FailureRate::new(y_fail, trials, report.p2),
        report,
    })
}
