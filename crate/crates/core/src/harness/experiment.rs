use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Threads};
use super::record::{run_trial, TrialRecord};
use super::stats::{summarise, SummaryStats};
use crate::error::{Error, Result};
use crate::predict::asymptotic_bundle;
use crate::randmodel::{p_of, PFamily};
use crate::setcore::ENUMERATION_BUDGET;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRun {
    /// Ordered by `N` (as listed in the config), then by trial index.
    pub records: Vec<TrialRecord>,
    pub summary: SummaryStats,
    /// Set when a trial failed; `records` then holds every trial before it.
    pub aborted: Option<String>,
}

/// Runs `f` on a pool of the requested size.
pub fn with_threads<T: Send>(threads: Threads, f: impl FnOnce() -> T + Send) -> Result<T> {
    let n = match threads {
        Threads::Auto => 0,
        Threads::Count(n) => n.get(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Expected histogram work, in tuple operations, for the whole config.
pub fn estimate_pair_operations(config: &ExperimentConfig) -> f64 {
    let stats = &config.statistics;
    let mut per_trial_exponents = Vec::new();
    if stats.xk.is_some() {
        per_trial_exponents.push(2);
        per_trial_exponents.push(2);
        per_trial_exponents.extend(stats.forms.iter().map(|f| f.arity() as i32));
    } else if stats.y {
        per_trial_exponents.push(2);
    }
    config
        .n_list
        .iter()
        .map(|&n| {
            let size = p_of(&config.family, n).map(|p| p * (n + 1) as f64).unwrap_or(0.0);
            per_trial_exponents.iter().map(|&k| size.powi(k)).sum::<f64>()
        })
        .sum::<f64>()
        * config.trials as f64
}

/// Runs every trial of the config in parallel and summarises per `N`.
///
/// Output order and content do not depend on the thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentRun> {
    config.validate()?;
    let work = estimate_pair_operations(config);
    if work > ENUMERATION_BUDGET {
        return Err(Error::Resource(format!(
            "about {work:.3e} histogram tuple operations requested (budget 1e10); lower N, trials or xk/y/forms"
        )));
    }
    with_threads(config.threads, || run_all(config))?
}

fn run_all(config: &ExperimentConfig) -> Result<ExperimentRun> {
    let mut records = Vec::new();
    let mut summary = SummaryStats::default();
    for &n in &config.n_list {
        let p = p_of(&config.family, n)?;
        let results: Vec<Result<TrialRecord>> = (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, n, t))
            .collect();
        let mut batch = Vec::with_capacity(results.len());
        let mut failure = None;
        for (t, r) in results.into_iter().enumerate() {
            match r {
                Ok(rec) => batch.push(rec),
                Err(e) => {
                    failure = Some(format!("N = {n}, trial {t}: {e}"));
                    break;
                }
            }
        }
        let prediction = match config.family {
            PFamily::PowerLaw { .. } => asymptotic_bundle(n, &config.family, &config.statistics.forms, None).ok(),
            PFamily::ExplicitP { .. } => None,
        };
        summary.per_n.push(summarise(n, p, &batch, prediction));
        records.extend(batch);
        if failure.is_some() {
            return Ok(ExperimentRun {
                records,
                summary,
                aborted: failure,
            });
        }
    }
    Ok(ExperimentRun {
        records,
        summary,
        aborted: None,
    })
}
