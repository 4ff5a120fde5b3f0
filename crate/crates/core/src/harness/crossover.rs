use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::Threads;
use super::experiment::with_threads;
use super::record::trial_key;
use crate::error::{Error, Result};
use crate::randmodel::sample;
use crate::setcore::{form_image, LinearForm};
use crate::threshold::{classify_pair, PairCase};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverPoint {
    pub c: f64,
    pub p: f64,
    pub trials: u64,
    /// Trials with `|f(A)| > |g(A)|`.
    pub wins: u64,
    /// Trials with `|f(A)| = |g(A)|`.
    pub ties: u64,
    /// `(wins + ties / 2) / trials`
    pub frequency: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrossoverEstimate {
    Crossing { c: f64 },
    /// No pair of neighbouring grid points straddles 1/2.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub f: LinearForm,
    pub g: LinearForm,
    pub n: u64,
    pub points: Vec<CrossoverPoint>,
    pub estimate: CrossoverEstimate,
}

/// Estimates, for each `c` in the grid, how often `f` beats `g` at
/// `p = c N^(-1/2)`, and where that frequency crosses 1/2.
///
/// Ties count one half. Grid point `i` uses trial indices
/// `i * trials .. (i + 1) * trials`, so every point sees fresh sets.
pub fn empirical_crossover(
    f: &LinearForm,
    g: &LinearForm,
    n: u64,
    c_grid: &[f64],
    trials: u64,
    seed: u64,
    threads: Threads,
) -> Result<CrossoverReport> {
    let report = classify_pair(f, g)?;
    if report.case != PairCase::CaseII {
        return Err(Error::Usage(format!("{f} vs {g} is {}, not case-ii", report.case)));
    }
    if trials == 0 || c_grid.is_empty() {
        return Err(Error::Parameter("need at least one trial and one grid point".into()));
    }
    let mut grid = c_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let sqrt_n = (n as f64).sqrt();
    let mut points = Vec::with_capacity(grid.len());
    for (i, &c) in grid.iter().enumerate() {
        let p = c / sqrt_n;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Parameter(format!("c = {c} gives p = {p} outside (0, 1)")));
        }
        let base = i as u64 * trials;
        let outcomes: Vec<Result<std::cmp::Ordering>> = with_threads(threads, || {
            (0..trials)
                .into_par_iter()
                .map(|t| {
                    let a = sample(n, p, trial_key(seed, n, base + t))?;
                    Ok(form_image(&a, f)?.len().cmp(&form_image(&a, g)?.len()))
                })
                .collect()
        })?;
        let (mut wins, mut ties) = (0u64, 0u64);
        for o in outcomes {
            match o? {
                std::cmp::Ordering::Greater => wins += 1,
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Less => {}
            }
        }
        let frequency = (wins as f64 + 0.5 * ties as f64) / trials as f64;
        points.push(CrossoverPoint {
            c,
            p,
            trials,
            wins,
            ties,
            frequency,
            std_error: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        });
    }
    let estimate = locate_crossing(&points);
    Ok(CrossoverReport {
        f: f.clone(),
        g: g.clone(),
        n,
        points,
        estimate,
    })
}

/// First neighbouring pair whose frequencies straddle 1/2, interpolated
/// linearly in `c`.
pub fn locate_crossing(points: &[CrossoverPoint]) -> CrossoverEstimate {
    for w in points.windows(2) {
        let (a, b) = (w[0].frequency - 0.5, w[1].frequency - 0.5);
        if a == 0.0 {
            return CrossoverEstimate::Crossing { c: w[0].c };
        }
        if a * b < 0.0 || b == 0.0 {
            let t = a / (a - b);
            return CrossoverEstimate::Crossing {
                c: w[0].c + t * (w[1].c - w[0].c),
            };
        }
    }
    CrossoverEstimate::Inconclusive {
        reason: "domination frequency does not cross 1/2 on the grid".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(c: f64, frequency: f64) -> CrossoverPoint {
        CrossoverPoint {
            c,
            p: 0.0,
            trials: 1,
            wins: 0,
            ties: 0,
            frequency,
            std_error: 0.0,
        }
    }

    #[test]
    fn interpolation() {
        let pts = [point(1.0, 0.2), point(2.0, 0.4), point(3.0, 0.8)];
        assert_eq!(locate_crossing(&pts), CrossoverEstimate::Crossing { c: 2.25 });
        let flat = [point(1.0, 0.2), point(2.0, 0.3)];
        assert!(matches!(locate_crossing(&flat), CrossoverEstimate::Inconclusive { .. }));
        let down = [point(1.0, 0.9), point(2.0, 0.1)];
        assert_eq!(locate_crossing(&down), CrossoverEstimate::Crossing { c: 1.5 });
    }

    #[test]
    fn requires_case_ii() {
        let f = LinearForm::binary(2, -1).unwrap();
        let g = LinearForm::difference();
        assert!(matches!(
            empirical_crossover(&f, &g, 1000, &[1.0], 1, 0, Threads::Auto),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn small_run_is_deterministic() {
        let f = LinearForm::binary(4, -3).unwrap();
        let g = LinearForm::binary(5, -1).unwrap();
        let a = empirical_crossover(&f, &g, 20_000, &[0.5, 4.0], 20, 9, Threads::Auto).unwrap();
        let b = empirical_crossover(&f, &g, 20_000, &[4.0, 0.5], 20, 9, Threads::Auto).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points.len(), 2);
    }
}
