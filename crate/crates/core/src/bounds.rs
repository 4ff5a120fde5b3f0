//! Explicit finite-`N` bounds behind "`|A-A| / |A+A| = 2 + O(N^(-g))` with
//! probability at least `1 - P1 - P2`" for `p = c N^(-delta)`, `1/2 < delta < 1`.
//!
//! Two sub-events carry explicit constants: `|A|` lands in
//! `[c N^(1-delta) / 2, 3 c N^(1-delta) / 2]` except with probability `P1`,
//! and the number `Y` of same-difference collisions stays below a threshold
//! except with probability `P2` (Chebyshev on `Y`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub c: f64,
    pub delta: f64,
    pub n: u64,
    /// `max(1, c)`
    pub big_c: f64,
    /// `min(1/2, (3 delta - 1) / 2)`
    pub f_delta: f64,
    /// Exponent of the ratio deviation.
    pub g_exp: f64,
    /// `max(3 - 4 delta, 5 - 7 delta) / 2`
    pub r_delta: f64,
    pub p1: f64,
    pub p2: f64,
    pub card_interval: (f64, f64),
    /// Upper bound on `E[Y]`: `2 C^4 N^(3 - 4 delta)`.
    pub ey_bound: f64,
    /// Upper bound on the standard deviation of `Y`: `7 C^4 N^r`.
    pub sigma_y_bound: f64,
    pub y_threshold: f64,
}

pub fn f_delta(delta: f64) -> f64 {
    (0.5f64).min((3.0 * delta - 1.0) / 2.0)
}

pub fn r_delta(delta: f64) -> f64 {
    (3.0 - 4.0 * delta).max(5.0 - 7.0 * delta) / 2.0
}

fn check_model(c: f64, delta: f64, n: u64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Parameter(format!("c must be positive, got {c}")));
    }
    if !(delta > 0.5 && delta < 1.0) {
        return Err(Error::Parameter(format!("delta must lie in (1/2, 1), got {delta}")));
    }
    if n == 0 {
        return Err(Error::Parameter("N must be positive".into()));
    }
    Ok(())
}

fn base_report(c: f64, delta: f64, g_exp: f64, n: u64) -> BoundReport {
    let nf = n as f64;
    let big_c = c.max(1.0);
    let c4 = big_c.powi(4);
    let r = r_delta(delta);
    let f = f_delta(delta);
    let mean_size = c * nf.powf(1.0 - delta);
    BoundReport {
        c,
        delta,
        n,
        big_c,
        f_delta: f,
        g_exp,
        r_delta: r,
        p1: 4.0 / c * nf.powf(-(1.0 - delta)),
        p2: nf.powf(-(f - g_exp)),
        card_interval: (0.5 * mean_size, 1.5 * mean_size),
        ey_bound: 2.0 * c4 * nf.powf(3.0 - 4.0 * delta),
        sigma_y_bound: 7.0 * c4 * nf.powf(r),
        y_threshold: 9.0 * c4 * nf.powf(2.0 - 2.0 * delta - g_exp),
    }
}

/// All explicit quantities for `p = c N^(-delta)` and a chosen deviation
/// exponent `0 < g_exp < f(delta)`.
pub fn bound_report(c: f64, delta: f64, g_exp: f64, n: u64) -> Result<BoundReport> {
    check_model(c, delta, n)?;
    let f = f_delta(delta);
    if !(g_exp > 0.0 && g_exp < f) {
        return Err(Error::Parameter(format!(
            "g_exp must lie in (0, f(delta) = {f}), got {g_exp}"
        )));
    }
    Ok(base_report(c, delta, g_exp, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioClaim {
    pub ratio_center: f64,
    /// `N^(-g_exp)`; the implied constant depends on `C` and is not explicit.
    pub deviation_order: f64,
    /// `P1 + P2`
    pub failure_prob_bound: f64,
}

pub fn ratio_claim(report: &BoundReport) -> RatioClaim {
    RatioClaim {
        ratio_center: 2.0,
        deviation_order: (report.n as f64).powf(-report.g_exp),
        failure_prob_bound: report.p1 + report.p2,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AltBound {
    Report(BoundReport),
    /// `6 - 8 delta - 2 r(delta) <= 0`: the probability bound is vacuous.
    Trivial { note: String },
}

/// Tighter ratio, weaker probability: Chebyshev with `k = N^(3 - 4 delta - r)`
/// gives `P2 = N^(-(6 - 8 delta - 2r))`, `Y <= 9 C^4 N^(3 - 4 delta)` and a
/// ratio deviation of order `N^(-(2 delta - 1))`. Non-trivial for
/// `delta < 3/4` only.
pub fn alt_parameterization(c: f64, delta: f64, n: u64) -> Result<AltBound> {
    check_model(c, delta, n)?;
    if delta >= 0.75 {
        let mut note = String::from("delta >= 3/4: the probability bound is trivial");
        if delta > 0.75 {
            note.push_str("; A is almost surely a Sidon set, so the ratio is about 2 trivially");
        }
        return Ok(AltBound::Trivial { note });
    }
    let nf = n as f64;
    let mut report = base_report(c, delta, 2.0 * delta - 1.0, n);
    report.p2 = nf.powf(-(6.0 - 8.0 * delta - 2.0 * report.r_delta));
    report.y_threshold = 9.0 * report.big_c.powi(4) * nf.powf(3.0 - 4.0 * delta);
    Ok(AltBound::Report(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn exponents() {
        assert!(close(f_delta(0.6), 0.4, 1e-15));
        assert!(close(r_delta(0.6), 0.4, 1e-15));
        let d = 2.0 / 3.0;
        assert!(close(3.0 - 4.0 * d, 5.0 - 7.0 * d, 1e-15));
        assert!(close(f_delta(0.5 + 1e-9), 0.25, 1e-8));
        assert_eq!(f_delta(0.9), 0.5);
    }

    #[test]
    fn report_values() {
        let r = bound_report(1.0, 0.6, 0.2, 10_000).unwrap();
        assert!(close(r.p1, 4.0 * 10f64.powf(-1.6), 1e-15));
        assert!(close(r.p1, 0.1005, 1e-4));
        assert!(r.card_interval.0 < r.card_interval.1);
        assert!(close(r.card_interval.0, 0.5 * 10f64.powf(1.6), 1e-12));
        assert!(close(r.y_threshold, 9.0 * 10f64.powf(4.0 * 0.6), 1e-9));
        let claim = ratio_claim(&bound_report(1.0, 0.6, 0.2, 1_000_000).unwrap());
        assert!(close(claim.failure_prob_bound, 0.0790, 1e-4));
        assert_eq!(claim.ratio_center, 2.0);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(bound_report(1.0, 0.8, 0.6, 100), Err(Error::Parameter(_))));
        assert!(bound_report(1.0, 0.8, 0.3, 100).is_ok());
        assert!(bound_report(1.0, 0.6, 0.0, 100).is_err());
        assert!(bound_report(1.0, 0.4, 0.1, 100).is_err());
        assert!(bound_report(0.0, 0.6, 0.1, 100).is_err());
    }

    #[test]
    fn p2_trivialises_at_f() {
        let r = bound_report(1.0, 0.6, 0.4 - 1e-12, 1_000_000).unwrap();
        assert!(close(r.p2, 1.0, 1e-9));
    }

    #[test]
    fn probabilities_decrease_in_n() {
        for (c, delta, g) in [(1.0, 0.6, 0.2), (2.5, 0.55, 0.1), (0.5, 0.9, 0.45)] {
            let mut prev = bound_report(c, delta, g, 10).unwrap();
            for n in [100u64, 1_000, 10_000, 1_000_000] {
                let r = bound_report(c, delta, g, n).unwrap();
                assert!(r.p1 < prev.p1 && r.p2 < prev.p2);
                prev = r;
            }
        }
    }

    #[test]
    fn alternative() {
        match alt_parameterization(1.0, 0.6, 1_000_000).unwrap() {
            AltBound::Report(r) => {
                assert!(close(r.p2, 1e-6f64.powf(0.4), 1e-12));
                assert!(close(r.g_exp, 0.2, 1e-15));
            }
            other => panic!("{other:?}"),
        }
        match alt_parameterization(1.0, 0.75, 1000).unwrap() {
            AltBound::Trivial { note } => assert!(!note.contains("Sidon")),
            other => panic!("{other:?}"),
        }
        match alt_parameterization(1.0, 0.8, 1000).unwrap() {
            AltBound::Trivial { note } => assert!(note.contains("Sidon")),
            other => panic!("{other:?}"),
        }
    }
}
