//! Closed-form expectations, asymptotic sizes and bounds for the binomial model.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::randmodel::{p_of, PFamily};
use crate::setcore::{FormKind, HistKind, LinearForm};

/// Below this argument `g` and `g_{u,v}` are summed from their power series.
pub const SERIES_CUTOFF: f64 = 0.1;
/// Number of series terms used below [`SERIES_CUTOFF`].
pub const SERIES_TERMS: u32 = 12;

/// Where `p(N)` sits relative to the threshold `N^(-1/k)` (`k = 2` for the
/// sum and difference sets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `p = o(N^(-1/k))`
    Below,
    /// `p = c N^(-1/k)`
    At,
    /// `N^(-1/k) = o(p)`
    Above,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Below => "below (i)",
            Regime::At => "at (ii)",
            Regime::Above => "above (iii)",
        })
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "below" | "i" => Ok(Regime::Below),
            "at" | "ii" => Ok(Regime::At),
            "above" | "iii" => Ok(Regime::Above),
            other => Err(Error::Usage(format!("unknown regime {other:?} (below|at|above)"))),
        }
    }
}

/// Regime of a power-law family `c N^(-delta)` against the threshold exponent
/// `1/k`. `None` for explicit-p families, whose asymptotic class cannot be read
/// off a single value.
pub fn regime_of(family: &PFamily, k: usize) -> Option<Regime> {
    let delta = family.delta()?;
    // delta * k == 1 decides "at"; the tolerance only absorbs the rounding of 1/k
    let scaled = delta * k as f64;
    Some(if (scaled - 1.0).abs() <= 1e-12 {
        Regime::At
    } else if scaled > 1.0 {
        Regime::Below
    } else {
        Regime::Above
    })
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Signed coefficient of `x^j` (`j >= 1`) in the power series of `g_{u,v}`:
/// `(-1)^(j+1) (2|v|/(j+1)! + (u-|v|)/j!)`.
pub(crate) fn g_form_coefficient(u: f64, absv: f64, j: u32) -> f64 {
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * (2.0 * absv / factorial(j + 1) + (u - absv) / factorial(j))
}

fn g_form_series(u: f64, absv: f64, x: f64, terms: u32) -> f64 {
    // Horner from the highest term down
    (1..=terms)
        .rev()
        .fold(0.0, |acc, j| (acc + g_form_coefficient(u, absv, j)) * x)
}

/// `g(x) = 2 (e^(-x) - (1 - x)) / x`, the limiting `|A+A|/N` profile.
pub fn g_ratio(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("g needs x > 0, got {x}")));
    }
    Ok(g_stable(1.0, 1.0, x))
}

/// Partial sum `2 sum_{k=1}^{m} (-1)^(k-1) x^k / (k+1)!`.
pub fn series_partial_g(x: f64, m: u32) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..=m {
        term *= x;
        let signed = if k % 2 == 1 { term } else { -term };
        sum += 2.0 * signed / factorial(k + 1);
    }
    sum
}

fn g_stable(u: f64, absv: f64, x: f64) -> f64 {
    if x < SERIES_CUTOFF {
        return g_form_series(u, absv, x, SERIES_TERMS);
    }
    // both terms non-negative; expm1 keeps x + e^(-x) - 1 accurate
    let em1 = (-x).exp_m1();
    2.0 * absv * (x + em1) / x - (u - absv) * em1
}

/// `g_{u,v}(x) = (u+|v|) - 2|v| (1 - e^(-x))/x - (u-|v|) e^(-x)`.
pub fn g_form(u: i64, absv: i64, x: f64) -> Result<f64> {
    if absv < 1 || u < absv {
        return Err(Error::Domain(format!("g_{{u,v}} needs u >= |v| >= 1, got u={u}, |v|={absv}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("g_{{u,v}} needs x > 0, got {x}")));
    }
    Ok(g_stable(u as f64, absv as f64, x))
}

/// `alpha(u, v) = (3u - |v|) / (6 u^2)`, exact.
pub fn alpha(u: i64, absv: i64) -> Ratio<i64> {
    Ratio::new(3 * u - absv, 6 * u * u)
}

/// Leading-order `E[X_k]` (sum), `E[X'_k]` (diff) or `E[X'_{k,f}]` (form).
///
/// For a binary form `ux + vy` the ordered-solution count gives
/// `(2|v|/(k+1)! + (u-|v|)/k!) u^(-k) p^(2k) N^(k+1)`.
pub fn expected_tuple_count(n: u64, p: f64, k: u32, kind: HistKind, form: Option<&LinearForm>) -> Result<f64> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let nf = n as f64;
    let base = p.powi(2 * k as i32) * nf.powi(k as i32 + 1);
    let coeff = match kind {
        HistKind::Sum => 2.0 / factorial(k + 1) * 0.5f64.powi(k as i32),
        HistKind::Diff => 2.0 / factorial(k + 1),
        HistKind::Form => {
            let form = form.ok_or_else(|| Error::Usage("form kind requires a linear form".into()))?;
            let (u, absv) = form
                .u_absv()
                .ok_or_else(|| Error::Validation(format!("{form} is not a binary form")))?;
            let (u, absv) = (u as f64, absv as f64);
            (2.0 * absv / factorial(k + 1) + (u - absv) / factorial(k)) / u.powi(k as i32)
        }
    };
    Ok(coeff * base)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormPrediction {
    pub form: LinearForm,
    /// Predicted `|f(A)|`; absent where no formula is known.
    pub df_pred: Option<f64>,
    /// Predicted `(sum |u_i|) N + 1 - |f(A)|`.
    pub dfc_pred: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionBundle {
    pub regime: Regime,
    pub n: u64,
    pub p: f64,
    /// `p sqrt(N)`, reported in the critical regime.
    pub c: Option<f64>,
    pub s_pred: f64,
    pub d_pred: f64,
    pub sc_pred: f64,
    pub dc_pred: f64,
    pub forms: Vec<FormPrediction>,
}

/// Asymptotic sizes of `A+A`, `A-A` and each `f(A)` at `N`.
///
/// Power-law families determine their regime from `delta`; explicit-p
/// families must pass `declared`.
pub fn asymptotic_bundle(
    n: u64,
    family: &PFamily,
    forms: &[LinearForm],
    declared: Option<Regime>,
) -> Result<PredictionBundle> {
    let p = p_of(family, n)?;
    let regime = match (regime_of(family, 2), declared) {
        (Some(r), Some(d)) if r != d => {
            return Err(Error::Usage(format!("declared regime {d} contradicts the family's regime {r}")))
        }
        (Some(r), _) => r,
        (None, Some(d)) => d,
        (None, None) => {
            return Err(Error::Usage(
                "explicit p needs a declared regime (below|at|above)".into(),
            ))
        }
    };
    let nf = n as f64;
    let possible = 2.0 * nf + 1.0;
    let np = nf * p;
    let c = (regime == Regime::At).then(|| p * nf.sqrt());
    let (s_pred, d_pred, sc_pred, dc_pred) = match regime {
        Regime::Below => (np * np / 2.0, np * np, possible - np * np / 2.0, possible - np * np),
        Regime::At => {
            let c2 = c.unwrap() * c.unwrap();
            let s = g_ratio(c2 / 2.0)? * nf;
            let d = g_ratio(c2)? * nf;
            (s, d, possible - s, possible - d)
        }
        Regime::Above => {
            let sc = 4.0 / (p * p);
            let dc = 2.0 / (p * p);
            (possible - sc, possible - dc, sc, dc)
        }
    };
    let mut form_preds = Vec::with_capacity(forms.len());
    for form in forms {
        let span = form.span_count(n) as f64;
        let (df, dfc) = match form.kind() {
            FormKind::BinarySum => (Some(s_pred), Some(sc_pred)),
            FormKind::BinaryDifference => {
                let (u, absv) = form.u_absv().unwrap();
                match regime {
                    Regime::Below => (Some(np * np), Some(span - np * np)),
                    Regime::At => {
                        let c2 = c.unwrap() * c.unwrap();
                        let df = g_form(u, absv, c2 / u as f64)? * nf;
                        (Some(df), Some(span - df))
                    }
                    Regime::Above => {
                        let dfc = 2.0 * (u * absv) as f64 / (p * p);
                        (Some(span - dfc), Some(dfc))
                    }
                }
            }
            FormKind::KAry => match family {
                PFamily::PowerLaw { .. } => match conjecture_prediction(form, n, family, None)? {
                    ConjecturePrediction::ImageSize(v) => (Some(v), Some(span - v)),
                    ConjecturePrediction::MissingCount(v) => (Some(span - v), Some(v)),
                    ConjecturePrediction::NotComputable => (None, None),
                },
                PFamily::ExplicitP { .. } => (None, None),
            },
        };
        form_preds.push(FormPrediction {
            form: form.clone(),
            df_pred: df,
            dfc_pred: dfc,
        });
    }
    Ok(PredictionBundle {
        regime,
        n,
        p,
        c,
        s_pred,
        d_pred,
        sc_pred,
        dc_pred,
        forms: form_preds,
    })
}

/// Exact `E[(2N+1) - |A+A|]`.
///
/// The representations of a fixed `n` as a sum use disjoint pairs of
/// elements, so `P(n not in A+A)` factorises:
/// `(1-p^2)^(n/2) (1-p)` for even `n <= N`, `(1-p^2)^((n+1)/2)` for odd `n`,
/// mirrored through `n -> 2N - n`.
pub fn exact_missing_sums_expectation(n: u64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!("p = {p} is not in (0, 1)")));
    }
    let log_q = (-p * p).ln_1p();
    let one_minus_p = 1.0 - p;
    let term = |m: u64| -> f64 {
        if m % 2 == 0 {
            ((m / 2) as f64 * log_q).exp() * one_minus_p
        } else {
            (m.div_ceil(2) as f64 * log_q).exp()
        }
    };
    let mut sum = 0.0;
    for m in 0..n {
        sum += 2.0 * term(m);
    }
    Ok(sum + term(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JansonBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Rigorous bracket for `E[(2N+1) - |A-A|]`.
///
/// For a difference `n >= 1`, the events "`m` and `m+n` both in `A`" have
/// probability `p^2`; with `M = (1-p^2)^(N-n+1)` and
/// `Delta = (N - 2n + 1) p^3` (zero when `2n > N`), Janson gives
/// `M <= P(n not in A-A) <= M exp(Delta / (1 - p^2))`. The upper bound is
/// capped at 1 termwise. `P(0 not in A-A) = (1-p)^(N+1)` is added exactly.
pub fn janson_missing_diffs_bounds(n: u64, p: f64) -> Result<JansonBounds> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!("p = {p} is not in (0, 1)")));
    }
    let eps = p * p;
    let log_q = (-eps).ln_1p();
    let p3 = p * p * p;
    let mut lower = 0.0;
    let mut upper = 0.0;
    for d in 1..=n {
        let log_m = (n - d + 1) as f64 * log_q;
        let delta = if 2 * d <= n { (n - 2 * d + 1) as f64 * p3 } else { 0.0 };
        lower += log_m.exp();
        upper += (log_m + delta / (1.0 - eps)).exp().min(1.0);
    }
    let empty = ((n + 1) as f64 * (-p).ln_1p()).exp();
    Ok(JansonBounds {
        lower: 2.0 * lower + empty,
        upper: 2.0 * upper + empty,
    })
}

/// `theta_f`: permutations of the coefficient vector that leave it unchanged.
pub fn theta(form: &LinearForm) -> u64 {
    let mut mult: BTreeMap<i64, u64> = BTreeMap::new();
    for &c in form.coeffs() {
        *mult.entry(c).or_insert(0) += 1;
    }
    mult.values().map(|&m| (1..=m).product::<u64>()).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum ConjecturePrediction {
    /// `|f(A)| ~ (Np)^k / theta_f`
    ImageSize(f64),
    /// `(sum |u_i|) N - |f(A)| ~ 2 theta_f prod |u_i| / p^k`
    MissingCount(f64),
    /// At `p = c N^(-1/k)` the limiting profile is not known in closed form.
    NotComputable,
}

/// Conjectured behaviour of `|f(A)|` for a form in `k >= 3` variables.
///
/// The regimes split at `N^(-1/k)`. For `delta < 1 - 1/k` the regime-below
/// value `(Np)^k / theta_f` exceeds the `(sum |u_i|) N + 1` possible values,
/// so there it only describes a growth rate.
pub fn conjecture_prediction(
    form: &LinearForm,
    n: u64,
    family: &PFamily,
    declared: Option<Regime>,
) -> Result<ConjecturePrediction> {
    if form.kind() != FormKind::KAry {
        return Err(Error::Validation(format!("{form} is not a form in three or more variables")));
    }
    let k = form.arity();
    let regime = regime_of(family, k)
        .or(declared)
        .ok_or_else(|| Error::Usage("explicit p needs a declared regime".into()))?;
    let p = p_of(family, n)?;
    let th = theta(form) as f64;
    Ok(match regime {
        Regime::Below => ConjecturePrediction::ImageSize((n as f64 * p).powi(k as i32) / th),
        Regime::At => ConjecturePrediction::NotComputable,
        Regime::Above => {
            let prod: f64 = form.coeffs().iter().map(|c| c.abs() as f64).product();
            ConjecturePrediction::MissingCount(2.0 * th * prod / p.powi(k as i32))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn g_values() {
        assert!(close(g_ratio(1.0).unwrap(), 2.0 / std::f64::consts::E, 1e-15));
        assert!(close(g_ratio(0.5).unwrap(), 4.0 * ((-0.5f64).exp() - 0.5), 1e-15));
        assert!(close(g_ratio(0.5).unwrap(), 0.4261226, 1e-7));
        let tiny = g_ratio(1e-8).unwrap();
        assert!(((tiny - 1e-8) / 1e-8).abs() < 1e-8);
        assert!(g_ratio(0.0).is_err());
        assert!(g_ratio(-1.0).is_err());
    }

    #[test]
    fn series_examples() {
        assert_eq!(series_partial_g(0.3, 1), 0.3);
        assert!(close(series_partial_g(1.0, 2), 2.0 / 3.0, 1e-15));
        assert!((g_ratio(1.0).unwrap() - series_partial_g(1.0, 30)).abs() < 1e-15);
    }

    #[test]
    fn branches_meet_at_cutoff() {
        for (u, v) in [(1, 1), (2, 1), (4, 3), (5, 1), (20, 19)] {
            let x = SERIES_CUTOFF;
            let series = g_form_series(u as f64, v as f64, x, SERIES_TERMS);
            let em1 = (-x).exp_m1();
            let closed = 2.0 * v as f64 * (x + em1) / x - (u - v) as f64 * em1;
            assert!((series - closed).abs() < 1e-14, "({u},{v}): {series} vs {closed}");
        }
    }

    #[test]
    fn g_form_values() {
        assert!(close(g_form(2, 1, 1.0).unwrap(), 1.0 + (-1.0f64).exp(), 1e-15));
        assert!(close(g_form(2, 1, 1e6).unwrap(), 3.0, 1e-5));
        assert!(g_form(1, 2, 1.0).is_err());
        assert!(g_form(2, 1, 0.0).is_err());
        // literal closed form away from cancellation
        for &(u, v, x) in &[(3i64, 2i64, 0.7f64), (5, 1, 2.5), (4, 3, 0.05)] {
            let (uf, vf) = (u as f64, v as f64);
            let lit = (uf + vf) - 2.0 * vf * (1.0 - (-x).exp()) / x - (uf - vf) * (-x).exp();
            assert!(close(g_form(u, v, x).unwrap(), lit, 1e-13));
        }
    }

    #[test]
    fn g11_is_g() {
        for i in 1..=200 {
            let x = 1e-4 * 1.08f64.powi(i);
            assert!(close(g_form(1, 1, x).unwrap(), g_ratio(x).unwrap(), 1e-15));
        }
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(1, 1), Ratio::new(1, 3));
        assert_eq!(alpha(2, 1), Ratio::new(5, 24));
        assert_eq!(alpha(4, 3), Ratio::new(3, 32));
        assert_eq!(alpha(5, 1), Ratio::new(7, 75));
        assert!(alpha(4, 3) > alpha(5, 1));
    }

    #[test]
    fn tuple_count_leading_orders() {
        let (n, p) = (1_000_000u64, 1e-3);
        let s1 = expected_tuple_count(n, p, 1, HistKind::Sum, None).unwrap();
        assert!(close(s1, (n as f64 * p).powi(2) / 2.0, 1e-6));
        let d1 = expected_tuple_count(n, p, 1, HistKind::Diff, None).unwrap();
        assert!(close(d1, (n as f64 * p).powi(2), 1e-6));
        let f = LinearForm::binary(2, -1).unwrap();
        let f2 = expected_tuple_count(n, p, 2, HistKind::Form, Some(&f)).unwrap();
        // (2/3! + 1/2!) / 2^2 = alpha(2,1) = 5/24
        assert!(close(f2, 5.0 / 24.0 * p.powi(4) * (n as f64).powi(3), 1e-9));
        let f1 = expected_tuple_count(n, p, 1, HistKind::Form, Some(&f)).unwrap();
        assert!(close(f1, (n as f64 * p).powi(2), 1e-6));
    }

    #[test]
    fn bundle_examples() {
        let b = asymptotic_bundle(1_000_000, &PFamily::power_law(1.0, 0.5), &[], None).unwrap();
        assert_eq!(b.regime, Regime::At);
        assert!(close(b.s_pred, 426_122.6, 0.1));
        assert!(close(b.d_pred, 735_758.9, 0.1));

        let b = asymptotic_bundle(1_000_000, &PFamily::power_law(1.0, 0.3), &[], None).unwrap();
        assert_eq!(b.regime, Regime::Above);
        // 4 * 10^3.6 and 2 * 10^3.6
        assert!(close(b.sc_pred, 15_924.29, 0.01));
        assert!(close(b.dc_pred, 7_962.14, 0.01));
        assert_eq!(b.sc_pred, 2.0 * b.dc_pred);

        let f = LinearForm::binary(2, -1).unwrap();
        let b = asymptotic_bundle(1_000_000, &PFamily::power_law(1.0, 0.7), &[f], None).unwrap();
        assert_eq!(b.regime, Regime::Below);
        assert_eq!(b.d_pred / b.s_pred, 2.0);
        assert_eq!(b.forms[0].df_pred, Some(b.d_pred));

        assert!(matches!(
            asymptotic_bundle(1000, &PFamily::explicit(0.01), &[], None),
            Err(Error::Usage(_))
        ));
        let b = asymptotic_bundle(1000, &PFamily::explicit(0.01), &[], Some(Regime::Above)).unwrap();
        assert!(close(b.sc_pred, 4e4, 1e-6));
    }

    #[test]
    fn critical_form_prediction_uses_c2_over_u() {
        let f = LinearForm::binary(4, -3).unwrap();
        let b = asymptotic_bundle(1_000_000, &PFamily::power_law(2.0, 0.5), &[f], None).unwrap();
        let expect = g_form(4, 3, 1.0).unwrap() * 1e6;
        assert!(close(b.forms[0].df_pred.unwrap(), expect, 1e-6));
    }

    #[test]
    fn exact_missing_sums_small() {
        assert!(close(exact_missing_sums_expectation(0, 0.3).unwrap(), 0.7, 1e-15));
        assert!(close(exact_missing_sums_expectation(2, 0.5).unwrap(), 2.875, 1e-15));
        assert!(close(exact_missing_sums_expectation(10_000, 0.5).unwrap(), 10.0, 1e-9));
    }

    #[test]
    fn janson_examples() {
        let b = janson_missing_diffs_bounds(10_000, 0.5).unwrap();
        assert!(b.lower <= b.upper);
        assert!(close(b.lower, 6.0, 0.2) && close(b.upper, 6.0, 0.2));
        let n = 10_000u64;
        let p = (n as f64).powf(-0.3);
        let b = janson_missing_diffs_bounds(n, p).unwrap();
        let target = 2.0 / (p * p);
        assert!((b.lower / target - 1.0).abs() < 0.05);
        assert!((b.upper / target - 1.0).abs() < 0.05);
    }

    #[test]
    fn thetas() {
        assert_eq!(theta(&LinearForm::new(vec![1, 1, 1]).unwrap()), 6);
        assert_eq!(theta(&LinearForm::new(vec![2, 1, -1]).unwrap()), 1);
        assert_eq!(theta(&LinearForm::new(vec![1, 1, -1]).unwrap()), 2);
    }

    #[test]
    fn conjecture_regimes() {
        let f = LinearForm::new(vec![1, 1, -1]).unwrap();
        let n = 1_000_000u64;
        let fam = PFamily::power_law(1.0, 0.5);
        let p = p_of(&fam, n).unwrap();
        match conjecture_prediction(&f, n, &fam, None).unwrap() {
            ConjecturePrediction::ImageSize(v) => assert!(close(v, (n as f64 * p).powi(3) / 2.0, 1e-6)),
            other => panic!("{other:?}"),
        }
        let at = PFamily::power_law(1.0, 1.0 / 3.0);
        assert_eq!(conjecture_prediction(&f, n, &at, None).unwrap(), ConjecturePrediction::NotComputable);
        let above = PFamily::power_law(1.0, 0.2);
        let p = p_of(&above, n).unwrap();
        match conjecture_prediction(&f, n, &above, None).unwrap() {
            ConjecturePrediction::MissingCount(v) => assert!(close(v, 4.0 / p.powi(3), 1e-6)),
            other => panic!("{other:?}"),
        }
        assert!(conjecture_prediction(&LinearForm::binary(2, -1).unwrap(), n, &fam, None).is_err());
    }
}
