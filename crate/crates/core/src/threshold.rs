//! Which of two binary difference forms has the larger image, and the sharp
//! threshold constant where the answer flips.
//!
//! Writing `s = u + |v|` and `alpha = (3u - |v|) / (6u^2)`: far above
//! `N^(-1/2)` the form with larger `s` wins; just above `N^(-3/5)` the form
//! with smaller `alpha` wins. When the two rules disagree there is a unique
//! `c` at which `g_{u1,v1}(c^2/u1) = g_{u2,v2}(c^2/u2)`.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::predict::{alpha, g_form, g_form_coefficient, regime_of, Regime};
use crate::randmodel::PFamily;
use crate::setcore::{FormKind, LinearForm};

/// Terms of the small-`c` series for `h`; at `c <= 1` the arguments are at
/// most 1 and the tail is below `1 / 31!`.
const H_SERIES_TERMS: u32 = 30;
/// Upper end of the bracket search in [`solve_threshold`].
pub const BRACKET_CAP: f64 = 1e3;
/// Lower edge of the window in which the random model is informative.
pub const BREAKDOWN_DELTA: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairCase {
    /// One form dominates throughout `N^(-3/5) = o(p)`, `p = o(1)`.
    CaseI,
    /// Domination switches at `p = c N^(-1/2)`.
    CaseII,
    /// Same `(u, |v|)`, or a tie the two rules cannot break.
    Incomparable,
}

impl std::fmt::Display for PairCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairCase::CaseI => "case-i",
            PairCase::CaseII => "case-ii",
            PairCase::Incomparable => "incomparable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub case: PairCase,
    /// Identifier of the dominating form for small `c`, or `"same"`.
    pub dominator_below: String,
    /// Identifier of the dominating form for large `c`, or `"same"`.
    pub dominator_above: String,
    pub c_threshold: Option<f64>,
    pub validity_note: String,
}

const VALIDITY: &str = "valid for N^(-3/5) = o(p), p = o(1)";

struct Params {
    u: i64,
    absv: i64,
    s: i64,
    alpha: Ratio<i64>,
}

fn params(form: &LinearForm) -> Result<Params> {
    if form.kind() != FormKind::BinaryDifference {
        return Err(Error::Validation(format!("{form} is not a binary difference form")));
    }
    let (u, absv) = form.u_absv().expect("binary");
    Ok(Params {
        u,
        absv,
        s: u + absv,
        alpha: alpha(u, absv),
    })
}

/// `Some(true)` if the large-`c` winner is `f`, `Some(false)` if `g`, `None`
/// when both rules point the same way or cannot decide.
fn case_ii_orientation(pf: &Params, pg: &Params) -> Option<bool> {
    if pf.s > pg.s && pf.alpha > pg.alpha {
        Some(true)
    } else if pg.s > pf.s && pg.alpha > pf.alpha {
        Some(false)
    } else {
        None
    }
}

/// Classifies a pair of binary difference forms; the order of the arguments
/// does not matter.
pub fn classify_pair(f: &LinearForm, g: &LinearForm) -> Result<DominationReport> {
    let (pf, pg) = (params(f)?, params(g)?);
    let (fi, gi) = (f.ident(), g.ident());
    if (pf.u, pf.absv) == (pg.u, pg.absv) {
        return Ok(DominationReport {
            case: PairCase::Incomparable,
            dominator_below: "same".into(),
            dominator_above: "same".into(),
            c_threshold: None,
            validity_note: "identical (u, |v|): the estimates see only |v|".into(),
        });
    }
    let single = |winner: &str| DominationReport {
        case: PairCase::CaseI,
        dominator_below: winner.to_string(),
        dominator_above: winner.to_string(),
        c_threshold: None,
        validity_note: VALIDITY.into(),
    };
    if pf.s >= pg.s && pf.alpha < pg.alpha {
        return Ok(single(&fi));
    }
    if pg.s >= pf.s && pg.alpha < pf.alpha {
        return Ok(single(&gi));
    }
    if let Some(f_above) = case_ii_orientation(&pf, &pg) {
        let c = solve_threshold(f, g)?;
        let (below, above) = if f_above { (gi, fi) } else { (fi, gi) };
        return Ok(DominationReport {
            case: PairCase::CaseII,
            dominator_below: below,
            dominator_above: above,
            c_threshold: Some(c),
            validity_note: VALIDITY.into(),
        });
    }
    Ok(DominationReport {
        case: PairCase::Incomparable,
        dominator_below: "same".into(),
        dominator_above: "same".into(),
        c_threshold: None,
        validity_note: "equal alpha with different u+|v|: leading terms cannot separate the forms".into(),
    })
}

/// `h(c) = g_{u1,v1}(c^2/u1) - g_{u2,v2}(c^2/u2)`.
///
/// The `c^2` terms cancel identically, so for `c <= 1` the difference is
/// summed coefficientwise from `c^4` on; above that the closed forms are
/// subtracted directly.
pub fn h_difference(f: &LinearForm, g: &LinearForm, c: f64) -> Result<f64> {
    let (pf, pg) = (params(f)?, params(g)?);
    h_raw(&pf, &pg, c)
}

fn h_raw(pf: &Params, pg: &Params, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("c must be positive, got {c}")));
    }
    if c <= 1.0 {
        let (u1, v1, u2, v2) = (pf.u as f64, pf.absv as f64, pg.u as f64, pg.absv as f64);
        let c2 = c * c;
        let mut sum = 0.0;
        for j in (2..=H_SERIES_TERMS).rev() {
            let term = g_form_coefficient(u1, v1, j) / u1.powi(j as i32)
                - g_form_coefficient(u2, v2, j) / u2.powi(j as i32);
            sum = (sum + term) * c2;
        }
        return Ok(sum * c2);
    }
    let c2 = c * c;
    Ok(g_form(pf.u, pf.absv, c2 / pf.u as f64)? - g_form(pg.u, pg.absv, c2 / pg.u as f64)?)
}

/// The positive root of `h`, to relative tolerance `1e-12`.
///
/// Requires a case-ii pair in either order.
pub fn solve_threshold(f: &LinearForm, g: &LinearForm) -> Result<f64> {
    let (pf, pg) = (params(f)?, params(g)?);
    // orient so that k < 0 below the root and k > 0 above it
    let sign = match case_ii_orientation(&pf, &pg) {
        Some(true) => 1.0,
        Some(false) => -1.0,
        None => {
            return Err(Error::Numerical(format!(
                "{f} and {g} do not form a case-ii pair; no threshold exists"
            )))
        }
    };
    let k = |c: f64| h_raw(&pf, &pg, c).map(|v| sign * v);
    let mut lo = 1e-6;
    let mut hi = 1.0;
    if k(lo)? >= 0.0 {
        return Err(Error::Numerical(format!("h has the wrong sign at c = {lo}")));
    }
    while k(hi)? <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > BRACKET_CAP {
            return Err(Error::Numerical(format!(
                "no sign change of h up to c = {BRACKET_CAP} for {f} vs {g}"
            )));
        }
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if k(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    First,
    Second,
    Tie,
}

/// Sign of `h(c)`, with `|h| < 1e-14 (u1 + |v1|)` reported as a tie.
pub fn dominator_at(f: &LinearForm, g: &LinearForm, c: f64) -> Result<Dominance> {
    let (pf, pg) = (params(f)?, params(g)?);
    let h = h_raw(&pf, &pg, c)?;
    let tol = 1e-14 * pf.s as f64;
    Ok(if h.abs() < tol {
        Dominance::Tie
    } else if h > 0.0 {
        Dominance::First
    } else {
        Dominance::Second
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RegimeOutcome {
    Dominator { form: LinearForm, rationale: String },
    Tie { rationale: String },
    /// `p = O(N^(-3/5))`: the pair counts are too small for the comparison to
    /// mean anything.
    ModelBreakdown { rationale: String },
}

/// The dominating form for a power-law family `p = c N^(-delta)`.
pub fn regime_dominator(f: &LinearForm, g: &LinearForm, family: &PFamily) -> Result<RegimeOutcome> {
    let (pf, pg) = (params(f)?, params(g)?);
    let (c, delta) = match *family {
        PFamily::PowerLaw { c, delta } => (c, delta),
        PFamily::ExplicitP { .. } => {
            return Err(Error::Usage("regime_dominator needs a power-law family".into()))
        }
    };
    let pick = |first: bool, rationale: String| RegimeOutcome::Dominator {
        form: if first { f.clone() } else { g.clone() },
        rationale,
    };
    if (pf.u, pf.absv) == (pg.u, pg.absv) {
        return Ok(RegimeOutcome::Tie {
            rationale: "identical (u, |v|)".into(),
        });
    }
    if delta >= BREAKDOWN_DELTA {
        return Ok(RegimeOutcome::ModelBreakdown {
            rationale: format!("delta = {delta} >= 3/5: p = O(N^(-3/5))"),
        });
    }
    match regime_of(family, 2).expect("power law") {
        Regime::Above => {
            let by_s = pf.s.cmp(&pg.s).then(pf.u.cmp(&pg.u));
            Ok(pick(
                by_s == Ordering::Greater,
                format!("u+|v|: {} vs {}, ties to the larger u", pf.s, pg.s),
            ))
        }
        Regime::Below => match pf.alpha.cmp(&pg.alpha) {
            Ordering::Equal => Ok(RegimeOutcome::Tie {
                rationale: format!("equal alpha = {}", pf.alpha),
            }),
            ord => Ok(pick(
                ord == Ordering::Less,
                format!("smaller alpha wins: {} vs {}", pf.alpha, pg.alpha),
            )),
        },
        Regime::At => match dominator_at(f, g, c)? {
            Dominance::Tie => Ok(RegimeOutcome::Tie {
                rationale: format!("h({c}) within tolerance of 0"),
            }),
            d => Ok(pick(d == Dominance::First, format!("sign of h at c = {c}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(u: i64, v: i64) -> LinearForm {
        LinearForm::binary(u, v).unwrap()
    }

    #[test]
    fn spec_pairs() {
        let r = classify_pair(&form(2, -1), &form(1, -1)).unwrap();
        assert_eq!(r.case, PairCase::CaseI);
        assert_eq!(r.dominator_above, "2_-1");
        assert!(r.c_threshold.is_none());

        let r = classify_pair(&form(4, -3), &form(5, -1)).unwrap();
        assert_eq!(r.case, PairCase::CaseII);
        assert_eq!(r.dominator_below, "5_-1");
        assert_eq!(r.dominator_above, "4_-3");
        assert!(r.c_threshold.unwrap() > 0.0);

        let r = classify_pair(&form(3, 2), &form(3, -2)).unwrap();
        assert_eq!(r.case, PairCase::Incomparable);

        assert!(classify_pair(&LinearForm::sum(), &form(2, -1)).is_err());
    }

    #[test]
    fn every_form_dominates_plain_difference() {
        for (u, v) in [(2, -1), (3, 1), (3, -2), (5, -1), (7, 4)] {
            let r = classify_pair(&form(u, v), &LinearForm::difference()).unwrap();
            assert_eq!(r.case, PairCase::CaseI);
            assert_eq!(r.dominator_above, form(u, v).ident());
        }
    }

    #[test]
    fn root_separates_signs() {
        let (f, g) = (form(4, -3), form(5, -1));
        let c = solve_threshold(&f, &g).unwrap();
        assert!(h_difference(&f, &g, c / 2.0).unwrap() < 0.0);
        assert!(h_difference(&f, &g, 2.0 * c).unwrap() > 0.0);
        assert_eq!(dominator_at(&f, &g, c / 10.0).unwrap(), Dominance::Second);
        assert_eq!(dominator_at(&f, &g, c * 10.0).unwrap(), Dominance::First);
        // either argument order, either sign of v
        assert_eq!(solve_threshold(&g, &f).unwrap(), c);
        assert_eq!(solve_threshold(&form(4, 3), &form(5, 1)).unwrap(), c);
    }

    #[test]
    fn root_matches_fine_grid_scan() {
        let (f, g) = (form(4, -3), form(5, -1));
        let c = solve_threshold(&f, &g).unwrap();
        let mut prev = h_difference(&f, &g, 1e-4).unwrap();
        let mut crossing = None;
        let mut x = 1e-4;
        while x < 10.0 {
            let next = x + 1e-4;
            let cur = h_difference(&f, &g, next).unwrap();
            if prev < 0.0 && cur >= 0.0 {
                assert!(crossing.is_none());
                crossing = Some(next);
            }
            prev = cur;
            x = next;
        }
        assert!((crossing.unwrap() - c).abs() < 2e-4);
    }

    #[test]
    fn series_and_closed_form_agree_near_one() {
        let (f, g) = (form(4, -3), form(5, -1));
        let pf = params(&f).unwrap();
        let pg = params(&g).unwrap();
        for c in [0.5, 0.8, 1.0] {
            let series = h_raw(&pf, &pg, c).unwrap();
            let c2 = c * c;
            let closed = g_form(4, 3, c2 / 4.0).unwrap() - g_form(5, 1, c2 / 5.0).unwrap();
            assert!((series - closed).abs() < 1e-15, "{c}: {series} vs {closed}");
        }
    }

    #[test]
    fn identical_forms_tie() {
        for c in [1e-3, 0.5, 3.0, 100.0] {
            assert_eq!(dominator_at(&form(3, 2), &form(3, -2), c).unwrap(), Dominance::Tie);
        }
    }

    #[test]
    fn regime_rules() {
        let out = regime_dominator(&form(3, -1), &form(2, -1), &PFamily::power_law(1.0, 0.3)).unwrap();
        assert!(matches!(out, RegimeOutcome::Dominator { form: f, .. } if f == form(3, -1)));
        let out = regime_dominator(&form(2, -1), &LinearForm::difference(), &PFamily::power_law(1.0, 0.55)).unwrap();
        assert!(matches!(out, RegimeOutcome::Dominator { form: f, .. } if f == form(2, -1)));
        let out = regime_dominator(&form(2, -1), &form(3, -1), &PFamily::power_law(1.0, 0.7)).unwrap();
        assert!(matches!(out, RegimeOutcome::ModelBreakdown { .. }));
        // equal u+|v|: larger u wins
        let out = regime_dominator(&form(3, 2), &form(4, -1), &PFamily::power_law(1.0, 0.2)).unwrap();
        assert!(matches!(out, RegimeOutcome::Dominator { form: f, .. } if f == form(4, -1)));
        assert!(regime_dominator(&form(3, -1), &form(2, 1), &PFamily::explicit(0.1)).is_err());
    }
}
