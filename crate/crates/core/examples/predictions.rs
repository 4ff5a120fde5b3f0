//! Closed-form predictions: the critical profile g, the regime bundle, the
//! exact missing-sum expectation, Janson bounds and the k-ary conjecture.

use sumdiff::predict::{
    asymptotic_bundle, conjecture_prediction, exact_missing_sums_expectation, g_form, g_ratio,
    janson_missing_diffs_bounds, theta,
};
use sumdiff::randmodel::PFamily;
use sumdiff::setcore::LinearForm;

fn main() -> sumdiff::Result<()> {
    println!("g(1/2) = {:.7}, g(1) = {:.7}", g_ratio(0.5)?, g_ratio(1.0)?);
    println!("g_(2,1)(1) = {:.7}", g_form(2, 1, 1.0)?);

    let forms = vec![LinearForm::binary(2, -1)?, LinearForm::new(vec![1, 1, -1])?];
    for delta in [0.7, 0.5, 0.3] {
        let b = asymptotic_bundle(1_000_000, &PFamily::power_law(1.0, delta), &forms, None)?;
        println!(
            "delta={delta} {}: S={:.1} D={:.1} Sc={:.1} Dc={:.1}",
            b.regime, b.s_pred, b.d_pred, b.sc_pred, b.dc_pred
        );
        for f in &b.forms {
            println!("    {}: Df={:?} Dfc={:?}", f.form, f.df_pred, f.dfc_pred);
        }
    }

    let n = 10_000;
    let sc = exact_missing_sums_expectation(n, 0.5)?;
    let dc = janson_missing_diffs_bounds(n, 0.5)?;
    println!("p=1/2, N={n}: E|A+A| = {:.4}, E[missing differences] in [{:.4}, {:.4}]", (2 * n + 1) as f64 - sc, dc.lower, dc.upper);

    let f = LinearForm::new(vec![1, 1, -1])?;
    println!(
        "theta({f}) = {}, prediction at delta=0.5: {:?}",
        theta(&f),
        conjecture_prediction(&f, 1_000_000, &PFamily::power_law(1.0, 0.5), None)?
    );
    Ok(())
}
