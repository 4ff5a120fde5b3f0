//! Exact set arithmetic on a small set: sums, differences, a generalized
//! difference set and the collision statistics behind them.

use sumdiff::setcore::{
    classify, diffset, form_image, make_set, multiplicity_profile, rep_histogram, sumset, tuple_statistic,
    HistKind, LinearForm,
};

fn main() -> sumdiff::Result<()> {
    let a = make_set(&[0, 2, 3, 4, 7, 11, 12, 14], 0, 14)?;
    println!("A       = {:?}", a.to_vec());
    println!("|A+A|   = {}", sumset(&a).len());
    println!("|A-A|   = {}", diffset(&a).len());

    let c = classify(&a);
    println!("class   = {} (missing sums {}, missing differences {})", c.label, c.missing_sums, c.missing_diffs);

    let f: LinearForm = "2,-1".parse()?;
    let img = form_image(&a, &f)?;
    println!("|{f}(A)| = {} of {} possible values", img.len(), f.span_count(14));

    for kind in [HistKind::Sum, HistKind::Diff] {
        let h = rep_histogram(&a, kind, None)?;
        let xs: Vec<u128> = (1..=3).map(|k| tuple_statistic(&h, k)).collect::<Result<_, _>>()?;
        println!("{kind:?}: X_1..X_3 = {xs:?}, multiplicities = {:?}", multiplicity_profile(&h));
    }
    Ok(())
}
