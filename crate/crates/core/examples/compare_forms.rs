//! Which generalized difference set is larger? Classify pairs of forms and
//! ask for the winner in each regime.

use sumdiff::randmodel::PFamily;
use sumdiff::setcore::LinearForm;
use sumdiff::threshold::{classify_pair, regime_dominator};

fn main() -> sumdiff::Result<()> {
    let pairs = [((2, -1), (1, -1)), ((4, -3), (5, -1)), ((3, 2), (3, -2)), ((3, -1), (2, -1))];
    for ((u1, v1), (u2, v2)) in pairs {
        let (f, g) = (LinearForm::binary(u1, v1)?, LinearForm::binary(u2, v2)?);
        let r = classify_pair(&f, &g)?;
        print!("{f} vs {g}: {} (below: {}, above: {}", r.case, r.dominator_below, r.dominator_above);
        match r.c_threshold {
            Some(c) => println!(", threshold c = {c:.6})"),
            None => println!(")"),
        }
        for delta in [0.3, 0.5, 0.55, 0.7] {
            println!("    delta={delta}: {:?}", regime_dominator(&f, &g, &PFamily::power_law(1.0, delta))?);
        }
    }
    Ok(())
}
