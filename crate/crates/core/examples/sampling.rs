//! Draw binomial random subsets of {0, ..., N} and watch |A+A| and |A-A|
//! across the three regimes of p.

use sumdiff::randmodel::{p_of, sample, PFamily, SamplerSeed};
use sumdiff::setcore::{diffset, sumset};

fn main() -> sumdiff::Result<()> {
    let n = 100_000;
    for delta in [0.7, 0.5, 0.3] {
        let family = PFamily::power_law(1.0, delta);
        let p = p_of(&family, n)?;
        let a = sample(n, p, SamplerSeed::new(1, 0))?;
        let (s, d) = (sumset(&a).len(), diffset(&a).len());
        println!(
            "delta={delta}: p={p:.3e} |A|={} |A+A|={s} |A-A|={d} ratio={:.4} missing sums={} missing diffs={}",
            a.len(),
            d as f64 / s as f64,
            2 * n as usize + 1 - s,
            2 * n as usize + 1 - d,
        );
    }
    // the same key always reproduces the same set
    let key = SamplerSeed::new(7, 42);
    assert_eq!(sample(1000, 0.1, key)?, sample(1000, 0.1, key)?);
    Ok(())
}
