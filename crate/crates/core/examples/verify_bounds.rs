//! The explicit probability bounds for p = c N^(-delta), 1/2 < delta < 1,
//! and how often their sub-events actually fail.

use sumdiff::bounds::{alt_parameterization, bound_report, ratio_claim};
use sumdiff::harness::{verify_bounds, Threads};

fn main() -> sumdiff::Result<()> {
    let r = bound_report(1.0, 0.6, 0.2, 10_000)?;
    println!("f = {}, r = {}, P1 = {:.4}, P2 = {:.4}", r.f_delta, r.r_delta, r.p1, r.p2);
    println!("|A| interval {:?}, Y threshold {:.1}", r.card_interval, r.y_threshold);
    println!("claim: {:?}", ratio_claim(&r));
    for delta in [0.6, 0.75, 0.8] {
        println!("alternative at delta={delta}: {:?}", alt_parameterization(1.0, delta, 10_000)?);
    }

    let v = verify_bounds(1.0, 0.6, 0.2, 10_000, 2_000, 1, Threads::Auto)?;
    println!("cardinality failures: {} of {} (bound {:.4})", v.cardinality.failures, v.cardinality.trials, v.cardinality.bound);
    println!("collision failures:   {} of {} (bound {:.4})", v.collisions.failures, v.collisions.trials, v.collisions.bound);
    Ok(())
}
