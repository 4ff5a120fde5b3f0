//! Count sum-dominated subsets of {0, ..., N} by brute force.
//!
//! cargo run --release --example enumerate_mstd -- [max N]

use sumdiff::harness::{enumerate_exhaustive, sum_dominated_sets};

fn main() -> sumdiff::Result<()> {
    let max_n: u64 = std::env::args().nth(1).map_or(18, |s| s.parse().expect("max N"));
    for n in 10..=max_n {
        let c = enumerate_exhaustive(n)?;
        println!(
            "N={n:>2}: sum-dominated {:>6}  balanced {:>8}  difference-dominated {:>9}  fraction {:.2e}",
            c.sum_dominated,
            c.balanced,
            c.difference_dominated,
            c.sum_dominated as f64 / c.total() as f64
        );
    }
    for s in sum_dominated_sets(14)? {
        println!("{s:?}");
    }
    Ok(())
}
