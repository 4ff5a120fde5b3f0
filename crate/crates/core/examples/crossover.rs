//! Where does 4x - 3y overtake 5x - y? Solves for the sharp threshold and
//! compares it with a Monte Carlo domination frequency on a grid around it.
//!
//! cargo run --release --example crossover -- [N] [trials]

use sumdiff::harness::{empirical_crossover, CrossoverEstimate, Threads};
use sumdiff::setcore::LinearForm;
use sumdiff::threshold::{classify_pair, solve_threshold};

fn main() -> sumdiff::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1_000_000, |s| s.parse().expect("N"));
    let trials: u64 = args.next().map_or(40, |s| s.parse().expect("trials"));

    let f = LinearForm::binary(4, -3)?;
    let g = LinearForm::binary(5, -1)?;
    let report = classify_pair(&f, &g)?;
    let root = solve_threshold(&f, &g)?;
    println!("{f} vs {g}: {}, predicted threshold c = {root:.6}", report.case);

    let grid: Vec<f64> = [0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3].iter().map(|s| s * root).collect();
    let result = empirical_crossover(&f, &g, n, &grid, trials, 2024, Threads::Auto)?;
    println!("{:>10} {:>10} {:>8} {:>6}", "c", "P(f wins)", "se", "ties");
    for pt in &result.points {
        println!("{:>10.5} {:>10.4} {:>8.4} {:>6}", pt.c, pt.frequency, pt.std_error, pt.ties);
    }
    match result.estimate {
        CrossoverEstimate::Crossing { c } => {
            println!("empirical crossover c = {c:.5} ({:+.2}% from the root)", 100.0 * (c / root - 1.0))
        }
        CrossoverEstimate::Inconclusive { reason } => println!("inconclusive: {reason}"),
    }
    Ok(())
}
