//! A small Monte Carlo sweep over N with the critical family p = N^(-1/2),
//! written as CSV to stdout and summarised against the predictions.

use sumdiff::harness::{run_experiment, write_csv, ExperimentConfig};
use sumdiff::randmodel::PFamily;
use sumdiff::setcore::LinearForm;

fn main() -> sumdiff::Result<()> {
    let mut config = ExperimentConfig::new(vec![10_000, 100_000], PFamily::power_law(1.0, 0.5), 20, 5);
    config.statistics.forms = vec![LinearForm::binary(2, -1)?];
    config.statistics.xk = Some(3);
    let run = run_experiment(&config)?;
    write_csv(std::io::stdout().lock(), &config, &run.records)?;

    for s in &run.summary.per_n {
        eprintln!("N={} p={:.3e}", s.n, s.p);
        for (name, err) in &s.relative_error {
            let st = &s.stats[name];
            eprintln!("    {name:<14} mean {:>12.1} +- {:>8.1}  relative error {err:+.4}", st.mean, st.std_error);
        }
    }
    Ok(())
}
