//! The `sumdiff` command line.
//!
//! Exit status: 0 success, 1 usage error, 2 runtime or resource error,
//! 3 when `verify-bounds` observes a violated bound.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use super::config::{ExperimentConfig, OutputFormat, Statistics, Threads};
use super::enumerate::{enumerate_exhaustive, sum_dominated_sets};
use super::experiment::run_experiment;
use super::output::write_run;
use super::record::run_trial;
use super::verify::verify_bounds;
use crate::error::{Error, Result};
use crate::predict::{asymptotic_bundle, Regime};
use crate::randmodel::PFamily;
use crate::setcore::LinearForm;
use crate::threshold::{classify_pair, dominator_at, Dominance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sumdiff", version, about = "Sums, differences and linear-form images of random integer sets")]
struct Cli {
    /// Master seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per parameter point.
    #[arg(long, global = true, default_value_t = 100)]
    trials: u64,
    /// Worker threads: "auto" or a positive integer.
    #[arg(long, global = true, default_value = "auto")]
    threads: Threads,
    /// Artifact format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    out: OutputFormat,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    output_path: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Fixed inclusion probability.
    #[arg(long)]
    p: Option<f64>,
    /// Power-law constant in p = c N^(-delta).
    #[arg(long)]
    c: Option<f64>,
    /// Power-law exponent in p = c N^(-delta).
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
}

impl FamilyArgs {
    fn family(&self) -> Result<PFamily> {
        match (self.p, self.c, self.delta) {
            (Some(p), None, None) => Ok(PFamily::explicit(p)),
            (None, Some(c), Some(delta)) => Ok(PFamily::power_law(c, delta)),
            _ => Err(Error::Usage("give either --p, or both --c and --delta".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one set and print its statistics.
    Sample {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        family: FamilyArgs,
        /// Linear form such as 2,-1 or 1,1,-1 (repeatable).
        #[arg(long = "form", allow_hyphen_values = true)]
        forms: Vec<LinearForm>,
        #[arg(long, default_value_t = 0)]
        trial_index: u64,
        /// Also collect X_1..X_k.
        #[arg(long)]
        xk: Option<u32>,
    },
    /// Print the asymptotic predictions at one N.
    Predict {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "form", allow_hyphen_values = true)]
        forms: Vec<LinearForm>,
        /// Required with --p: below, at or above.
        #[arg(long)]
        regime: Option<Regime>,
    },
    /// Classify a pair of difference forms and solve for the threshold.
    Compare {
        #[arg(long = "form", allow_hyphen_values = true, required = true)]
        forms: Vec<LinearForm>,
        /// Also report the dominating form at p = c N^(-1/2).
        #[arg(long)]
        at_c: Option<f64>,
    },
    /// Classify every subset of {0, ..., N}.
    Enumerate {
        #[arg(long)]
        n: u64,
        /// Print every sum-dominated subset.
        #[arg(long)]
        list: bool,
    },
    /// Monte Carlo over a list of N.
    Sweep {
        /// Comma-separated or repeated sizes.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "form", allow_hyphen_values = true)]
        forms: Vec<LinearForm>,
        #[arg(long)]
        xk: Option<u32>,
        /// Record same-difference collisions.
        #[arg(long)]
        y: bool,
        /// JSON experiment config; replaces the flags above.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compare observed failure rates with the explicit bounds.
    VerifyBounds {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        g_exp: f64,
        #[arg(long)]
        n: u64,
    },
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parameter(_) | Error::Validation(_) | Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match &cli.output_path {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            write(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => write(stdout),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Sample {
            n,
            family,
            forms,
            trial_index,
            xk,
        } => {
            let mut config = ExperimentConfig::new(vec![*n], family.family()?, 1, cli.seed);
            config.statistics = Statistics {
                xk: *xk,
                forms: forms.clone(),
                y: true,
                ..Statistics::default()
            };
            config.validate()?;
            let record = run_trial(&config, *n, *trial_index)?;
            emit(cli, stdout, |w| {
                if cli.out == OutputFormat::Json {
                    serde_json::to_writer_pretty(&mut *w, &record)?;
                    writeln!(w)?;
                    return Ok(());
                }
                writeln!(w, "N={} p={} trial_index={}", record.n, record.p, record.trial_index)?;
                writeln!(w, "set_size={}", record.set_size)?;
                writeln!(w, "sumset_size={}", record.sumset_size.unwrap_or(0))?;
                writeln!(w, "diffset_size={}", record.diffset_size.unwrap_or(0))?;
                writeln!(w, "missing_sums={}", record.missing_sums.unwrap_or(0))?;
                writeln!(w, "missing_diffs={}", record.missing_diffs.unwrap_or(0))?;
                for f in &record.forms {
                    writeln!(w, "form {} image_size={} missing={}", f.form, f.image_size, f.missing)?;
                }
                if let (Some(xs), Some(xd)) = (&record.xk_sum, &record.xk_diff) {
                    writeln!(w, "X_k={xs:?}")?;
                    writeln!(w, "Xd_k={xd:?}")?;
                }
                writeln!(w, "Y={}", record.y.unwrap_or(0))?;
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Command::Predict {
            n,
            family,
            forms,
            regime,
        } => {
            let bundle = asymptotic_bundle(*n, &family.family()?, forms, *regime)?;
            emit(cli, stdout, |w| {
                if cli.out == OutputFormat::Json {
                    serde_json::to_writer_pretty(&mut *w, &bundle)?;
                    writeln!(w)?;
                    return Ok(());
                }
                writeln!(w, "regime={}", bundle.regime)?;
                writeln!(w, "N={} p={}", bundle.n, bundle.p)?;
                if let Some(c) = bundle.c {
                    writeln!(w, "c={c}")?;
                }
                writeln!(w, "S_pred={:.1}", bundle.s_pred)?;
                writeln!(w, "D_pred={:.1}", bundle.d_pred)?;
                writeln!(w, "Sc_pred={:.1}", bundle.sc_pred)?;
                writeln!(w, "Dc_pred={:.1}", bundle.dc_pred)?;
                for f in &bundle.forms {
                    let show = |v: Option<f64>| v.map_or("not computable".to_string(), |x| format!("{x:.1}"));
                    writeln!(w, "form {} Df_pred={} Dfc_pred={}", f.form, show(f.df_pred), show(f.dfc_pred))?;
                }
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Command::Compare { forms, at_c } => {
            let [f, g] = forms.as_slice() else {
                return Err(Error::Usage("compare takes exactly two --form arguments".into()));
            };
            let report = classify_pair(f, g)?;
            let at = match at_c {
                Some(c) => Some(dominator_at(f, g, *c)?),
                None => None,
            };
            emit(cli, stdout, |w| {
                if cli.out == OutputFormat::Json {
                    serde_json::to_writer_pretty(&mut *w, &report)?;
                    writeln!(w)?;
                    return Ok(());
                }
                writeln!(w, "case={}", report.case)?;
                writeln!(w, "dominator_below={}", report.dominator_below)?;
                writeln!(w, "dominator_above={}", report.dominator_above)?;
                if let Some(c) = report.c_threshold {
                    writeln!(w, "c_threshold={c:.12}")?;
                }
                if let (Some(c), Some(d)) = (at_c, at) {
                    let name = match d {
                        Dominance::First => f.ident(),
                        Dominance::Second => g.ident(),
                        Dominance::Tie => "tie".into(),
                    };
                    writeln!(w, "dominator_at_c={c}: {name}")?;
                }
                writeln!(w, "note={}", report.validity_note)?;
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, list } => {
            let counts = enumerate_exhaustive(*n)?;
            let sets = if *list { Some(sum_dominated_sets(*n)?) } else { None };
            emit(cli, stdout, |w| {
                if cli.out == OutputFormat::Json {
                    serde_json::to_writer_pretty(&mut *w, &counts)?;
                    writeln!(w)?;
                } else {
                    writeln!(w, "N={}", counts.n)?;
                    writeln!(w, "sum_dominated={}", counts.sum_dominated)?;
                    writeln!(w, "balanced={}", counts.balanced)?;
                    writeln!(w, "difference_dominated={}", counts.difference_dominated)?;
                    writeln!(w, "total={}", counts.total())?;
                }
                for s in sets.iter().flatten() {
                    writeln!(w, "{s:?}")?;
                }
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            n,
            family,
            forms,
            xk,
            y,
            config,
        } => {
            let config = match config {
                Some(path) => ExperimentConfig::from_path(path)?,
                None => {
                    if n.is_empty() {
                        return Err(Error::Usage("sweep needs --n or --config".into()));
                    }
                    let mut cfg = ExperimentConfig::new(n.clone(), family.family()?, cli.trials, cli.seed);
                    cfg.statistics.forms = forms.clone();
                    cfg.statistics.xk = *xk;
                    cfg.statistics.y = *y;
                    cfg.output = cli.out;
                    cfg.threads = cli.threads;
                    cfg
                }
            };
            let start = Instant::now();
            let run = run_experiment(&config)?;
            let wall = start.elapsed().as_secs_f64();
            emit(cli, stdout, |w| write_run(w, &config, &run, wall))?;
            for s in &run.summary.per_n {
                for (name, st) in &s.stats {
                    let _ = writeln!(stderr, "N={} {name}: mean={} se={}", s.n, st.mean, st.std_error);
                }
            }
            if let Some(reason) = run.aborted {
                let _ = writeln!(stderr, "error: sweep aborted, partial results written: {reason}");
                return Ok(EXIT_RUNTIME);
            }
            Ok(EXIT_OK)
        }
        Command::VerifyBounds { c, delta, g_exp, n } => {
            let report = verify_bounds(*c, *delta, *g_exp, *n, cli.trials, cli.seed, cli.threads)?;
            emit(cli, stdout, |w| {
                if cli.out == OutputFormat::Json {
                    serde_json::to_writer_pretty(&mut *w, &report)?;
                    writeln!(w)?;
                    return Ok(());
                }
                let r = &report.report;
                writeln!(w, "N={} c={} delta={} g_exp={} trials={}", r.n, r.c, r.delta, r.g_exp, cli.trials)?;
                writeln!(
                    w,
                    "cardinality: interval=[{:.3}, {:.3}] empirical={} bound P1={} violation={}",
                    r.card_interval.0, r.card_interval.1, report.cardinality.rate, r.p1, report.cardinality.violation
                )?;
                writeln!(
                    w,
                    "collisions: threshold={:.3} empirical={} bound P2={} violation={}",
                    r.y_threshold, report.collisions.rate, r.p2, report.collisions.violation
                )?;
                Ok(())
            })?;
            Ok(if report.any_violation() { EXIT_CHECK_FAILED } else { EXIT_OK })
        }
    }
}
