//! CSV and JSON artifacts. Column order and field names are part of schema
//! version [`SCHEMA_VERSION`].

use std::io::Write;

use serde::Serialize;

use super::config::{ExperimentConfig, OutputFormat};
use super::experiment::ExperimentRun;
use super::record::TrialRecord;
use super::stats::SummaryStats;
use crate::error::Result;
use crate::randmodel::GENERATOR_NAME;

pub const SCHEMA_VERSION: u32 = 1;

/// Floats with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header row for records produced under `config`.
pub fn csv_header(config: &ExperimentConfig) -> Vec<String> {
    let stats = &config.statistics;
    let mut h: Vec<String> = ["schema_version", "N", "p", "trial_index", "set_size"]
        .map(String::from)
        .to_vec();
    if stats.sizes {
        h.extend(["sumset_size".into(), "diffset_size".into()]);
    }
    if stats.missing {
        h.extend(["missing_sums".into(), "missing_diffs".into()]);
    }
    for f in &stats.forms {
        h.push(format!("image_{}", f.ident()));
        h.push(format!("missing_{}", f.ident()));
    }
    if let Some(k) = stats.xk {
        h.extend((1..=k).map(|j| format!("X_{j}")));
        h.extend((1..=k).map(|j| format!("Xd_{j}")));
        for f in &stats.forms {
            h.extend((1..=k).map(|j| format!("Xf_{}_{j}", f.ident())));
        }
    }
    if stats.y {
        h.push("Y".into());
    }
    h
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(config: &ExperimentConfig, r: &TrialRecord) -> Vec<String> {
    let stats = &config.statistics;
    let mut row = vec![
        SCHEMA_VERSION.to_string(),
        r.n.to_string(),
        format_float(r.p),
        r.trial_index.to_string(),
        r.set_size.to_string(),
    ];
    if stats.sizes {
        row.extend([opt(r.sumset_size), opt(r.diffset_size)]);
    }
    if stats.missing {
        row.extend([opt(r.missing_sums), opt(r.missing_diffs)]);
    }
    for f in &r.forms {
        row.push(f.image_size.to_string());
        row.push(f.missing.to_string());
    }
    if stats.xk.is_some() {
        let all = |xs: &Option<Vec<u128>>| xs.iter().flatten().map(|x| x.to_string()).collect::<Vec<_>>();
        row.extend(all(&r.xk_sum));
        row.extend(all(&r.xk_diff));
        for f in &r.forms {
            row.extend(all(&f.xk));
        }
    }
    if stats.y {
        row.push(r.y.map(|y| y.to_string()).unwrap_or_default());
    }
    row
}

/// One header row and one row per record, LF-terminated.
pub fn write_csv<W: Write>(out: W, config: &ExperimentConfig, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(csv_header(config))?;
    for r in records {
        w.write_record(csv_row(config, r))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Metadata<'a> {
    schema_version: u32,
    seed: u64,
    generator: &'a str,
    wall_time_seconds: f64,
    config: &'a ExperimentConfig,
}

#[derive(Serialize)]
struct JsonArtifact<'a> {
    schema_version: u32,
    metadata: Metadata<'a>,
    records: &'a [TrialRecord],
    summary: &'a SummaryStats,
    aborted: &'a Option<String>,
}

/// Records, summary and metadata as one JSON document.
///
/// `wall_time_seconds` is the only field that varies between identical runs.
pub fn write_json<W: Write>(mut out: W, config: &ExperimentConfig, run: &ExperimentRun, wall_time: f64) -> Result<()> {
    let doc = JsonArtifact {
        schema_version: SCHEMA_VERSION,
        metadata: Metadata {
            schema_version: SCHEMA_VERSION,
            seed: config.seed,
            generator: GENERATOR_NAME,
            wall_time_seconds: wall_time,
            config,
        },
        records: &run.records,
        summary: &run.summary,
        aborted: &run.aborted,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Writes `run` in the format the config asks for.
pub fn write_run<W: Write>(out: W, config: &ExperimentConfig, run: &ExperimentRun, wall_time: f64) -> Result<()> {
    match config.output {
        OutputFormat::Csv => write_csv(out, config, &run.records),
        OutputFormat::Json => write_json(out, config, run, wall_time),
    }
}
