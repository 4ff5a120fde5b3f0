//! Experiments: configuration, deterministic parallel Monte Carlo,
//! exhaustive enumeration, bound checks, artifacts and the command line.

pub mod cli;
mod config;
mod crossover;
mod enumerate;
mod experiment;
mod output;
mod record;
mod stats;
mod verify;

pub use config::{ExperimentConfig, OutputFormat, Statistics, Threads, MAX_TUPLE_ORDER};
pub use crossover::{empirical_crossover, locate_crossing, CrossoverEstimate, CrossoverPoint, CrossoverReport};
pub use enumerate::{
    enumerate_exhaustive, mask_class, mask_sizes, sum_dominated_sets, EnumerationCounts, MAX_ENUMERATION_N,
};
pub use experiment::{estimate_pair_operations, run_experiment, with_threads, ExperimentRun};
pub use output::{csv_header, format_float, write_csv, write_json, write_run, SCHEMA_VERSION};
pub use record::{bonferroni_gap, run_trial, trial_key, FormRecord, TrialRecord};
pub use stats::{scalar_columns, summarise, SizeSummary, StatSummary, SummaryStats};
pub use verify::{verify_bounds, FailureRate, VerifyReport};
