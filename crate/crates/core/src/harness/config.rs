use std::num::NonZeroUsize;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::randmodel::PFamily;
use crate::setcore::LinearForm;

/// Largest `k` for which `X_k` statistics are collected.
pub const MAX_TUPLE_ORDER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Usage(format!("unknown output format {other:?} (csv|json)"))),
        }
    }
}

/// Worker count: `"auto"` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "ThreadSpec", into = "ThreadSpec")]
pub enum Threads {
    #[default]
    Auto,
    Count(NonZeroUsize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThreadSpec {
    Count(usize),
    Word(String),
}

impl TryFrom<ThreadSpec> for Threads {
    type Error = Error;

    fn try_from(spec: ThreadSpec) -> Result<Self> {
        match spec {
            ThreadSpec::Count(n) => NonZeroUsize::new(n)
                .map(Threads::Count)
                .ok_or_else(|| Error::Usage("threads must be positive".into())),
            ThreadSpec::Word(w) => w.parse(),
        }
    }
}

impl From<Threads> for ThreadSpec {
    fn from(t: Threads) -> Self {
        match t {
            Threads::Auto => ThreadSpec::Word("auto".into()),
            Threads::Count(n) => ThreadSpec::Count(n.get()),
        }
    }
}

impl std::str::FromStr for Threads {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        s.parse::<usize>()
            .ok()
            .and_then(NonZeroUsize::new)
            .map(Threads::Count)
            .ok_or_else(|| Error::Usage(format!("threads must be \"auto\" or a positive integer, got {s:?}")))
    }
}

/// Which measurements each trial records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Statistics {
    /// `|A+A|` and `|A-A|`.
    pub sizes: bool,
    /// `(2N+1) - |A+A|` and `(2N+1) - |A-A|`.
    pub missing: bool,
    /// Collect `X_1..X_k`, `X'_1..X'_k` (and per-form counts) up to this `k`.
    pub xk: Option<u32>,
    pub forms: Vec<LinearForm>,
    /// Same-difference collisions `sum_{d>0} C(R(d), 2)`.
    pub y: bool,
}

impl Default for Statistics {
    fn default() -> Self {
        Self {
            sizes: true,
            missing: true,
            xk: None,
            forms: Vec::new(),
            y: false,
        }
    }
}

impl Statistics {
    pub(crate) fn needs_sets(&self) -> bool {
        self.sizes || self.missing || self.xk.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_list: Vec<u64>,
    pub family: PFamily,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub statistics: Statistics,
    #[serde(default = "default_output")]
    pub output: OutputFormat,
    #[serde(default)]
    pub threads: Threads,
}

fn default_output() -> OutputFormat {
    OutputFormat::Csv
}

impl ExperimentConfig {
    pub fn new(n_list: Vec<u64>, family: PFamily, trials: u64, seed: u64) -> Self {
        Self {
            n_list,
            family,
            trials,
            seed,
            statistics: Statistics::default(),
            output: OutputFormat::Csv,
            threads: Threads::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return Err(Error::Parameter("n_list must hold positive integers".into()));
        }
        if let Some(k) = self.statistics.xk {
            if !(1..=MAX_TUPLE_ORDER).contains(&k) {
                return Err(Error::Parameter(format!("xk must lie in 1..={MAX_TUPLE_ORDER}, got {k}")));
            }
        }
        for &n in &self.n_list {
            crate::randmodel::p_of(&self.family, n)?;
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = ExperimentConfig::from_json_str(
            r#"{
                "n_list": [1000, 2000],
                "family": {"kind": "power-law", "c": 1.0, "delta": 0.5},
                "trials": 10,
                "seed": 7,
                "statistics": {"sizes": true, "missing": false, "xk": 3, "forms": [[2, -1]], "y": true},
                "output": "json",
                "threads": "auto"
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.statistics.forms, vec![LinearForm::binary(2, -1).unwrap()]);
        assert_eq!(cfg.threads, Threads::Auto);
        assert_eq!(cfg.output, OutputFormat::Json);
        let back: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = r#""family": {"kind": "explicit-p", "p": 0.5}, "n_list": [10]"#;
        assert!(ExperimentConfig::from_json_str(&format!("{{{base}, \"trials\": 0}}")).is_err());
        assert!(ExperimentConfig::from_json_str(&format!("{{{base}, \"trials\": 1, \"bogus\": 1}}")).is_err());
        assert!(ExperimentConfig::from_json_str(&format!(
            "{{{base}, \"trials\": 1, \"statistics\": {{\"xk\": 9}}}}"
        ))
        .is_err());
        assert!(ExperimentConfig::from_json_str(&format!(
            "{{{base}, \"trials\": 1, \"statistics\": {{\"forms\": [[2, -4]]}}}}"
        ))
        .is_err());
        assert!(ExperimentConfig::from_json_str(&format!("{{{base}, \"trials\": 1, \"threads\": 0}}")).is_err());
        let ok = ExperimentConfig::from_json_str(&format!("{{{base}, \"trials\": 1, \"threads\": 4}}")).unwrap();
        assert_eq!(ok.threads, Threads::Count(NonZeroUsize::new(4).unwrap()));
    }
}
