use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::TrialRecord;
use crate::predict::PredictionBundle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatSummary {
    pub count: u64,
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation over `sqrt(n)`).
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
}

/// Linearly interpolated quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(&next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}

impl StatSummary {
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            count: values.len() as u64,
            mean,
            std_error: (var / n).sqrt(),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            q05: quantile(&sorted, 0.05),
            q50: quantile(&sorted, 0.5),
            q95: quantile(&sorted, 0.95),
        })
    }
}

/// Summary of all trials at one `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: u64,
    pub p: f64,
    pub stats: BTreeMap<String, StatSummary>,
    pub prediction: Option<PredictionBundle>,
    /// `(mean - predicted) / predicted` for every statistic with a prediction.
    pub relative_error: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SummaryStats {
    pub per_n: Vec<SizeSummary>,
}

impl SummaryStats {
    pub fn get(&self, n: u64) -> Option<&SizeSummary> {
        self.per_n.iter().find(|s| s.n == n)
    }
}

/// Named scalar columns of a record, in a fixed order.
pub fn scalar_columns(r: &TrialRecord) -> Vec<(String, f64)> {
    let mut out = vec![("set_size".to_string(), r.set_size as f64)];
    let mut push = |name: &str, v: Option<u64>| {
        if let Some(v) = v {
            out.push((name.to_string(), v as f64));
        }
    };
    push("sumset_size", r.sumset_size);
    push("diffset_size", r.diffset_size);
    push("missing_sums", r.missing_sums);
    push("missing_diffs", r.missing_diffs);
    if let (Some(s), Some(d)) = (r.sumset_size, r.diffset_size) {
        if s > 0 {
            out.push(("diff_sum_ratio".into(), d as f64 / s as f64));
        }
    }
    for f in &r.forms {
        out.push((format!("image_{}", f.form.ident()), f.image_size as f64));
        out.push((format!("missing_{}", f.form.ident()), f.missing as f64));
    }
    if let Some(y) = r.y {
        out.push(("y".into(), y as f64));
    }
    out
}

fn predicted_values(b: &PredictionBundle) -> Vec<(String, f64)> {
    let mut out = vec![
        ("sumset_size".to_string(), b.s_pred),
        ("diffset_size".to_string(), b.d_pred),
        ("missing_sums".to_string(), b.sc_pred),
        ("missing_diffs".to_string(), b.dc_pred),
    ];
    for f in &b.forms {
        if let Some(v) = f.df_pred {
            out.push((format!("image_{}", f.form.ident()), v));
        }
        if let Some(v) = f.dfc_pred {
            out.push((format!("missing_{}", f.form.ident()), v));
        }
    }
    out
}

/// Summarises records that all share `n`.
pub fn summarise(n: u64, p: f64, records: &[TrialRecord], prediction: Option<PredictionBundle>) -> SizeSummary {
    let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in records {
        for (name, v) in scalar_columns(r) {
            columns.entry(name).or_default().push(v);
        }
    }
    let stats: BTreeMap<String, StatSummary> = columns
        .into_iter()
        .filter_map(|(k, v)| StatSummary::from_values(&v).map(|s| (k, s)))
        .collect();
    let mut relative_error = BTreeMap::new();
    if let Some(b) = &prediction {
        for (name, pred) in predicted_values(b) {
            if let Some(s) = stats.get(&name) {
                if pred != 0.0 {
                    relative_error.insert(name, (s.mean - pred) / pred);
                }
            }
        }
    }
    SizeSummary {
        n,
        p,
        stats,
        prediction,
        relative_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_summary() {
        let s = StatSummary::from_values(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.mean, 3.0);
        assert!((s.std_error - (2.5f64 / 5.0).sqrt()).abs() < 1e-15);
        assert_eq!((s.min, s.q50, s.max), (1.0, 3.0, 5.0));
        assert!((s.q05 - 1.2).abs() < 1e-12 && (s.q95 - 4.8).abs() < 1e-12);
        assert!(StatSummary::from_values(&[]).is_none());
        let one = StatSummary::from_values(&[7.0]).unwrap();
        assert_eq!((one.std_error, one.q05, one.q95), (0.0, 7.0, 7.0));
    }
}
