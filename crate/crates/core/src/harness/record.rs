use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::randmodel::{p_of, sample, SamplerSeed};
use crate::setcore::{
    diffset, form_image, rep_histogram, sumset, tuple_statistic, HistKind, IntegerSet, LinearForm,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub form: LinearForm,
    pub image_size: u64,
    /// `(sum |u_i|) N + 1 - |f(A)|`
    pub missing: u64,
    /// `X'_{1,f}..X'_{k,f}` over ordered tuples.
    pub xk: Option<Vec<u128>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: u64,
    pub p: f64,
    pub trial_index: u64,
    pub set_size: u64,
    pub sumset_size: Option<u64>,
    pub diffset_size: Option<u64>,
    pub missing_sums: Option<u64>,
    pub missing_diffs: Option<u64>,
    pub forms: Vec<FormRecord>,
    /// `X_1..X_k` of the sum histogram.
    pub xk_sum: Option<Vec<u128>>,
    /// `X'_1..X'_k` of the difference histogram.
    pub xk_diff: Option<Vec<u128>>,
    pub y: Option<u128>,
}

/// Sampler key for trial `trial_index` at size `n` under a master seed.
///
/// `n` is mixed into the seed so that different sizes in one sweep use
/// unrelated streams.
pub fn trial_key(seed: u64, n: u64, trial_index: u64) -> SamplerSeed {
    // splitmix64 finaliser
    let mut z = seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    SamplerSeed::new(z ^ (z >> 31), trial_index)
}

/// Signed gap between a union size and its alternating partial sum:
/// `size - base - sum_{j<=m} (-1)^(j-1) X_j`, with the bound `X_m` it must
/// respect in absolute value.
pub fn bonferroni_gap(size: u64, base: u64, xs: &[u128], m: usize) -> (i128, u128) {
    let partial: i128 = xs[..m]
        .iter()
        .enumerate()
        .map(|(j, &x)| if j % 2 == 0 { x as i128 } else { -(x as i128) })
        .sum();
    (size as i128 - base as i128 - partial, xs[m - 1])
}

fn check_bonferroni(what: &str, size: u64, base: u64, xs: &[u128]) -> Result<()> {
    for m in 1..=xs.len() {
        let (gap, bound) = bonferroni_gap(size, base, xs, m);
        if gap.unsigned_abs() > bound {
            return Err(Error::Invariant(format!(
                "{what}: |size - partial sum| = {} exceeds X_{m} = {bound}",
                gap.unsigned_abs()
            )));
        }
    }
    Ok(())
}

fn check_sizes(a: usize, s: u64, d: u64) -> Result<()> {
    let a = a as u64;
    let ok = if a == 0 {
        s == 0 && d == 0
    } else {
        d % 2 == 1
            && (2 * a - 1..=a * (a + 1) / 2).contains(&s)
            && (2 * a - 1..=a * (a - 1) + 1).contains(&d)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(format!("|A| = {a}, |A+A| = {s}, |A-A| = {d} are inconsistent")))
    }
}

fn statistics_upto(a: &IntegerSet, kind: HistKind, form: Option<&LinearForm>, k: u32) -> Result<Vec<u128>> {
    let h = rep_histogram(a, kind, form)?;
    (1..=k as u64).map(|j| tuple_statistic(&h, j)).collect()
}

/// Measures one sampled set. Deterministic in `(config.seed, n, trial_index)`.
pub fn run_trial(config: &ExperimentConfig, n: u64, trial_index: u64) -> Result<TrialRecord> {
    let p = p_of(&config.family, n)?;
    let a = sample(n, p, trial_key(config.seed, n, trial_index))?;
    measure(&a, n, p, trial_index, config)
}

pub(crate) fn measure(
    a: &IntegerSet,
    n: u64,
    p: f64,
    trial_index: u64,
    config: &ExperimentConfig,
) -> Result<TrialRecord> {
    let stats = &config.statistics;
    let possible = 2 * n + 1;
    let sizes = if stats.needs_sets() {
        let s = sumset(a).len() as u64;
        let d = diffset(a).len() as u64;
        check_sizes(a.len(), s, d)?;
        Some((s, d))
    } else {
        None
    };

    let (mut xk_sum, mut xk_diff) = (None, None);
    if let Some(k) = stats.xk {
        let (s, d) = sizes.expect("sizes are measured whenever xk is requested");
        let xs = statistics_upto(a, HistKind::Sum, None, k)?;
        let xd = statistics_upto(a, HistKind::Diff, None, k)?;
        check_bonferroni("A+A", s, 0, &xs)?;
        check_bonferroni("A-A", d, (!a.is_empty()) as u64, &xd)?;
        xk_sum = Some(xs);
        xk_diff = Some(xd);
    }

    let mut forms = Vec::with_capacity(stats.forms.len());
    for form in &stats.forms {
        let image = form_image(a, form)?.len() as u64;
        let span = form.span_count(n);
        let xk = match stats.xk {
            Some(k) => {
                let xf = statistics_upto(a, HistKind::Form, Some(form), k)?;
                check_bonferroni(&format!("f(A) for {form}"), image, 0, &xf)?;
                Some(xf)
            }
            None => None,
        };
        forms.push(FormRecord {
            form: form.clone(),
            image_size: image,
            missing: span - image,
            xk,
        });
    }

    let y = if stats.y {
        let value = match &xk_diff {
            Some(xd) if xd.len() >= 2 => xd[1] / 2,
            _ => crate::setcore::coincident_difference_pairs(a)?,
        };
        Some(value)
    } else {
        None
    };

    Ok(TrialRecord {
        n,
        p,
        trial_index,
        set_size: a.len() as u64,
        sumset_size: sizes.filter(|_| stats.sizes).map(|(s, _)| s),
        diffset_size: sizes.filter(|_| stats.sizes).map(|(_, d)| d),
        missing_sums: sizes.filter(|_| stats.missing).map(|(s, _)| possible - s),
        missing_diffs: sizes.filter(|_| stats.missing).map(|(_, d)| possible - d),
        forms,
        xk_sum,
        xk_diff,
        y,
    })
}
