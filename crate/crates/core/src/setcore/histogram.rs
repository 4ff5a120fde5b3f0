use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bitset::IntegerSet;
use super::form::LinearForm;
use super::ops::ENUMERATION_BUDGET;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HistKind {
    /// Unordered pairs `{a, b}` (repetition allowed) keyed by `a + b`.
    Sum,
    /// Ordered pairs `(a, b)` keyed by `a - b`.
    Diff,
    /// Ordered tuples keyed by the form value, diagonal included.
    Form,
}

/// Representation counts `R(n)` over a contiguous value domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepHistogram {
    kind: HistKind,
    form: Option<LinearForm>,
    domain_lo: i64,
    counts: Vec<u64>,
}

impl RepHistogram {
    pub fn kind(&self) -> HistKind {
        self.kind
    }

    pub fn form(&self) -> Option<&LinearForm> {
        self.form.as_ref()
    }

    pub fn domain_lo(&self) -> i64 {
        self.domain_lo
    }

    pub fn domain_hi(&self) -> i64 {
        self.domain_lo + self.counts.len() as i64 - 1
    }

    /// `R(value)`; zero outside the domain.
    pub fn get(&self, value: i64) -> u64 {
        if value < self.domain_lo {
            return 0;
        }
        self.counts
            .get((value - self.domain_lo) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// `(value, R(value))` for every value with `R(value) >= 1`.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| (self.domain_lo + i as i64, c))
    }

    /// Values that enter the collision statistics: everything except the zero
    /// difference for the `Diff` kind.
    fn effective(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let skip_zero = self.kind == HistKind::Diff;
        self.nonzero().filter(move |&(v, _)| !(skip_zero && v == 0))
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Number of values with at least one representation.
    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Builds the representation histogram of `a` for the given operation.
///
/// `form` is required for [`HistKind::Form`] and ignored otherwise.
pub fn rep_histogram(a: &IntegerSet, kind: HistKind, form: Option<&LinearForm>) -> Result<RepHistogram> {
    let n = a.len();
    let arity = match kind {
        HistKind::Form => form
            .ok_or_else(|| Error::Usage("form histogram requires a linear form".into()))?
            .arity(),
        _ => 2,
    };
    if (n as f64).powi(arity as i32) > ENUMERATION_BUDGET {
        return Err(Error::Resource(format!(
            "|A|^{arity} = {n}^{arity} exceeds the enumeration budget of 1e10"
        )));
    }
    let members = a.to_vec();
    match kind {
        HistKind::Sum => {
            let lo = 2 * a.lo();
            let mut counts = vec![0u64; 2 * (a.hi() - a.lo()) as usize + 1];
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i..] {
                    counts[(x + y - lo) as usize] += 1;
                }
            }
            Ok(RepHistogram {
                kind,
                form: None,
                domain_lo: lo,
                counts,
            })
        }
        HistKind::Diff => {
            let w = a.hi() - a.lo();
            let mut counts = vec![0u64; 2 * w as usize + 1];
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[..i] {
                    let d = (x - y) as usize;
                    counts[w as usize + d] += 1;
                    counts[w as usize - d] += 1;
                }
            }
            counts[w as usize] = n as u64;
            Ok(RepHistogram {
                kind,
                form: None,
                domain_lo: -w,
                counts,
            })
        }
        HistKind::Form => {
            let form = form.expect("checked above");
            let (lo, hi) = form.image_domain(a.lo(), a.hi());
            if let [u, v] = *form.coeffs() {
                let mut counts = vec![0u64; (hi - lo) as usize + 1];
                for &x in &members {
                    let base = u * x - lo;
                    for &y in &members {
                        counts[(base + v * y) as usize] += 1;
                    }
                }
                return Ok(RepHistogram {
                    kind,
                    form: Some(form.clone()),
                    domain_lo: lo,
                    counts,
                });
            }
            // ordered tuples counted by iterated convolution over the coefficients
            let mut cur: Vec<(i64, u64)> = members.iter().map(|&x| (form.coeffs()[0] * x, 1)).collect();
            for &u in &form.coeffs()[1..] {
                let mut next = BTreeMap::new();
                for &(s, c) in &cur {
                    for &x in &members {
                        *next.entry(s + u * x).or_insert(0u64) += c;
                    }
                }
                cur = next.into_iter().collect();
            }
            let mut counts = vec![0u64; (hi - lo) as usize + 1];
            for (s, c) in cur {
                counts[(s - lo) as usize] += c;
            }
            Ok(RepHistogram {
                kind,
                form: Some(form.clone()),
                domain_lo: lo,
                counts,
            })
        }
    }
}

/// `C(r, k)` in exact arithmetic.
pub fn binomial(r: u64, k: u64) -> Result<u128> {
    if k > r {
        return Ok(0);
    }
    let k = k.min(r - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (r - i) is divisible by (i + 1) after the multiplication
        acc = acc
            .checked_mul((r - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `X_k = sum_v C(R(v), k)`, skipping `v = 0` for difference histograms.
pub fn tuple_statistic(h: &RepHistogram, k: u64) -> Result<u128> {
    if k == 0 {
        return Err(Error::Parameter("tuple size k must be at least 1".into()));
    }
    h.effective().try_fold(0u128, |acc, (_, r)| {
        acc.checked_add(binomial(r, k)?)
            .ok_or(Error::Overflow("tuple statistic"))
    })
}

/// `tau_i`: how many effective values have exactly `i` representations.
pub fn multiplicity_profile(h: &RepHistogram) -> BTreeMap<u64, u64> {
    let mut profile = BTreeMap::new();
    for (_, r) in h.effective() {
        *profile.entry(r).or_insert(0) += 1;
    }
    profile
}

/// Same-difference collisions among pairs with positive difference:
/// `sum_{d > 0} C(R(d), 2)`.
pub fn coincident_difference_pairs(a: &IntegerSet) -> Result<u128> {
    let h = rep_histogram(a, HistKind::Diff, None)?;
    let both_signs = tuple_statistic(&h, 2)?;
    Ok(both_signs / 2)
}
