//! Exact set arithmetic and collision statistics for finite integer sets.

mod bitset;
mod form;
mod histogram;
mod ops;

use serde::{Deserialize, Serialize};

pub use bitset::IntegerSet;
pub use form::{FormKind, LinearForm};
pub use histogram::{
    binomial, coincident_difference_pairs, multiplicity_profile, rep_histogram, tuple_statistic, HistKind,
    RepHistogram,
};
pub use ops::{diffset, form_image, minkowski_sum, sumset, ENUMERATION_BUDGET};

use crate::error::Result;

/// Shorthand for [`IntegerSet::from_elements`].
pub fn make_set(elements: &[i64], lo: i64, hi: i64) -> Result<IntegerSet> {
    IntegerSet::from_elements(elements, lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetClass {
    SumDominated,
    Balanced,
    DifferenceDominated,
}

impl std::fmt::Display for SetClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SetClass::SumDominated => "sum-dominated",
            SetClass::Balanced => "balanced",
            SetClass::DifferenceDominated => "difference-dominated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: SetClass,
    pub sumset_size: u64,
    pub diffset_size: u64,
    /// `(2N + 1) - |A + A|`
    pub missing_sums: u64,
    /// `(2N + 1) - |A - A|`
    pub missing_diffs: u64,
}

/// Compares `|A + A|` with `|A - A|` for `A` inside `[lo, lo + N]`.
pub fn classify(a: &IntegerSet) -> Classification {
    let s = sumset(a).len() as u64;
    let d = diffset(a).len() as u64;
    let possible = 2 * (a.hi() - a.lo()) as u64 + 1;
    let label = match s.cmp(&d) {
        std::cmp::Ordering::Greater => SetClass::SumDominated,
        std::cmp::Ordering::Equal => SetClass::Balanced,
        std::cmp::Ordering::Less => SetClass::DifferenceDominated,
    };
    Classification {
        label,
        sumset_size: s,
        diffset_size: d,
        missing_sums: possible - s,
        missing_diffs: possible - d,
    }
}
