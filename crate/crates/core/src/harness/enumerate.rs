//! Exhaustive classification of every subset of `{0, ..., N}`.
//!
//! A subset is a bitmask; `A+A` and the non-negative half of `A-A` are built
//! with one shift-OR per member, which fits in a `u64` for `N <= 26`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::SetClass;

pub const MAX_ENUMERATION_N: u64 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EnumerationCounts {
    pub n: u64,
    pub sum_dominated: u64,
    pub balanced: u64,
    pub difference_dominated: u64,
}

impl EnumerationCounts {
    pub fn total(&self) -> u64 {
        self.sum_dominated + self.balanced + self.difference_dominated
    }

    fn add(mut self, other: Self) -> Self {
        self.sum_dominated += other.sum_dominated;
        self.balanced += other.balanced;
        self.difference_dominated += other.difference_dominated;
        self
    }
}

/// `(|A+A|, |A-A|)` of the subset with bitmask `mask`.
pub fn mask_sizes(mask: u64) -> (u32, u32) {
    if mask == 0 {
        return (0, 0);
    }
    let (mut sums, mut diffs) = (0u64, 0u64);
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        sums |= mask << i;
        diffs |= mask >> i;
    }
    (sums.count_ones(), 2 * diffs.count_ones() - 1)
}

pub fn mask_class(mask: u64) -> SetClass {
    let (s, d) = mask_sizes(mask);
    match s.cmp(&d) {
        std::cmp::Ordering::Greater => SetClass::SumDominated,
        std::cmp::Ordering::Equal => SetClass::Balanced,
        std::cmp::Ordering::Less => SetClass::DifferenceDominated,
    }
}

fn check_n(n: u64) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Resource(format!(
            "exhaustive enumeration needs N <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Counts sum-dominated, balanced and difference-dominated subsets among all
/// `2^(N+1)` subsets (the empty set counts as balanced).
pub fn enumerate_exhaustive(n: u64) -> Result<EnumerationCounts> {
    check_n(n)?;
    let counts = (0..1u64 << (n + 1))
        .into_par_iter()
        .fold(EnumerationCounts::default, |mut acc, mask| {
            match mask_class(mask) {
                SetClass::SumDominated => acc.sum_dominated += 1,
                SetClass::Balanced => acc.balanced += 1,
                SetClass::DifferenceDominated => acc.difference_dominated += 1,
            }
            acc
        })
        .reduce(EnumerationCounts::default, EnumerationCounts::add);
    Ok(EnumerationCounts { n, ..counts })
}

/// Every sum-dominated subset of `{0, ..., N}`, in increasing mask order.
pub fn sum_dominated_sets(n: u64) -> Result<Vec<Vec<i64>>> {
    check_n(n)?;
    let masks: Vec<u64> = (0..1u64 << (n + 1))
        .into_par_iter()
        .filter(|&m| mask_class(m) == SetClass::SumDominated)
        .collect();
    Ok(masks
        .into_iter()
        .map(|m| (0..=n as i64).filter(|&i| m >> i & 1 == 1).collect())
        .collect())
}
