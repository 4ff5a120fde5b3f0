//! Binomial random subsets of `{0, ..., N}` and the `p(N)` families.
//!
//! Sampling is counter based: the decision for element `n` in trial `t` under
//! seed `s` is the `n`-th 64-bit output of ChaCha8 keyed by `s` on stream `t`.
//! A trial is therefore a pure function of `(s, t, N, p)`, whichever thread
//! runs it and in whatever order trials are scheduled.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::IntegerSet;

/// Name of the generator recorded in experiment metadata.
pub const GENERATOR_NAME: &str = "chacha8-counter/seed_from_u64+stream=trial+word=element";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PFamily {
    /// A fixed probability, the same for every `N`.
    ExplicitP { p: f64 },
    /// `p(N) = c N^(-delta)`.
    PowerLaw { c: f64, delta: f64 },
}

impl PFamily {
    pub fn explicit(p: f64) -> Self {
        PFamily::ExplicitP { p }
    }

    pub fn power_law(c: f64, delta: f64) -> Self {
        PFamily::PowerLaw { c, delta }
    }

    pub fn delta(&self) -> Option<f64> {
        match *self {
            PFamily::PowerLaw { delta, .. } => Some(delta),
            PFamily::ExplicitP { .. } => None,
        }
    }
}

/// Evaluates the family at `n`, rejecting values outside `(0, 1)`.
pub fn p_of(family: &PFamily, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("N must be positive".into()));
    }
    let p = match *family {
        PFamily::ExplicitP { p } => p,
        PFamily::PowerLaw { c, delta } => {
            if !(c > 0.0) || !delta.is_finite() {
                return Err(Error::Parameter(format!("power law needs c > 0, got c={c}, delta={delta}")));
            }
            c * (n as f64).powf(-delta)
        }
    };
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!("p(N={n}) = {p} is not in (0, 1)")));
    }
    Ok(p)
}

/// Identifies one sampled set under a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplerSeed {
    pub seed: u64,
    pub trial_index: u64,
}

impl SamplerSeed {
    pub fn new(seed: u64, trial_index: u64) -> Self {
        Self { seed, trial_index }
    }
}

fn stream(key: SamplerSeed) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(key.seed);
    rng.set_stream(key.trial_index);
    rng
}

/// Inclusion threshold: element kept iff its 64-bit word is below this.
fn threshold(p: f64) -> u64 {
    // 2^64 * p, exact for dyadic p and within one ulp of p otherwise
    (p * 18_446_744_073_709_551_616.0) as u64
}

/// The pseudorandom word deciding element `n`, computed by random access.
pub fn element_word(key: SamplerSeed, n: u64) -> u64 {
    let mut rng = stream(key);
    // word positions count 32-bit words
    rng.set_word_pos(2 * n as u128);
    rng.next_u64()
}

/// Draws `A` from `{0, ..., n}`, keeping each element independently with
/// probability `p`.
pub fn sample(n: u64, p: f64, key: SamplerSeed) -> Result<IntegerSet> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!("p = {p} is not in (0, 1)")));
    }
    let cut = threshold(p);
    let mut rng = stream(key);
    let width = n as usize + 1;
    let mut words = vec![0u64; width.div_ceil(64)];
    for (wi, word) in words.iter_mut().enumerate() {
        let bits = (width - wi * 64).min(64);
        let mut w = 0u64;
        for b in 0..bits {
            w |= ((rng.next_u64() < cut) as u64) << b;
        }
        *word = w;
    }
    let set = IntegerSet::from_words(0, n as i64, words);
    Ok(set)
}
