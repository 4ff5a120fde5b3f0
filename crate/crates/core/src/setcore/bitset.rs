use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A subset of the integer interval `[lo, hi]`, stored as a dense bit vector.
///
/// Bit `i` of the vector stands for the integer `lo + i`. Bits past the end of
/// the interval are always zero, so word-level popcounts and equality are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    lo: i64,
    hi: i64,
    words: Vec<u64>,
    count: usize,
}

pub(crate) fn words_for(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

impl IntegerSet {
    /// The empty subset of `[lo, hi]`.
    pub fn empty(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parameter(format!("empty interval [{lo}, {hi}]")));
        }
        let width = (hi - lo) as usize + 1;
        Ok(Self {
            lo,
            hi,
            words: vec![0; words_for(width)],
            count: 0,
        })
    }

    /// Every integer of `[lo, hi]`.
    pub fn full(lo: i64, hi: i64) -> Result<Self> {
        let mut set = Self::empty(lo, hi)?;
        set.words.iter_mut().for_each(|w| *w = u64::MAX);
        set.clear_tail();
        set.recount();
        Ok(set)
    }

    /// Builds the set of distinct `elements` inside `[lo, hi]`.
    ///
    /// Order and duplicates in `elements` do not matter.
    pub fn from_elements(elements: &[i64], lo: i64, hi: i64) -> Result<Self> {
        let mut set = Self::empty(lo, hi)?;
        for &value in elements {
            if value < lo || value > hi {
                return Err(Error::Range { value, lo, hi });
            }
            let i = (value - lo) as usize;
            set.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        set.recount();
        Ok(set)
    }

    /// Wraps raw words. Bits past the interval are cleared.
    pub(crate) fn from_words(lo: i64, hi: i64, mut words: Vec<u64>) -> Self {
        let width = (hi - lo) as usize + 1;
        words.resize(words_for(width), 0);
        let mut set = Self {
            lo,
            hi,
            words,
            count: 0,
        };
        set.clear_tail();
        set.recount();
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.width() % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of integers in the underlying interval.
    pub fn width(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, value: i64) -> bool {
        if value < self.lo || value > self.hi {
            return false;
        }
        let i = (value - self.lo) as usize;
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit offsets (value minus `lo`) of the members, ascending.
    pub(crate) fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.offsets().map(move |i| self.lo + i as i64)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    /// `{ factor * a : a in self }` over the dilated interval.
    pub fn dilate(&self, factor: i64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::Parameter("dilation by zero".into()));
        }
        let (lo, hi) = if factor > 0 {
            (factor * self.lo, factor * self.hi)
        } else {
            (factor * self.hi, factor * self.lo)
        };
        let mut out = Self::empty(lo, hi)?;
        for a in self.iter() {
            let i = (factor * a - lo) as usize;
            out.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        out.count = self.count;
        Ok(out)
    }
}

impl fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerSet[{}, {}]", self.lo, self.hi)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `dst |= src << shift`, with `dst` indexed from the same origin as `src`.
/// Bits shifted past the end of `dst` are dropped.
pub(crate) fn or_shifted_left(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if ws >= dst.len() || src.is_empty() {
        return;
    }
    let dst = &mut dst[ws..];
    let n = src.len().min(dst.len());
    if bs == 0 {
        for (d, s) in dst.iter_mut().zip(&src[..n]) {
            *d |= *s;
        }
        return;
    }
    dst[0] |= src[0] << bs;
    for (d, w) in dst[1..n].iter_mut().zip(src[..n].windows(2)) {
        *d |= (w[1] << bs) | (w[0] >> (WORD_BITS - bs));
    }
    if n < dst.len() {
        dst[n] |= src[n - 1] >> (WORD_BITS - bs);
    }
}

/// `dst |= src >> shift`: bit `k` of `dst` receives bit `k + shift` of `src`.
pub(crate) fn or_shifted_right(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if ws >= src.len() {
        return;
    }
    let src = &src[ws..];
    let n = src.len().min(dst.len());
    if bs == 0 {
        for (d, s) in dst.iter_mut().zip(&src[..n]) {
            *d |= *s;
        }
        return;
    }
    for (d, w) in dst[..n].iter_mut().zip(src.windows(2)) {
        *d |= (w[0] >> bs) | (w[1] << (WORD_BITS - bs));
    }
    if n == src.len() {
        dst[n - 1] |= src[n - 1] >> bs;
    }
}
