//! Bit-parallel sumset, difference set and form-image kernels.
//!
//! Every kernel is a shift-accumulate: for each member of one operand, the
//! other operand's bit vector is OR-ed into the result at the matching offset.
//! Cost is `|members| * words`, so a dense `A` in `{0, ..., 10^6}` with a few
//! thousand members costs a few times `10^8` word operations.

use super::bitset::{or_shifted_left, or_shifted_right, words_for, IntegerSet};
use super::form::LinearForm;
use crate::error::{Error, Result};

/// Budget on elementary tuple operations for one call.
pub const ENUMERATION_BUDGET: f64 = 1e10;

/// `A + A` over `[2 lo, 2 hi]`.
pub fn sumset(a: &IntegerSet) -> IntegerSet {
    let (lo, hi) = (2 * a.lo(), 2 * a.hi());
    let mut out = vec![0u64; words_for((hi - lo) as usize + 1)];
    let src = a.words();
    for i in a.offsets() {
        // pairs (a_i, b) with b >= a_i suffice; start at a_i's word
        let w0 = i / 64;
        or_shifted_left(&mut out[w0..], &src[w0..], i);
    }
    IntegerSet::from_words(lo, hi, out)
}

/// `A - A` over `[-(hi - lo), hi - lo]`, symmetric about 0.
pub fn diffset(a: &IntegerSet) -> IntegerSet {
    let w = a.hi() - a.lo();
    let width = w as usize + 1;
    // non-negative differences first: bit d set iff d = x - y for members x >= y
    let mut pos = vec![0u64; words_for(width)];
    let src = a.words();
    for i in a.offsets() {
        or_shifted_right(&mut pos, src, i);
    }
    let nonneg = IntegerSet::from_words(0, w, pos);
    let mut elems = Vec::with_capacity(2 * nonneg.len());
    for d in nonneg.iter() {
        elems.push(d);
        if d != 0 {
            elems.push(-d);
        }
    }
    IntegerSet::from_elements(&elems, -w, w).expect("differences lie in [-w, w]")
}

/// Minkowski sum `X + Y` over `[x.lo + y.lo, x.hi + y.hi]`.
pub fn minkowski_sum(x: &IntegerSet, y: &IntegerSet) -> IntegerSet {
    let (lo, hi) = (x.lo() + y.lo(), x.hi() + y.hi());
    let mut out = vec![0u64; words_for((hi - lo) as usize + 1)];
    // iterate over the operand whose members times the other's words is smaller
    let (iter_set, shifted) = if x.len() * y.words().len() <= y.len() * x.words().len() {
        (x, y)
    } else {
        (y, x)
    };
    for i in iter_set.offsets() {
        or_shifted_left(&mut out, shifted.words(), i);
    }
    IntegerSet::from_words(lo, hi, out)
}

/// `f(A) = { u_1 a_1 + ... + u_k a_k : a_i in A }` over the form's exact
/// value interval.
///
/// Forms with three or more variables are refused when `|A|^k` exceeds
/// [`ENUMERATION_BUDGET`].
pub fn form_image(a: &IntegerSet, form: &LinearForm) -> Result<IntegerSet> {
    let k = form.arity();
    if k >= 3 && (a.len() as f64).powi(k as i32) > ENUMERATION_BUDGET {
        return Err(Error::Resource(format!(
            "|A|^{k} = {}^{k} exceeds the enumeration budget of 1e10",
            a.len()
        )));
    }
    let coeffs = form.coeffs();
    let mut acc = a.dilate(coeffs[0])?;
    for &u in &coeffs[1..] {
        acc = minkowski_sum(&acc, &a.dilate(u)?);
    }
    Ok(acc)
}
