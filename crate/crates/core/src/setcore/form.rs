use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// `ux + vy` with `u >= |v| > 0`, `gcd(u, v) = 1`, `(u, v) != (1, 1)`.
    BinaryDifference,
    /// The plain sum `x + y`.
    BinarySum,
    /// `u_1 x_1 + ... + u_k x_k` with `k >= 3` and coprime coefficients.
    KAry,
}

/// An integer linear form with non-zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LinearForm {
    coeffs: Vec<i64>,
    kind: FormKind,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least two coefficients, got {coeffs:?}"
            )));
        }
        if coeffs.contains(&0) {
            return Err(Error::Validation(format!("zero coefficient in {coeffs:?}")));
        }
        let kind = if coeffs.len() == 2 {
            let (u, v) = (coeffs[0], coeffs[1]);
            if (u, v) == (1, 1) {
                FormKind::BinarySum
            } else if u < v.abs() {
                return Err(Error::Validation(format!("need u >= |v|, got ({u},{v})")));
            } else if u.gcd(&v) != 1 {
                return Err(Error::Validation(format!("gcd({u},{v}) != 1")));
            } else {
                FormKind::BinaryDifference
            }
        } else {
            let g = coeffs.iter().fold(0i64, |g, c| g.gcd(c));
            if g != 1 {
                return Err(Error::Validation(format!("coefficients {coeffs:?} share factor {g}")));
            }
            FormKind::KAry
        };
        Ok(Self { coeffs, kind })
    }

    pub fn binary(u: i64, v: i64) -> Result<Self> {
        Self::new(vec![u, v])
    }

    /// `x + y`
    pub fn sum() -> Self {
        Self {
            coeffs: vec![1, 1],
            kind: FormKind::BinarySum,
        }
    }

    /// `x - y`
    pub fn difference() -> Self {
        Self {
            coeffs: vec![1, -1],
            kind: FormKind::BinaryDifference,
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_binary(&self) -> bool {
        self.coeffs.len() == 2
    }

    /// `(u, |v|)` for binary forms.
    pub fn u_absv(&self) -> Option<(i64, i64)> {
        self.is_binary().then(|| (self.coeffs[0], self.coeffs[1].abs()))
    }

    /// Sum of the absolute values of the coefficients (`u + |v|` for binary forms).
    pub fn abs_sum(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Number of integers in the smallest interval holding `f(A)` for `A` inside
    /// `{0, ..., n}`: `(sum |u_i|) n + 1`.
    pub fn span_count(&self, n: u64) -> u64 {
        self.abs_sum() as u64 * n + 1
    }

    /// Interval spanned by the form over `[lo, hi]^k`.
    pub fn image_domain(&self, lo: i64, hi: i64) -> (i64, i64) {
        self.coeffs.iter().fold((0, 0), |(a, b), &u| {
            let (x, y) = (u * lo, u * hi);
            (a + x.min(y), b + x.max(y))
        })
    }

    pub fn eval(&self, xs: &[i64]) -> i64 {
        self.coeffs.iter().zip(xs).map(|(u, x)| u * x).sum()
    }

    /// Compact identifier such as `2_-1`, safe inside CSV headers.
    pub fn ident(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    /// Parses `u,v` or `u1,u2,...,uk` (surrounding parentheses allowed).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Validation(format!("bad coefficient {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl TryFrom<Vec<i64>> for LinearForm {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<LinearForm> for Vec<i64> {
    fn from(f: LinearForm) -> Self {
        f.coeffs
    }
}
