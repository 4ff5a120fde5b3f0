//! Sumsets, difference sets and linear-form images of random subsets of
//! `{0, ..., N}` under the binomial model.
//!
//! The crate is organised bottom-up:
//!
//! * [`setcore`]: bit-parallel set arithmetic, representation histograms and
//!   the `X_k` collision statistics.
//! * [`randmodel`]: counter-based binomial sampling and `p(N)` families.
//! * [`predict`]: closed-form expectations and asymptotics (`g`, `g_{u,v}`,
//!   exact `E[S^c]`, Janson brackets for `E[D^c]`, k-ary conjectures).
//! * [`threshold`]: pairwise comparison of difference forms and the sharp
//!   threshold constant `c_{f,g}`.
//! * [`bounds`]: explicit Chebyshev-type failure probabilities for sparse sets.
//! * [`harness`]: experiment configuration, deterministic parallel Monte Carlo,
//!   exhaustive enumeration, CSV/JSON output and the command line front end.
//!
//! ```
//! use sumdiff::setcore::{IntegerSet, SetClass};
//!
//! let a = IntegerSet::from_elements(&[0, 2, 3, 4, 7, 11, 12, 14], 0, 14).unwrap();
//! let class = sumdiff::setcore::classify(&a);
//! assert_eq!(class.label, SetClass::SumDominated);
//! ```

pub mod bounds;
pub mod error;
pub mod harness;
pub mod predict;
pub mod randmodel;
pub mod setcore;
pub mod threshold;

pub use error::{Error, Result};
