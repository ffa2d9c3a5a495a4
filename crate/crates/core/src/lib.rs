//! Exact symmetric-polynomial families and the lp-mean inequalities they
//! certify.
//!
//! The crate computes the truncated-exponential coefficients `F_{k,r}` of
//! `prod_i P_r(x_i t)` together with the related families `E_k`, `G_{k,r}`,
//! `Gbar_{k,r}`, `M_{k,r}` and index-set sums `H_S`, all in exact rational
//! arithmetic. On top of those it checks coefficientwise hypotheses that imply
//! comparisons of lp means, scans majorization characterizations, reproduces
//! determinant-based pipelines from integer Gram matrices, and validates the
//! Mellin-type integral identities behind the lp conclusions numerically.

pub mod error;
pub mod genfun;
pub mod majorization;
pub mod mellin;
pub mod oracles;
pub mod rational;
pub mod report;
pub mod spectral;
pub mod sympoly;
pub mod theorem1;
pub mod vecnorm;

pub use error::{Error, Result};
pub use genfun::{Catalyst, SeriesTemplate, TruncatedSeries};
pub use rational::Rational;
pub use sympoly::{Family, FamilyValue, IndexSet};
pub use vecnorm::{lp_mean, partial_sums_desc, PExponent, RationalVector};
