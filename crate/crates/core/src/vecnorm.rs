//! Nonnegative exact vectors and lp means.
//!
//! The mean convention divides by `n` before taking the root, so
//! `lp_mean(x, 1)` is the arithmetic mean. The limits `p = 0, ±inf` are the
//! geometric mean, max and min, and a negative `p` with a zero entry gives 0.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A finite vector of exact nonnegative rationals, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, value)) = entries.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeEntry { index, value: value.to_string() });
        }
        Ok(Self { entries })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    /// Parses each string with [`rational::parse_rational`].
    pub fn parse<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|s| rational::parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// The decreasing rearrangement.
    pub fn sorted_desc(&self) -> Vec<Rational> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Self::new(self.entries.iter().map(|v| v * c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(rational::to_f64).collect()
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter().map(|v| v.to_string())).finish()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Extended-real exponent for lp means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PExponent {
    NegInfinity,
    Zero,
    Finite(f64),
    Infinity,
}

impl PExponent {
    /// Maps `0.0` to [`PExponent::Zero`] and infinities to their variants.
    pub fn from_f64(p: f64) -> Self {
        if p == 0.0 {
            PExponent::Zero
        } else if p == f64::INFINITY {
            PExponent::Infinity
        } else if p == f64::NEG_INFINITY {
            PExponent::NegInfinity
        } else {
            PExponent::Finite(p)
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PExponent::NegInfinity => f64::NEG_INFINITY,
            PExponent::Zero => 0.0,
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }
}

impl From<f64> for PExponent {
    fn from(p: f64) -> Self {
        PExponent::from_f64(p)
    }
}

/// The lp mean `(n^-1 sum x_i^p)^(1/p)` with its limiting conventions.
pub fn lp_mean(x: &RationalVector, p: PExponent) -> f64 {
    lp_mean_f64(&x.to_f64(), p)
}

/// Float-side evaluator shared by [`lp_mean`] and the grid verifiers.
pub fn lp_mean_f64(x: &[f64], p: PExponent) -> f64 {
    let n = x.len() as f64;
    let has_zero = x.contains(&0.0);
    match p {
        PExponent::Infinity => x.iter().copied().fold(0.0, f64::max),
        PExponent::NegInfinity => x.iter().copied().fold(f64::INFINITY, f64::min),
        PExponent::Zero => {
            if has_zero {
                0.0
            } else {
                (x.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
            }
        }
        PExponent::Finite(p) => {
            if p < 0.0 && has_zero {
                return 0.0;
            }
            // Scale by the max against overflow; expm1/ln_1p keep small |p|
            // well conditioned.
            let m = x.iter().copied().fold(0.0, f64::max);
            if m == 0.0 {
                return 0.0;
            }
            let shifted = x.iter().map(|v| (p * (v / m).ln()).exp_m1()).sum::<f64>() / n;
            m * (shifted.ln_1p() / p).exp()
        }
    }
}

/// `s_k` = sum of the `k` largest entries, for `k = 1..=n`.
pub fn partial_sums_desc(x: &RationalVector) -> Vec<Rational> {
    let mut acc = Rational::zero();
    x.sorted_desc()
        .into_iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn v(values: &[i64]) -> RationalVector {
        RationalVector::from_integers(values).unwrap()
    }

    #[test]
    fn construction_rejects_bad_vectors() {
        assert_eq!(RationalVector::new(vec![]), Err(Error::EmptyVector));
        assert!(matches!(
            RationalVector::new(vec![int(1), frac(-1, 2)]),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
        let x = RationalVector::parse(&["3/7", "1.9", "4"]).unwrap();
        assert_eq!(x.entries(), &[frac(3, 7), frac(19, 10), int(4)]);
    }

    #[test]
    fn lp_mean_examples() {
        assert!((lp_mean(&v(&[1, 2, 3]), 1.0.into()) - 2.0).abs() < 1e-15);
        assert_eq!(lp_mean(&v(&[0, 2]), (-1.0).into()), 0.0);
        assert!((lp_mean(&v(&[2, 8]), (-1.0).into()) - 3.2).abs() < 1e-15);
        assert!((lp_mean(&v(&[4, 9]), PExponent::Zero) - 6.0).abs() < 1e-14);
        assert_eq!(lp_mean(&v(&[4, 0]), PExponent::Zero), 0.0);
        assert_eq!(lp_mean(&v(&[4, 1, 7]), PExponent::Infinity), 7.0);
        assert_eq!(lp_mean(&v(&[4, 1, 7]), PExponent::NegInfinity), 1.0);
        assert_eq!(PExponent::from_f64(0.0), PExponent::Zero);
        assert_eq!(PExponent::from_f64(f64::INFINITY), PExponent::Infinity);
    }

    #[test]
    fn lp_mean_large_p_is_finite() {
        let m = lp_mean(&v(&[1000, 999]), 400.0.into());
        assert!(m.is_finite() && m > 999.0 && m < 1000.0);
    }

    #[test]
    fn partial_sums_examples() {
        assert_eq!(partial_sums_desc(&v(&[3, 1])), vec![int(3), int(4)]);
        assert_eq!(partial_sums_desc(&v(&[1, 3])), vec![int(3), int(4)]);
        assert_eq!(
            partial_sums_desc(&v(&[4, 2, 1, 2])),
            vec![int(4), int(6), int(8), int(9)]
        );
    }

    #[test]
    fn continuity_at_zero() {
        // Near 0 the mean moves like G * (1 + p * var(ln x) / 2), so the gap
        // shrinks linearly along the grid.
        let x = v(&[1, 2, 3, 7]);
        let xf = x.to_f64();
        let logs: Vec<f64> = xf.iter().map(|v| v.ln()).collect();
        let mean = logs.iter().sum::<f64>() / 4.0;
        let var = logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / 4.0;
        let g = lp_mean(&x, PExponent::Zero);
        for j in 1..=8 {
            let p = 10f64.powi(-j);
            for signed in [p, -p] {
                let gap = (lp_mean(&x, signed.into()) - g).abs();
                assert!(gap <= g * var * p, "p={signed} gap={gap}");
            }
        }
        assert!((lp_mean(&x, 1e-6.into()) - g).abs() < 1e-6);
    }

    fn arb_vector() -> impl Strategy<Value = RationalVector> {
        prop::collection::vec((0i64..50, 1i64..8), 1..6).prop_map(|parts| {
            RationalVector::new(parts.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn monotone_in_p(x in arb_vector()) {
            let grid: Vec<f64> = (-16..=16).map(|i| i as f64 / 4.0).collect();
            let means: Vec<f64> = grid.iter().map(|&p| lp_mean(&x, p.into())).collect();
            for w in means.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-12 * w[0].max(1.0));
            }
        }

        #[test]
        fn homogeneous(x in arb_vector(), c_num in 1i64..20, c_den in 1i64..20, pi in -8i32..=8) {
            let c = frac(c_num, c_den);
            let y = x.scale(&c).unwrap();
            let p = PExponent::from_f64(pi as f64 / 2.0);
            let lhs = lp_mean(&y, p);
            let rhs = rational::to_f64(&c) * lp_mean(&x, p);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn partial_sums_permutation_invariant(x in arb_vector(), rot in 0usize..6) {
            let mut e = x.entries().to_vec();
            let k = rot % e.len();
            e.rotate_left(k);
            e.reverse();
            let y = RationalVector::new(e).unwrap();
            let s = partial_sums_desc(&x);
            prop_assert_eq!(&s, &partial_sums_desc(&y));
            prop_assert_eq!(s.last().unwrap(), &x.sum());
            for w in s.windows(2) {
                prop_assert!(w[1] >= w[0]);
            }
        }
    }
}
