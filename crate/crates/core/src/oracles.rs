//! Brute-force reference evaluators.
//!
//! Everything here sums the defining expansions term by term with its own
//! arithmetic loops and shares nothing with the fast evaluators in
//! [`crate::sympoly`]; the test suites compare the two.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vecnorm::RationalVector;

/// Largest admissible `|I_k| = C(n+k-1, k)` for an enumeration.
pub const MAX_COMPOSITIONS: u128 = 1_000_000;
/// Largest admissible number of `r`-subsets.
pub const MAX_SUBSETS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    MaxPartAtMost(usize),
    NonzeroPartsAtLeast(usize),
    DistinctVarsFewerThan(usize),
}

impl Constraint {
    pub fn admits(self, p: &[usize]) -> bool {
        let nonzero = p.iter().filter(|&&v| v > 0).count();
        match self {
            Constraint::None => true,
            Constraint::MaxPartAtMost(r) => p.iter().all(|&v| v <= r),
            Constraint::NonzeroPartsAtLeast(r) => nonzero >= r,
            Constraint::DistinctVarsFewerThan(r) => nonzero < r,
        }
    }
}

/// Weak compositions of `k` into `n` parts passing a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionStream {
    pub n: usize,
    pub k: usize,
    pub constraint: Constraint,
}

/// `C(n+k-1, k)` in `u128`, saturating.
pub fn composition_count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = match acc.checked_mul(n as u128 + i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn check_composition_guard(n: usize, k: usize) -> Result<()> {
    let size = composition_count(n, k);
    if size > MAX_COMPOSITIONS {
        return Err(Error::TooLarge { what: "composition enumeration", size, limit: MAX_COMPOSITIONS });
    }
    Ok(())
}

/// Every constrained composition exactly once, in lexicographic order.
pub fn enumerate_compositions(stream: CompositionStream) -> Result<Vec<Vec<usize>>> {
    let CompositionStream { n, k, constraint } = stream;
    if n == 0 {
        return Err(Error::InvalidArgument("compositions need n >= 1".into()));
    }
    check_composition_guard(n, k)?;
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fill(&mut current, 0, k, &mut |p| {
        if constraint.admits(p) {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

fn fill(current: &mut [usize], pos: usize, remaining: usize, emit: &mut dyn FnMut(&[usize])) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        emit(current);
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill(current, pos + 1, remaining - v, emit);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFamily {
    E,
    F,
    G,
    Gbar,
    M,
}

/// Ground truth by direct summation of the defining expansion.
pub fn oracle_value(family: OracleFamily, x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    let n = x.len();
    let constraint = match family {
        OracleFamily::E => Constraint::MaxPartAtMost(1),
        OracleFamily::F => Constraint::MaxPartAtMost(r),
        OracleFamily::G => Constraint::NonzeroPartsAtLeast(r),
        OracleFamily::Gbar => Constraint::DistinctVarsFewerThan(r),
        OracleFamily::M => return subset_power_sum(x, k, r),
    };
    let terms = enumerate_compositions(CompositionStream { n, k, constraint })?;
    let mut total = Rational::zero();
    for p in &terms {
        total += monomial_over_factorials(x.entries(), p);
    }
    Ok(total)
}

/// `prod_i x_i^{p_i} / p_i!` by repeated multiplication.
pub fn monomial_over_factorials(x: &[Rational], p: &[usize]) -> Rational {
    let mut num = Rational::one();
    let mut den = BigInt::one();
    for (xi, &pi) in x.iter().zip(p) {
        for m in 1..=pi {
            num *= xi;
            den *= m;
        }
    }
    num / Rational::from_integer(den)
}

/// `sum over r-subsets of (subset sum)^k`, enumerated by bitmask.
fn subset_power_sum(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    let n = x.len();
    if n > 24 {
        return Err(Error::TooLarge { what: "bitmask subset enumeration", size: n as u128, limit: 24 });
    }
    let mut total = Rational::zero();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let mut s = Rational::zero();
        for (i, xi) in x.entries().iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += xi;
            }
        }
        let mut power = Rational::one();
        for _ in 0..k {
            power *= &s;
        }
        total += power;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn stream(n: usize, k: usize, constraint: Constraint) -> Vec<Vec<usize>> {
        enumerate_compositions(CompositionStream { n, k, constraint }).unwrap()
    }

    #[test]
    fn small_streams() {
        assert_eq!(stream(2, 2, Constraint::None), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(stream(2, 2, Constraint::MaxPartAtMost(1)), vec![vec![1, 1]]);
        assert_eq!(stream(3, 3, Constraint::NonzeroPartsAtLeast(3)), vec![vec![1, 1, 1]]);
        assert_eq!(stream(3, 0, Constraint::None), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn guard_rejects_huge_streams() {
        let err = enumerate_compositions(CompositionStream { n: 30, k: 30, constraint: Constraint::None });
        assert!(matches!(err, Err(Error::TooLarge { .. })));
    }

    #[test]
    fn oracle_examples() {
        let ones = RationalVector::from_integers(&[1, 1]).unwrap();
        assert_eq!(oracle_value(OracleFamily::F, &ones, 3, 2).unwrap(), int(1));
        assert_eq!(oracle_value(OracleFamily::G, &ones, 2, 2).unwrap(), int(1));
        let x = RationalVector::from_integers(&[1, 2, 3]).unwrap();
        assert_eq!(oracle_value(OracleFamily::M, &x, 2, 2).unwrap(), int(50));
        assert_eq!(oracle_value(OracleFamily::E, &x, 2, 0).unwrap(), int(11));
    }

    /// Coefficient of t^k in (1 + t + ... + t^r)^n, by repeated convolution.
    fn bounded_count(n: usize, k: usize, r: usize) -> u128 {
        let mut poly = vec![0u128; k + 1];
        poly[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; k + 1];
            for (i, &c) in poly.iter().enumerate() {
                for j in 0..=r.min(k - i) {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        poly[k]
    }

    #[test]
    fn stream_cardinalities() {
        for n in 1..=6 {
            for k in 0..=6 {
                assert_eq!(stream(n, k, Constraint::None).len() as u128, composition_count(n, k));
                for r in 0..=6 {
                    assert_eq!(
                        stream(n, k, Constraint::MaxPartAtMost(r)).len() as u128,
                        bounded_count(n, k, r),
                        "n={n} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn streams_are_sorted_and_unique() {
        let all = stream(4, 5, Constraint::None);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(all.iter().all(|p| p.iter().sum::<usize>() == 5));
    }
}
