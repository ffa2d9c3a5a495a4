//! Exact truncated power series in one formal variable `t`, and products of
//! scaled one-variable templates over a vector (optionally tensored with a
//! catalyst).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::vecnorm::RationalVector;

/// Polynomial in `t` modulo `t^(D+1)`; `coeffs.len() == D + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Rational>, degree_bound: usize) -> Self {
        coeffs.resize(degree_bound + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn one(degree_bound: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree_bound + 1];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Multiplies in place by a short polynomial, dropping terms past the bound.
    fn mul_assign_sparse(&mut self, factor: &[Rational]) {
        let d = self.degree_bound();
        for k in (0..=d).rev() {
            let mut acc = Rational::zero();
            for (j, f) in factor.iter().enumerate().take(k + 1) {
                if !f.is_zero() && !self.coeffs[k - j].is_zero() {
                    acc += f * &self.coeffs[k - j];
                }
            }
            self.coeffs[k] = acc;
        }
    }
}

/// Exact Cauchy product truncated at the common degree bound.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.degree_bound() != b.degree_bound() {
        return Err(Error::DegreeMismatch { left: a.degree_bound(), right: b.degree_bound() });
    }
    let d = a.degree_bound();
    let mut out = vec![Rational::zero(); d + 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(d + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    Ok(TruncatedSeries { coeffs: out })
}

/// One-variable template `s -> sum_j a_j s^j` with `a_0 = 1`, `a_j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTemplate {
    base_coeffs: Vec<Rational>,
}

impl SeriesTemplate {
    pub fn new(base_coeffs: Vec<Rational>) -> Result<Self> {
        match base_coeffs.first() {
            Some(a0) if a0.is_one() => {}
            _ => return Err(Error::InvalidArgument("template constant term must be 1".into())),
        }
        if base_coeffs.iter().any(|a| a.is_negative()) {
            return Err(Error::InvalidArgument("template coefficients must be >= 0".into()));
        }
        Ok(Self { base_coeffs })
    }

    /// Degree-`r` Taylor polynomial of `exp`.
    pub fn taylor(r: usize) -> Self {
        let mut coeffs = Vec::with_capacity(r + 1);
        let mut fact = Rational::one();
        for j in 0..=r {
            if j > 0 {
                fact *= rational::int(j as i64);
            }
            coeffs.push(fact.recip());
        }
        Self { base_coeffs: coeffs }
    }

    /// Taylor polynomial of order `r` extended by `a_{r,j} s^j / j!` for
    /// `j = r+1, r+2, ...`, each `a_{r,j}` in `[0, 1)`. The caller is
    /// responsible for the growth condition on the resulting entire function.
    pub fn order_zero(r: usize, tail: &[Rational]) -> Result<Self> {
        let mut tpl = Self::taylor(r);
        for (offset, a) in tail.iter().enumerate() {
            if a.is_negative() || *a >= Rational::one() {
                return Err(Error::InvalidArgument(format!(
                    "tail coefficient {a} must lie in [0, 1)"
                )));
            }
            tpl.base_coeffs.push(a / rational::factorial(r + 1 + offset));
        }
        Ok(tpl)
    }

    pub fn base_coeffs(&self) -> &[Rational] {
        &self.base_coeffs
    }

    pub fn degree(&self) -> usize {
        self.base_coeffs.len() - 1
    }
}

/// A finite catalyst `c_0 = 1, c_j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalyst {
    c: Vec<Rational>,
}

impl Catalyst {
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        match c.first() {
            Some(c0) if c0.is_one() => {}
            _ => return Err(Error::InvalidArgument("catalyst must start with c_0 = 1".into())),
        }
        if c.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidArgument("catalyst entries must be >= 0".into()));
        }
        Ok(Self { c })
    }

    pub fn trivial() -> Self {
        Self { c: vec![Rational::one()] }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.c
    }
}

/// `tpl(a t)` truncated at `D`: the coefficient of `t^j` is `a^j * base[j]`.
pub fn substitute_scale(tpl: &SeriesTemplate, a: &Rational, degree_bound: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(degree_bound + 1);
    let mut power = Rational::one();
    for (j, base) in tpl.base_coeffs.iter().enumerate().take(degree_bound + 1) {
        if j > 0 {
            power *= a;
        }
        coeffs.push(&power * base);
    }
    TruncatedSeries::new(coeffs, degree_bound)
}

/// Default degree bound `n * deg(tpl)`, past which every coefficient of the
/// product vanishes.
pub fn default_degree_bound(n: usize, tpl: &SeriesTemplate) -> usize {
    n * tpl.degree()
}

/// `prod_i tpl(x_i t) mod t^(D+1)`.
pub fn product_over_vector(x: &RationalVector, tpl: &SeriesTemplate, degree_bound: usize) -> TruncatedSeries {
    product_of_scaled(x.entries().iter(), tpl, degree_bound)
}

fn product_of_scaled<'a>(
    scales: impl Iterator<Item = &'a Rational>,
    tpl: &SeriesTemplate,
    degree_bound: usize,
) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(degree_bound);
    for a in scales {
        if a.is_zero() {
            continue;
        }
        let factor = substitute_scale(tpl, a, degree_bound.min(tpl.degree()));
        acc.mul_assign_sparse(factor.coeffs());
    }
    acc
}

/// `prod_i prod_j tpl(c_j x_i t) mod t^(D+1)`. With the order-1 Taylor
/// template the coefficients are the elementary symmetric polynomials of
/// `x (x) c`.
pub fn catalyst_product(
    x: &RationalVector,
    c: &Catalyst,
    tpl: &SeriesTemplate,
    degree_bound: usize,
) -> TruncatedSeries {
    let scales: Vec<Rational> = x
        .entries()
        .iter()
        .flat_map(|xi| c.c.iter().map(move |cj| xi * cj))
        .collect();
    product_of_scaled(scales.iter(), tpl, degree_bound)
}

/// All products `x_i c_j` in row-major order (index `i * len(c) + j`).
pub fn tensor(x: &RationalVector, c: &Catalyst) -> RationalVector {
    let entries = x
        .entries()
        .iter()
        .flat_map(|xi| c.c.iter().map(move |cj| xi * cj))
        .collect();
    RationalVector::new(entries).expect("products of nonnegative entries are nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn series(values: &[Rational]) -> TruncatedSeries {
        TruncatedSeries::new(values.to_vec(), values.len() - 1)
    }

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn cauchy_products() {
        let a = series(&ints(&[1, 1, 0]));
        assert_eq!(series_mul(&a, &a).unwrap().coeffs(), ints(&[1, 2, 1]).as_slice());
        let a = series(&ints(&[1, 1]));
        assert_eq!(series_mul(&a, &a).unwrap().coeffs(), ints(&[1, 2]).as_slice());
        let a = series(&[int(1), int(1), frac(1, 2), int(0), int(0)]);
        assert_eq!(
            series_mul(&a, &a).unwrap().coeffs(),
            &[int(1), int(2), int(2), int(1), frac(1, 4)]
        );
        let b = series(&ints(&[1, 1, 0]));
        assert_eq!(
            series_mul(&a, &b),
            Err(Error::DegreeMismatch { left: 4, right: 2 })
        );
    }

    #[test]
    fn scaled_templates() {
        let s = substitute_scale(&SeriesTemplate::taylor(2), &int(2), 3);
        assert_eq!(s.coeffs(), ints(&[1, 2, 2, 0]).as_slice());
        let s = substitute_scale(&SeriesTemplate::taylor(4), &int(0), 3);
        assert_eq!(s.coeffs(), ints(&[1, 0, 0, 0]).as_slice());
        let s = substitute_scale(&SeriesTemplate::taylor(1), &int(3), 2);
        assert_eq!(s.coeffs(), ints(&[1, 3, 0]).as_slice());
    }

    #[test]
    fn template_validation() {
        assert!(SeriesTemplate::new(ints(&[2, 1])).is_err());
        assert!(SeriesTemplate::new(vec![int(1), frac(-1, 2)]).is_err());
        assert!(SeriesTemplate::order_zero(2, &[frac(1, 2), int(1)]).is_err());
        let tpl = SeriesTemplate::order_zero(1, &[frac(1, 2)]).unwrap();
        assert_eq!(tpl.base_coeffs(), &[int(1), int(1), frac(1, 4)]);
        assert!(Catalyst::new(ints(&[2, 1])).is_err());
        assert!(Catalyst::new(vec![int(1), frac(-1, 3)]).is_err());
    }

    #[test]
    fn products_over_vectors() {
        let x = RationalVector::from_integers(&[1, 1]).unwrap();
        let f = product_over_vector(&x, &SeriesTemplate::taylor(2), 4);
        assert_eq!(f.coeffs(), &[int(1), int(2), int(2), int(1), frac(1, 4)]);

        let a = frac(7, 3);
        let x = RationalVector::new(vec![a.clone()]).unwrap();
        let f = product_over_vector(&x, &SeriesTemplate::taylor(3), 3);
        assert_eq!(
            f.coeffs(),
            &[int(1), a.clone(), &a * &a / int(2), &a * &a * &a / int(6)]
        );
    }

    #[test]
    fn catalyst_examples() {
        let x = RationalVector::from_integers(&[2]).unwrap();
        let c = Catalyst::new(vec![int(1), frac(1, 2)]).unwrap();
        let f = catalyst_product(&x, &c, &SeriesTemplate::taylor(1), 2);
        assert_eq!(f.coeffs(), ints(&[1, 3, 2]).as_slice());

        // E_k((1,2,1,2)) by brute force over subsets: (1, 6, 13, 12, 4).
        let x = RationalVector::from_integers(&[1, 2]).unwrap();
        let c = Catalyst::new(ints(&[1, 1])).unwrap();
        let f = catalyst_product(&x, &c, &SeriesTemplate::taylor(1), 4);
        assert_eq!(f.coeffs(), ints(&[1, 6, 13, 12, 4]).as_slice());

        let x = RationalVector::from_integers(&[3, 5, 0]).unwrap();
        let tpl = SeriesTemplate::taylor(2);
        assert_eq!(
            catalyst_product(&x, &Catalyst::trivial(), &tpl, 6),
            product_over_vector(&x, &tpl, 6)
        );
    }

    #[test]
    fn tensor_examples() {
        let x = RationalVector::from_integers(&[1, 2]).unwrap();
        assert_eq!(tensor(&x, &Catalyst::trivial()), x);
        let c = Catalyst::new(vec![int(1), frac(1, 2)]).unwrap();
        assert_eq!(tensor(&x, &c).entries(), &[int(1), frac(1, 2), int(2), int(1)]);
        let z = RationalVector::from_integers(&[0]).unwrap();
        assert!(tensor(&z, &c).entries().iter().all(|v| v.is_zero()));
    }

    fn arb_vector() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((0i64..12, 1i64..5).prop_map(|(n, d)| frac(n, d)), 1..5)
    }

    fn arb_catalyst() -> impl Strategy<Value = Catalyst> {
        prop::collection::vec((0i64..6, 1i64..5).prop_map(|(n, d)| frac(n, d)), 0..3).prop_map(|rest| {
            let mut c = vec![int(1)];
            c.extend(rest);
            Catalyst::new(c).unwrap()
        })
    }

    /// Subset-product oracle for E_k, independent of the series code.
    fn elementary_brute(x: &[Rational], k: usize) -> Rational {
        let n = x.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .fold(Rational::one(), |acc, i| acc * &x[i])
            })
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn permutation_invariant(e in arb_vector(), r in 1usize..4) {
            let tpl = SeriesTemplate::taylor(r);
            let x = RationalVector::new(e.clone()).unwrap();
            let mut rev = e;
            rev.reverse();
            let y = RationalVector::new(rev).unwrap();
            let d = default_degree_bound(x.len(), &tpl);
            let fx = product_over_vector(&x, &tpl, d);
            prop_assert_eq!(&fx, &product_over_vector(&y, &tpl, d));
            prop_assert!(fx.coeff(0).is_one());
            prop_assert_eq!(fx.coeff(1), x.sum());
        }

        #[test]
        fn catalyst_is_tensor(e in arb_vector(), c in arb_catalyst(), r in 1usize..3) {
            let x = RationalVector::new(e).unwrap();
            let tpl = SeriesTemplate::taylor(r);
            let d = x.len() * c.entries().len() * r;
            prop_assert_eq!(
                catalyst_product(&x, &c, &tpl, d),
                product_over_vector(&tensor(&x, &c), &tpl, d)
            );
        }

        #[test]
        fn catalyst_convolution(e in arb_vector(), c in arb_catalyst()) {
            let x = RationalVector::new(e.clone()).unwrap();
            let n = e.len();
            let d = n * c.entries().len();
            // Iterated Cauchy product over j of the sequences E_m(x) c_j^m.
            let mut acc = TruncatedSeries::one(d);
            for cj in c.entries() {
                let seq: Vec<Rational> = (0..=n)
                    .map(|m| elementary_brute(&e, m) * rational::pow(cj, m))
                    .collect();
                acc = series_mul(&acc, &TruncatedSeries::new(seq, d)).unwrap();
            }
            let direct = catalyst_product(&x, &c, &SeriesTemplate::taylor(1), d);
            prop_assert_eq!(&acc, &direct);
            let t = tensor(&x, &c);
            for k in 0..=d {
                prop_assert_eq!(direct.coeff(k), elementary_brute(t.entries(), k));
            }
        }
    }
}
