//! The symmetric polynomial families: elementary `E_k`, truncated-exponential
//! `F_{k,r}`, the support-split pair `G_{k,r}` / `Gbar_{k,r}`, subset power
//! sums `M_{k,r}`, and generic index-set sums `H_S`.
//!
//! Fast paths live here; [`crate::oracles`] holds the brute-force references.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfun::{self, SeriesTemplate};
use crate::oracles::{self, CompositionStream, Constraint, OracleFamily};
use crate::rational::{self, Rational};
use crate::vecnorm::RationalVector;

/// Dimension cap for the support inclusion-exclusion behind `Gbar`/`G`.
pub const MAX_SUPPORT_DIM: usize = 20;
/// Cap on `|I_k|` for the quadratic Schur-concavity scan of an index set.
pub const MAX_INDEX_SET_SCAN: u128 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    E,
    F,
    G,
    Gbar,
    DeltaGbar,
    M,
    HS,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::Gbar => "Gbar",
            Family::DeltaGbar => "DeltaGbar",
            Family::M => "M",
            Family::HS => "H_S",
        };
        f.write_str(s)
    }
}

/// A tagged exact family value; `r` is `None` for `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyValue {
    pub family: Family,
    pub k: usize,
    pub r: Option<usize>,
    pub value: Rational,
}

/// Evaluates a named family at `(k, r)`. `H_S` needs an [`IndexSet`] and is
/// not reachable from here; use [`h_s`].
pub fn evaluate(family: Family, x: &RationalVector, k: usize, r: usize) -> Result<FamilyValue> {
    let value = match family {
        Family::E => elementary_all(x).get(k).cloned().unwrap_or_else(Rational::zero),
        Family::F => f_kr(x, k, r)?,
        Family::G => g_kr(x, k, r)?,
        Family::Gbar => gbar_kr(x, k, r)?,
        Family::DeltaGbar => delta_gbar_kr(x, k, r)?,
        Family::M => m_kr(x, k, r)?,
        Family::HS => {
            return Err(Error::InvalidArgument("H_S requires an explicit index set".into()))
        }
    };
    let r = if family == Family::E { None } else { Some(r) };
    Ok(FamilyValue { family, k, r, value })
}

fn require_order(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    Ok(())
}

/// `E_0..E_n` by multiplying in one factor `(1 + x_i t)` at a time.
pub fn elementary_all(x: &RationalVector) -> Vec<Rational> {
    let n = x.len();
    let mut e = vec![Rational::zero(); n + 1];
    e[0] = Rational::one();
    for (i, xi) in x.entries().iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let add = &e[k - 1] * xi;
            e[k] += add;
        }
    }
    e
}

/// `F_{0,r}..F_{nr,r}`, the coefficients of `prod_i P_r(x_i t)`.
pub fn f_kr_all(x: &RationalVector, r: usize) -> Result<Vec<Rational>> {
    require_order(r)?;
    let tpl = SeriesTemplate::taylor(r);
    let d = genfun::default_degree_bound(x.len(), &tpl);
    Ok(genfun::product_over_vector(x, &tpl, d).into_coeffs())
}

/// Single coefficient `F_{k,r}`; zero past `nr`.
pub fn f_kr(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    Ok(f_kr_all(x, r)?.get(k).cloned().unwrap_or_else(Rational::zero))
}

/// `F_{k,r}` by direct summation over bounded compositions. Test equipment.
pub fn f_kr_oracle(x: &RationalVector, r: usize, k: usize) -> Result<Rational> {
    require_order(r)?;
    oracles::oracle_value(OracleFamily::F, x, k, r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialIdentityReport {
    pub r: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SpecialIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Exact checks of the closed forms of `F_{k,r}` at the low and high ends of
/// its degree range.
pub fn f_special_identities(x: &RationalVector, r: usize) -> Result<SpecialIdentityReport> {
    require_order(r)?;
    let n = x.len();
    let f = f_kr_all(x, r)?;
    let e = elementary_all(x);
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: Rational, rhs: Rational| {
        let pass = lhs == rhs;
        checks.push(IdentityCheck { name, lhs, rhs, pass });
    };
    for (k, fk) in f.iter().enumerate().take(r.min(n * r) + 1).skip(1) {
        push(
            format!("F_{{{k},{r}}} = E_1^{k}/{k}!"),
            fk.clone(),
            rational::pow(&e[1], k) / rational::factorial(k),
        );
    }
    let power_sum = x
        .entries()
        .iter()
        .fold(Rational::zero(), |acc, v| acc + rational::pow(v, r + 1));
    let lhs = f.get(r + 1).cloned().unwrap_or_else(Rational::zero);
    push(
        format!("F_{{{},{r}}} = (E_1^{} - p_{})/{}!", r + 1, r + 1, r + 1, r + 1),
        lhs,
        (rational::pow(&e[1], r + 1) - power_sum) / rational::factorial(r + 1),
    );
    push(
        format!("F_{{{},{r}}} = E_{n}^{r}/({r}!)^{n}", n * r),
        f[n * r].clone(),
        rational::pow(&e[n], r) / rational::pow(&rational::factorial(r), n),
    );
    // Past nr the generating product has no terms.
    let tpl = SeriesTemplate::taylor(r);
    let extended = genfun::product_over_vector(x, &tpl, n * r + 2);
    push(format!("F_{{{},{r}}} = 0", n * r + 1), extended.coeff(n * r + 1), Rational::zero());
    Ok(SpecialIdentityReport { r, checks })
}

fn multinomial_total(x: &RationalVector, k: usize) -> Rational {
    rational::pow(&x.sum(), k) / rational::factorial(k)
}

/// `Gbar_{k,r}`: terms of `(sum x)^k / k!` with fewer than `r` distinct
/// variables.
///
/// Inclusion-exclusion over supports: the terms supported exactly on `S` sum
/// to `(1/k!) sum_{T in S} (-1)^{|S|-|T|} (sum_T x)^k`. Collecting the
/// coefficient of each `T` over all `S` with `|S| <= r-1` gives the weight
/// `w(t) = sum_{j=0}^{r-1-t} (-1)^j C(n-t, j)` for `|T| = t`.
pub fn gbar_kr(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    require_order(r)?;
    let n = x.len();
    if n > MAX_SUPPORT_DIM {
        return Err(Error::TooLarge { what: "support dimension", size: n as u128, limit: MAX_SUPPORT_DIM as u128 });
    }
    let max_t = (r - 1).min(n);
    let weights: Vec<BigInt> = (0..=max_t)
        .map(|t| {
            (0..=(r - 1 - t)).fold(BigInt::zero(), |acc, j| {
                let c = rational::binomial(n - t, j);
                if j % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
        })
        .collect();
    let mut total = Rational::zero();
    for_each_subset_up_to(x.entries(), max_t, &mut |size, sum| {
        if !weights[size].is_zero() {
            total += Rational::from_integer(weights[size].clone()) * rational::pow(sum, k);
        }
    });
    Ok(total / rational::factorial(k))
}

/// Visits every subset of size `<= max_size` with its size and entry sum.
fn for_each_subset_up_to(x: &[Rational], max_size: usize, visit: &mut dyn FnMut(usize, &Rational)) {
    fn go(x: &[Rational], start: usize, size: usize, sum: &Rational, max_size: usize, visit: &mut dyn FnMut(usize, &Rational)) {
        visit(size, sum);
        if size == max_size {
            return;
        }
        for i in start..x.len() {
            go(x, i + 1, size + 1, &(sum + &x[i]), max_size, visit);
        }
    }
    go(x, 0, 0, &Rational::zero(), max_size, visit);
}

/// `G_{k,r} = (sum x)^k / k! - Gbar_{k,r}`: terms with at least `r` distinct
/// variables. Zero when `k < r`.
pub fn g_kr(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    let gbar = gbar_kr(x, k, r)?;
    Ok(multinomial_total(x, k) - gbar)
}

/// `Gbar_{k,r+1} - Gbar_{k,r}`: terms with exactly `r` distinct variables.
pub fn delta_gbar_kr(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    Ok(gbar_kr(x, k, r + 1)? - gbar_kr(x, k, r)?)
}

/// `M_{k,r} = sum over r-subsets of (subset sum)^k`; zero when `r > n`.
pub fn m_kr(x: &RationalVector, k: usize, r: usize) -> Result<Rational> {
    require_order(r)?;
    let n = x.len();
    if r > n {
        return Ok(Rational::zero());
    }
    let count = rational::binomial(n, r);
    let limit = BigInt::from(oracles::MAX_SUBSETS);
    if count > limit {
        return Err(Error::TooLarge {
            what: "r-subset enumeration",
            size: u128::try_from(count).unwrap_or(u128::MAX),
            limit: oracles::MAX_SUBSETS,
        });
    }
    let mut total = Rational::zero();
    for_each_subset_up_to(x.entries(), r, &mut |size, sum| {
        if size == r {
            total += rational::pow(sum, k);
        }
    });
    Ok(total)
}

type Membership = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

/// A subset `S` of `I_k`, the weak compositions of `k` into `n` parts.
/// Membership must be permutation invariant for `H_S` to be symmetric.
#[derive(Clone)]
pub struct IndexSet {
    pub n: usize,
    pub k: usize,
    label: String,
    membership: Membership,
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexSet")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("label", &self.label)
            .finish()
    }
}

impl IndexSet {
    pub fn custom(n: usize, k: usize, label: impl Into<String>, membership: impl Fn(&[usize]) -> bool + Send + Sync + 'static) -> Self {
        Self { n, k, label: label.into(), membership: Arc::new(membership) }
    }

    /// `{p : max p_i <= r}`; `H_S = F_{k,r}`.
    pub fn max_part_at_most(n: usize, k: usize, r: usize) -> Self {
        Self::custom(n, k, format!("max p_i <= {r}"), move |p| p.iter().all(|&v| v <= r))
    }

    /// `{p : at least r nonzero entries}`; `H_S = G_{k,r}`.
    pub fn nonzero_at_least(n: usize, k: usize, r: usize) -> Self {
        Self::custom(n, k, format!(">= {r} nonzero"), move |p| p.iter().filter(|&&v| v > 0).count() >= r)
    }

    pub fn all(n: usize, k: usize) -> Self {
        Self::custom(n, k, "all", |_| true)
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        p.len() == self.n && p.iter().sum::<usize>() == self.k && (self.membership)(p)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn members_of_ik(&self) -> Result<Vec<Vec<usize>>> {
        oracles::enumerate_compositions(CompositionStream { n: self.n, k: self.k, constraint: Constraint::None })
    }
}

/// `H_S(x) = sum_{p in S} prod_i x_i^{p_i} / p_i!`.
pub fn h_s(x: &RationalVector, idx: &IndexSet) -> Result<Rational> {
    if x.len() != idx.n {
        return Err(Error::LengthMismatch { left: x.len(), right: idx.n });
    }
    let mut total = Rational::zero();
    for p in idx.members_of_ik()? {
        if (idx.membership)(&p) {
            total += oracles::monomial_over_factorials(x.entries(), &p);
        }
    }
    Ok(total)
}

/// Integer majorization `p > q` for tuples with equal sums.
pub fn int_majorizes(p: &[usize], q: &[usize]) -> bool {
    if p.len() != q.len() || p.iter().sum::<usize>() != q.iter().sum::<usize>() {
        return false;
    }
    let mut ps = p.to_vec();
    let mut qs = q.to_vec();
    ps.sort_unstable_by(|a, b| b.cmp(a));
    qs.sort_unstable_by(|a, b| b.cmp(a));
    let (mut sp, mut sq) = (0, 0);
    ps.iter().zip(&qs).all(|(a, b)| {
        sp += a;
        sq += b;
        sp >= sq
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSetVerdict {
    pub holds: bool,
    /// `(p, q)` with `p in S`, `p > q`, `q` not in `S`.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Checks downward closure of `S` under integer majorization within `I_k`.
pub fn is_schur_concave_index_set(idx: &IndexSet) -> Result<IndexSetVerdict> {
    let size = oracles::composition_count(idx.n, idx.k);
    if size > MAX_INDEX_SET_SCAN {
        return Err(Error::TooLarge { what: "index set scan", size, limit: MAX_INDEX_SET_SCAN });
    }
    let all = idx.members_of_ik()?;
    let inside: Vec<bool> = all.iter().map(|p| (idx.membership)(p)).collect();
    // Descending lexicographic order puts the most concentrated tuples first.
    for (p, _) in all.iter().zip(&inside).rev().filter(|(_, &m)| m) {
        for (q, _) in all.iter().zip(&inside).filter(|(_, &m)| !m) {
            if int_majorizes(p, q) {
                return Ok(IndexSetVerdict { holds: false, witness: Some((p.clone(), q.clone())) });
            }
        }
    }
    Ok(IndexSetVerdict { holds: true, witness: None })
}

/// Exact gradient of `F_{k,r}`: component `i` is the coefficient of `t^{k-1}`
/// in `P_{r-1}(x_i t) prod_{j != i} P_r(x_j t)`.
pub fn grad_f_kr(x: &RationalVector, r: usize, k: usize) -> Result<Vec<Rational>> {
    require_order(r)?;
    let n = x.len();
    if k > n * r {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n*r = {}", n * r)));
    }
    if k == 0 {
        return Ok(vec![Rational::zero(); n]);
    }
    let d = k - 1;
    let full = SeriesTemplate::taylor(r);
    let derived = SeriesTemplate::taylor(r - 1);
    let grad = (0..n)
        .map(|i| {
            let mut acc = genfun::substitute_scale(&derived, &x.entries()[i], d);
            for (j, xj) in x.entries().iter().enumerate() {
                if j != i {
                    let factor = genfun::substitute_scale(&full, xj, d);
                    acc = genfun::series_mul(&acc, &factor).expect("equal degree bounds");
                }
            }
            acc.coeff(d)
        })
        .collect();
    Ok(grad)
}
