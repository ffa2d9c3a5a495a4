//! Exact determinant pipelines for integer Gram matrices.
//!
//! For `X = Q Q^T` the coefficients of `det(I + tX)` are the elementary
//! symmetric polynomials of the eigenvalues of `X`, and the coefficients of
//! `det(sum_{j<=r} X^j t^j / j!)` are the `F_{k,r}` of the eigenvalues. Both are
//! computed without ever extracting an eigenvalue.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedMatrix { row, found: r.len(), expected: cols });
            }
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { rows: n, cols: n, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `P X P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            n: self.rows,
            data: self.data.iter().map(|&v| rational::int(v)).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Exact `Q Q^T`.
pub fn gram(q: &IntMatrix) -> Result<IntMatrix> {
    let n = q.rows;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc: i128 = 0;
            for l in 0..q.cols {
                acc += i128::from(q.get(i, l)) * i128::from(q.get(j, l));
            }
            let v = i64::try_from(acc).map_err(|_| Error::Overflow("gram product"))?;
            out.data[i * n + j] = v;
            out.data[j * n + i] = v;
        }
    }
    Ok(out)
}

#[derive(Clone)]
struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self { n, data }
    }

    fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.at(l, j);
                }
            }
        }
        Self { n, data }
    }

    fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.at(i, i))
    }

    /// Gaussian elimination with exact pivots.
    fn determinant(mut self) -> Rational {
        let n = self.n;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !self.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    self.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = self.at(col, col).clone();
            det *= &p;
            for row in col + 1..n {
                let factor = self.at(row, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * self.at(col, j);
                    self.data[row * n + j] -= sub;
                }
            }
        }
        det
    }
}

/// Coefficients of `det(I + tX)`, `t^0..t^n`, via the Faddeev-LeVerrier
/// recurrence: with `M_1 = I`, `c_k = -tr(X M_k) / k` and
/// `M_{k+1} = X M_k + c_k I`, the coefficient of `t^k` is `(-1)^k c_k`.
pub fn det_i_plus_ta(x: &IntMatrix) -> Result<Vec<Rational>> {
    let n = x.require_square()?;
    let a = x.to_rational();
    let mut coeffs = vec![Rational::one()];
    let mut m = RatMatrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let c = -am.trace() / rational::int(k as i64);
        coeffs.push(if k % 2 == 0 { c.clone() } else { -c.clone() });
        m = am;
        for i in 0..n {
            m.data[i * n + i] += &c;
        }
    }
    Ok(coeffs)
}

/// Coefficients `t^0..t^{nr}` of `det(sum_{j=0}^r X^j t^j / j!)`, obtained by
/// exact determinants at the nodes `t = 0, 1, ..., nr` and Newton
/// interpolation.
pub fn f_from_matrix(x: &IntMatrix, r: usize) -> Result<Vec<Rational>> {
    let n = x.require_square()?;
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    let a = x.to_rational();
    let mut scaled_powers = Vec::with_capacity(r + 1);
    let mut power = RatMatrix::identity(n);
    for j in 0..=r {
        if j > 0 {
            power = power.mul(&a);
        }
        let inv_fact = rational::factorial(j).recip();
        scaled_powers.push(RatMatrix {
            n,
            data: power.data.iter().map(|v| v * &inv_fact).collect(),
        });
    }
    let degree = n * r;
    let nodes: Vec<Rational> = (0..=degree).map(|t| rational::int(t as i64)).collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|t| {
            let mut sum = RatMatrix { n, data: vec![Rational::zero(); n * n] };
            let mut tj = Rational::one();
            for term in &scaled_powers {
                for (s, v) in sum.data.iter_mut().zip(&term.data) {
                    *s += v * &tj;
                }
                tj *= t;
            }
            sum.determinant()
        })
        .collect();
    Ok(interpolate(&nodes, &values))
}

/// Monomial coefficients of the unique polynomial of degree `< nodes.len()`
/// through the given points.
fn interpolate(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let m = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form.
    let mut coeffs = vec![Rational::zero(); m];
    for i in (0..m).rev() {
        for j in (1..m).rev() {
            let shifted = &coeffs[j - 1] - &nodes[i] * &coeffs[j];
            coeffs[j] = shifted;
        }
        coeffs[0] = &dd[i] - &nodes[i] * &coeffs[0];
    }
    coeffs
}

/// Eigenvalues of a symmetric matrix in binary64, descending. Only the grid
/// conclusions use these; every coefficient comparison stays exact.
pub fn eigenvalues_f64(x: &IntMatrix) -> Result<Vec<f64>> {
    if !x.is_symmetric() {
        return Err(Error::InvalidArgument("eigenvalues need a symmetric matrix".into()));
    }
    let n = x.rows;
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| x.get(i, j) as f64);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Exact coefficient lists for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSummary {
    pub e_coeffs: Vec<Rational>,
    pub f_coeffs: Vec<(usize, Vec<Rational>)>,
}

impl SpectralSummary {
    /// PSD inputs must have nonnegative coefficients; a negative one is a bug.
    pub fn nonnegative(&self) -> bool {
        let nonneg = |v: &Rational| *v >= Rational::zero();
        self.e_coeffs.iter().all(nonneg) && self.f_coeffs.iter().all(|(_, c)| c.iter().all(nonneg))
    }
}

pub fn summarize(x: &IntMatrix, orders: &[usize]) -> Result<SpectralSummary> {
    let e_coeffs = det_i_plus_ta(x)?;
    let f_coeffs = orders
        .iter()
        .map(|&r| f_from_matrix(x, r).map(|c| (r, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralSummary { e_coeffs, f_coeffs })
}

/// Sign-flip variants of `Q` in lexicographic order of their sign patterns
/// over the nonzero entries (row-major, `+` before `-`), starting with `Q`.
pub fn sign_flip_variants(q: &IntMatrix, budget: usize) -> SignFlips {
    let positions: Vec<usize> = q.data.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect();
    let total = if positions.len() >= 64 { u64::MAX } else { 1u64 << positions.len() };
    SignFlips { base: q.clone(), positions, next: 0, end: total.min(budget as u64) }
}

#[derive(Debug, Clone)]
pub struct SignFlips {
    base: IntMatrix,
    positions: Vec<usize>,
    next: u64,
    end: u64,
}

impl Iterator for SignFlips {
    type Item = IntMatrix;

    fn next(&mut self) -> Option<IntMatrix> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut m = self.base.clone();
        let last = self.positions.len();
        for (idx, &pos) in self.positions.iter().enumerate() {
            // The last nonzero position is the least significant digit.
            if mask >> (last - 1 - idx) & 1 == 1 {
                m.data[pos] = -m.data[pos];
            }
        }
        Some(m)
    }
}
