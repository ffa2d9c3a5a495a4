//! Numerical checks of the Mellin-type integrals
//!
//! ```text
//! I_r(p) = int_0^inf log P_r(s) s^{-p} ds/s,          0 < p < 1
//! J_r(p) = int_0^inf (s - log P_r(s)) s^{-p} ds/s,    1 < p < r + 1
//! ```
//!
//! and of the scaling identities `(1/I_r(p)) int log P_r(a t) t^{-p} dt/t = a^p`
//! (and the same with `J_r`). Integrals are taken in `u = log s` by adaptive
//! Gauss-Kronrod on a finite window, plus closed-form tails from the
//! asymptotics of the integrand at both ends.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub estimated_error: f64,
    pub node_count: usize,
}

/// Which normalized identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `log P_r` kernel, `0 < p < 1`.
    Id1,
    /// `s - log P_r` kernel, `1 < p < r + 1`.
    Id2,
}

impl Identity {
    pub fn valid_range(self, r: usize) -> (f64, f64) {
        match self {
            Identity::Id1 => (0.0, 1.0),
            Identity::Id2 => (1.0, r as f64 + 1.0),
        }
    }
}

fn ln_factorial(r: usize) -> f64 {
    (2..=r).map(|j| (j as f64).ln()).sum()
}

/// `log(1 + s + ... + s^r / r!)` for `s >= 0` without overflow.
pub fn log_taylor_exp(s: f64, r: usize) -> f64 {
    if s <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for j in 1..=r {
            term *= s / j as f64;
            sum += term;
        }
        return sum.ln_1p();
    }
    // log P_r(s) = r log s - log r! + log(sum_j r!/j! s^{j-r}).
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in (0..r).rev() {
        term *= (j + 1) as f64 / s;
        sum += term;
    }
    r as f64 * s.ln() - ln_factorial(r) + sum.ln()
}

/// `delta_r(s) = s - log P_r(s) >= 0`, which is `O(s^{r+1})` at 0.
///
/// Below `s = r + 1` it is evaluated as `-log(1 - e^{-s} R_r(s))` with the
/// exponential tail `R_r(s) = sum_{j>r} s^j/j!` summed directly, so the
/// small-`s` behavior carries full relative precision. Past that point the
/// direct difference is already well conditioned.
pub fn delta_r(s: f64, r: usize) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= r as f64 + 1.0 {
        return s - log_taylor_exp(s, r);
    }
    let mut term = 1.0;
    for j in 1..=r + 1 {
        term *= s / j as f64;
    }
    let mut tail = 0.0;
    let mut j = r + 1;
    while term > tail * 1e-18 {
        tail += term;
        j += 1;
        term *= s / j as f64;
    }
    -(-(-s).exp() * tail).ln_1p()
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel { lo, hi, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Globally adaptive G7/K15 on `[lo, hi]`: bisect the panel with the largest
/// error estimate until the summed estimate meets `rel_tol`.
pub fn adaptive_quadrature(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64, max_panels: usize) -> QuadratureResult {
    const INITIAL: usize = 32;
    let width = (hi - lo) / INITIAL as f64;
    let mut panels: Vec<Panel> = (0..INITIAL)
        .map(|i| gauss_kronrod(f, lo + i as f64 * width, if i + 1 == INITIAL { hi } else { lo + (i + 1) as f64 * width }))
        .collect();
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= rel_tol * value.abs() || panels.len() >= max_panels {
            return QuadratureResult { value, estimated_error: error, node_count: 15 * panels.len() };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("nonempty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        panels.push(gauss_kronrod(f, p.lo, mid));
        panels.push(gauss_kronrod(f, mid, p.hi));
    }
}

const WINDOW: f64 = 40.0;
const REL_TOL: f64 = 1e-13;
const MAX_PANELS: usize = 4000;

/// `int_{-inf}^{inf} kernel(a e^u) e^{-p u} du` for the chosen kernel.
fn scaled_transform(which: Identity, r: usize, p: f64, a: f64) -> QuadratureResult {
    let c = a.ln();
    // Keep `a e^u` small at the left edge and large at the right edge.
    let lo = (-WINDOW).min(-WINDOW - c);
    let hi = WINDOW.max(WINDOW - c);
    let rf = r as f64;
    let lf = ln_factorial(r);
    let body = match which {
        Identity::Id1 => adaptive_quadrature(&|u| log_taylor_exp(a * u.exp(), r) * (-p * u).exp(), lo, hi, REL_TOL, MAX_PANELS),
        Identity::Id2 => adaptive_quadrature(&|u| delta_r(a * u.exp(), r) * (-p * u).exp(), lo, hi, REL_TOL, MAX_PANELS),
    };
    // Upper end: log P_r(s) = r log s - log r! + r/s + O(s^-2).
    let log_tail_high = (-p * hi).exp() * ((rf * (hi + c) - lf) / p + rf / (p * p))
        + rf * (-(1.0 + p) * hi).exp() / (a * (1.0 + p));
    let tails = match which {
        // Lower end: log P_r(s) = s + O(s^2).
        Identity::Id1 => a * ((1.0 - p) * lo).exp() / (1.0 - p) + log_tail_high,
        // Lower end: delta_r(s) = s^{r+1}/(r+1)! + O(s^{r+2}).
        Identity::Id2 => {
            let low = a.powi(r as i32 + 1) * ((rf + 1.0 - p) * lo).exp() / ((rf + 1.0 - p) * (lf + (rf + 1.0).ln()).exp());
            let high = a * ((1.0 - p) * hi).exp() / (p - 1.0) - log_tail_high;
            low + high
        }
    };
    QuadratureResult {
        value: body.value + tails,
        estimated_error: body.estimated_error,
        node_count: body.node_count,
    }
}

fn check_range(which: Identity, r: usize, p: f64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    let (lo, hi) = which.valid_range(r);
    if !(p > lo && p < hi) {
        return Err(Error::InvalidPRange { p, lo, hi });
    }
    Ok(())
}

/// `I_r(p)` for `0 < p < 1`.
pub fn integral_i(r: usize, p: f64) -> Result<QuadratureResult> {
    check_range(Identity::Id1, r, p)?;
    Ok(scaled_transform(Identity::Id1, r, p, 1.0))
}

/// `J_r(p)` for `1 < p < r + 1`.
pub fn integral_j(r: usize, p: f64) -> Result<QuadratureResult> {
    check_range(Identity::Id2, r, p)?;
    Ok(scaled_transform(Identity::Id2, r, p, 1.0))
}

/// Left-hand side of the normalized identity, which should equal `a^p`.
pub fn identity_lhs(which: Identity, a: f64, p: f64, r: usize) -> Result<f64> {
    check_range(which, r, p)?;
    if a.is_nan() || a < 0.0 || a.is_infinite() {
        return Err(Error::InvalidArgument(format!("scale a = {a} must be finite and >= 0")));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let norm = scaled_transform(which, r, p, 1.0).value;
    Ok(scaled_transform(which, r, p, a).value / norm)
}

/// `|LHS - a^p| / max(a^p, eps)`.
pub fn identity_check(which: Identity, a: f64, p: f64, r: usize) -> Result<f64> {
    let lhs = identity_lhs(which, a, p, r)?;
    let target = a.powf(p);
    Ok((lhs - target).abs() / target.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // High-precision reference values (50 digits, independent evaluation).
    const DELTA_2_1E3: f64 = 1.665_417_166_666_488_3e-10;
    const DELTA_2_1E4: f64 = 1.666_541_671_666_666_6e-13;
    const DELTA_3_1E6: f64 = 4.166_663_333_334_722e-26;
    const DELTA_3_HALF: f64 = 0.001_753_158_440_869_434_9;
    const DELTA_2_TWO: f64 = 0.390_562_087_565_899_6;
    const DELTA_3_THIRTY: f64 = 21.486_614_046_926_716;
    const DELTA_10_ONE: f64 = 1.004_776_642_616_974_2e-8;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_r(0.0, 3), 0.0);
        assert!(rel(delta_r(1.0, 1), 1.0 - 2f64.ln()) < 1e-15);
        for (s, r, want) in [
            (1e-3, 2, DELTA_2_1E3),
            (1e-4, 2, DELTA_2_1E4),
            (1e-6, 3, DELTA_3_1E6),
            (0.5, 3, DELTA_3_HALF),
            (2.0, 2, DELTA_2_TWO),
            (30.0, 3, DELTA_3_THIRTY),
            (1.0, 10, DELTA_10_ONE),
        ] {
            assert!(rel(delta_r(s, r), want) < 1e-13, "s={s} r={r}: {}", delta_r(s, r));
        }
    }

    #[test]
    fn delta_leading_order() {
        let a = delta_r(1e-3, 2) / 1e-9;
        let b = delta_r(1e-4, 2) / 1e-12;
        assert!(rel(a, b) < 1e-3);
        assert!(rel(b, 1.0 / 6.0) < 1e-3);
    }

    #[test]
    fn delta_bounded_by_s() {
        for r in 1..6 {
            for i in 0..400 {
                let s = i as f64 * 0.137;
                let d = delta_r(s, r);
                assert!(d >= 0.0 && d <= s + 1e-15, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn log_taylor_exp_matches_direct_form() {
        for r in 1..5 {
            for s in [0.0f64, 1e-8, 0.3, 1.0, 2.5, 17.0, 1e6] {
                let direct: f64 = (1..=r).map(|j| s.powi(j as i32) / (1..=j).product::<usize>() as f64).sum::<f64>().ln_1p();
                assert!((log_taylor_exp(s, r) - direct).abs() <= 1e-13 * direct.abs().max(1e-300) + 1e-300);
            }
        }
        assert!(log_taylor_exp(1e200, 3).is_finite());
    }

    #[test]
    fn kronrod_is_exact_on_polynomials() {
        let r = adaptive_quadrature(&|x| x.powi(20) - 3.0 * x.powi(7) + 1.0, -1.0, 1.0, 1e-15, 64);
        assert!(rel(r.value, 2.0 / 21.0 + 2.0) < 1e-14);
        let gauss: f64 = WG.iter().sum::<f64>() * 2.0 - WG[3];
        assert!((gauss - 2.0).abs() < 1e-15);
        let kronrod: f64 = WGK.iter().sum::<f64>() * 2.0 - WGK[7];
        assert!((kronrod - 2.0).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_for_order_one() {
        // I_1(p) = pi / (p sin(pi p)).
        for p in [0.25, 0.5, 0.75] {
            let got = integral_i(1, p).unwrap();
            assert!(rel(got.value, PI / (p * (PI * p).sin())) < 1e-10, "p={p}");
            assert!(got.estimated_error >= 0.0 && got.node_count > 0);
        }
        // J_1(3/2) = 2 pi / 3, J_2(2) = pi / 8.
        assert!(rel(integral_j(1, 1.5).unwrap().value, 2.0 * PI / 3.0) < 1e-9);
        assert!(rel(integral_j(2, 2.0).unwrap().value, PI / 8.0) < 1e-9);
    }

    #[test]
    fn reference_integrals() {
        // Independent 40-digit evaluations.
        assert!(rel(integral_i(2, 0.5).unwrap().value, 9.762_649_804_303_567) < 1e-9);
        assert!(rel(integral_i(3, 0.75).unwrap().value, 8.652_483_813_842_667) < 1e-9);
        assert!(rel(integral_j(3, 2.5).unwrap().value, 0.084_927_327_922_622_3) < 1e-9);
        assert!(rel(integral_j(2, 1.5).unwrap().value, 0.953_137_975_110_331_2) < 1e-9);
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(matches!(integral_i(1, 1.0), Err(Error::InvalidPRange { .. })));
        assert!(matches!(integral_i(1, 0.0), Err(Error::InvalidPRange { .. })));
        assert!(matches!(integral_j(2, 3.0), Err(Error::InvalidPRange { .. })));
        assert!(matches!(integral_j(2, 1.0), Err(Error::InvalidPRange { .. })));
        assert!(identity_check(Identity::Id1, -1.0, 0.5, 1).is_err());
    }

    #[test]
    fn j_blows_up_near_the_right_end() {
        for r in 1..4 {
            let rf = r as f64;
            let mid = integral_j(r, rf + 0.5).unwrap().value;
            let edge = integral_j(r, rf + 0.99).unwrap().value;
            assert!(edge > mid && mid > 0.0);
        }
    }

    #[test]
    fn identities() {
        assert!(identity_check(Identity::Id1, 1.0, 0.3, 2).unwrap() < 1e-8);
        assert!(identity_check(Identity::Id2, 1.0, 2.2, 3).unwrap() < 1e-8);
        assert_eq!(identity_lhs(Identity::Id2, 0.0, 1.5, 1).unwrap(), 0.0);
        assert_eq!(identity_check(Identity::Id2, 0.0, 1.5, 1).unwrap(), 0.0);
        assert!(identity_check(Identity::Id1, 2.0, 0.5, 2).unwrap() < 1e-6);
        assert!(identity_check(Identity::Id2, 2.0, 1.5, 2).unwrap() < 1e-6);
    }

    #[test]
    fn lhs_is_monotone_in_scale() {
        for (which, p) in [(Identity::Id1, 0.4), (Identity::Id2, 1.7)] {
            let values: Vec<f64> = [0.25, 0.5, 1.0, 2.0, 4.0]
                .iter()
                .map(|&a| identity_lhs(which, a, p, 2).unwrap())
                .collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn errors_are_uniform_across_scales() {
        for (which, p, r) in [(Identity::Id1, 0.5, 2), (Identity::Id2, 2.0, 3)] {
            let errs: Vec<f64> = [0.25, 0.5, 1.0, 2.0, 4.0]
                .iter()
                .map(|&a| identity_check(which, a, p, r).unwrap())
                .collect();
            let spread = errs.iter().cloned().fold(0.0, f64::max) - errs.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread < 1e-5, "{errs:?}");
        }
    }
}
