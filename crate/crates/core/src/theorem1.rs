//! Coefficientwise hypotheses on `F_{k,r}` and the lp-mean comparisons they
//! imply.
//!
//! If `F_{k,r}(x) <= F_{k,r}(y)` for every `r <= k <= nr`, then
//! `||x||_p <= ||y||_p` on `[0, 1]`; with equal sums additionally
//! `||x||_p >= ||y||_p` on `[1, r+1]`. The hypotheses are checked exactly. The
//! conclusions are always measured on grids, never assumed.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectral::{self, IntMatrix};
use crate::sympoly;
use crate::vecnorm::{lp_mean_f64, PExponent, RationalVector};

pub const DEFAULT_GRID_POINTS: usize = 101;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub k: usize,
    pub fx: Rational,
    pub fy: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub r: usize,
    /// One entry per `k` in `[r, nr]`.
    pub checks: Vec<HypothesisCheck>,
    pub all_pass: bool,
    pub sums_equal: bool,
}

impl HypothesisReport {
    pub fn first_failure(&self) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn require_same_length(x: &RationalVector, y: &RationalVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    Ok(())
}

pub fn check_hypotheses(x: &RationalVector, y: &RationalVector, r: usize) -> Result<HypothesisReport> {
    require_same_length(x, y)?;
    let fx = sympoly::f_kr_all(x, r)?;
    let fy = sympoly::f_kr_all(y, r)?;
    Ok(hypotheses_from_coefficients(&fx, &fy, r, x.sum() == y.sum()))
}

/// Builds the report from precomputed coefficient lists `F_{0,r}..F_{nr,r}`
/// (from any route, e.g. matrix determinants).
pub fn hypotheses_from_coefficients(fx: &[Rational], fy: &[Rational], r: usize, sums_equal: bool) -> HypothesisReport {
    let top = fx.len().max(fy.len()).saturating_sub(1);
    let at = |c: &[Rational], k: usize| c.get(k).cloned().unwrap_or_else(Rational::zero);
    let checks: Vec<HypothesisCheck> = (r..=top)
        .map(|k| {
            let (fx, fy) = (at(fx, k), at(fy, k));
            let pass = fx <= fy;
            HypothesisCheck { k, fx, fy, pass }
        })
        .collect();
    let all_pass = checks.iter().all(|c| c.pass);
    HypothesisReport { r, checks, all_pass, sums_equal }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub p: f64,
    pub nx: f64,
    pub ny: f64,
    /// Signed slack of the required inequality; negative means violated.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConclusionReport {
    pub r: usize,
    pub tolerance: f64,
    /// `||x||_p <= ||y||_p` on `[0, 1]`.
    pub grid_low: Vec<GridPoint>,
    /// `||x||_p >= ||y||_p` on `[1, r+1]`.
    pub grid_high: Vec<GridPoint>,
    /// The high grid is asserted only when the sums agree.
    pub high_asserted: bool,
}

impl ConclusionReport {
    pub fn all_pass(&self) -> bool {
        self.grid_low.iter().all(|g| g.pass) && (!self.high_asserted || self.grid_high.iter().all(|g| g.pass))
    }

    pub fn violations(&self) -> impl Iterator<Item = &GridPoint> {
        let high = if self.high_asserted { &self.grid_high[..] } else { &[] };
        self.grid_low.iter().chain(high).filter(|g| !g.pass)
    }
}

/// Uniform grid including both endpoints.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let steps = (points.max(2) - 1) as f64;
    (0..points.max(2))
        .map(|i| if i + 1 == points.max(2) { hi } else { lo + (hi - lo) * i as f64 / steps })
        .collect()
}

fn measure(xf: &[f64], yf: &[f64], grid: &[f64], tol: f64, x_below: bool) -> Vec<GridPoint> {
    grid.iter()
        .map(|&p| {
            let nx = lp_mean_f64(xf, PExponent::from_f64(p));
            let ny = lp_mean_f64(yf, PExponent::from_f64(p));
            let margin = if x_below { ny - nx } else { nx - ny };
            GridPoint { p, nx, ny, margin, pass: margin >= -tol }
        })
        .collect()
}

pub fn verify_conclusions(
    x: &RationalVector,
    y: &RationalVector,
    r: usize,
    grid_points: usize,
    tol: f64,
) -> Result<ConclusionReport> {
    require_same_length(x, y)?;
    verify_conclusions_f64(&x.to_f64(), &y.to_f64(), r, grid_points, tol, x.sum() == y.sum())
}

/// Grid check on float vectors, e.g. numerically computed spectra whose
/// hypotheses were certified elsewhere. `sums_equal` must come from an exact
/// test; it decides whether the high grid is asserted.
pub fn verify_conclusions_f64(
    x: &[f64],
    y: &[f64],
    r: usize,
    grid_points: usize,
    tol: f64,
    sums_equal: bool,
) -> Result<ConclusionReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be >= 1".into()));
    }
    if grid_points < 2 || tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("need grid_points >= 2 and tol > 0".into()));
    }
    let grid_low = measure(x, y, &uniform_grid(0.0, 1.0, grid_points), tol, true);
    let grid_high = measure(x, y, &uniform_grid(1.0, r as f64 + 1.0, grid_points), tol, false);
    Ok(ConclusionReport { r, tolerance: tol, grid_low, grid_high, high_asserted: sums_equal })
}

/// Grid on `(r+1, p_max]` for exploration. These points carry no
/// guarantee; `pass` records only whether `||x||_p >= ||y||_p` was observed.
pub fn explore_beyond(
    x: &RationalVector,
    y: &RationalVector,
    r: usize,
    p_max: f64,
    grid_points: usize,
) -> Result<Vec<GridPoint>> {
    require_same_length(x, y)?;
    Ok(explore_beyond_f64(&x.to_f64(), &y.to_f64(), r, p_max, grid_points))
}

pub fn explore_beyond_f64(x: &[f64], y: &[f64], r: usize, p_max: f64, grid_points: usize) -> Vec<GridPoint> {
    let lo = r as f64 + 1.0;
    if p_max.is_nan() || p_max <= lo || x.len() != y.len() {
        return Vec::new();
    }
    let grid: Vec<f64> = uniform_grid(lo, p_max, grid_points + 1).into_iter().skip(1).collect();
    measure(x, y, &grid, 0.0, false)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullReport {
    pub per_r: Vec<HypothesisReport>,
    /// Largest `r <= r_max` whose hypotheses all pass.
    pub certified_r: Option<usize>,
    /// `[0, r+1]` with equal sums, `[0, 1]` otherwise.
    pub certified_interval: Option<(f64, f64)>,
    /// First failing `(r, k)` in `(r, k)` order.
    pub failure_witness: Option<(usize, usize)>,
    pub conclusions: Option<ConclusionReport>,
}

pub fn full_report(x: &RationalVector, y: &RationalVector, r_max: usize) -> Result<FullReport> {
    full_report_with(x, y, r_max, DEFAULT_GRID_POINTS, DEFAULT_TOLERANCE)
}

pub fn full_report_with(
    x: &RationalVector,
    y: &RationalVector,
    r_max: usize,
    grid_points: usize,
    tol: f64,
) -> Result<FullReport> {
    assemble_full_report(
        r_max,
        x.sum() == y.sum(),
        |r| check_hypotheses(x, y, r),
        |r| verify_conclusions(x, y, r, grid_points, tol),
    )
}

fn require_same_order(x: &IntMatrix, y: &IntMatrix) -> Result<()> {
    if x.rows() != y.rows() {
        return Err(Error::LengthMismatch { left: x.rows(), right: y.rows() });
    }
    Ok(())
}

/// Hypotheses for the spectra of two symmetric PSD integer matrices, read
/// off the matrix determinants exactly. The sums compare as traces.
pub fn check_hypotheses_spectral(x: &IntMatrix, y: &IntMatrix, r: usize) -> Result<HypothesisReport> {
    require_same_order(x, y)?;
    let fx = spectral::f_from_matrix(x, r)?;
    let fy = spectral::f_from_matrix(y, r)?;
    Ok(hypotheses_from_coefficients(&fx, &fy, r, x.trace() == y.trace()))
}

/// Conclusion grids on numerically computed spectra.
pub fn verify_conclusions_spectral(
    x: &IntMatrix,
    y: &IntMatrix,
    r: usize,
    grid_points: usize,
    tol: f64,
) -> Result<ConclusionReport> {
    require_same_order(x, y)?;
    let (ex, ey) = (spectral::eigenvalues_f64(x)?, spectral::eigenvalues_f64(y)?);
    verify_conclusions_f64(&clamp_psd(ex), &clamp_psd(ey), r, grid_points, tol, x.trace() == y.trace())
}

/// PSD spectra can come back with tiny negative rounding noise.
pub fn clamp_psd(ev: Vec<f64>) -> Vec<f64> {
    ev.into_iter().map(|v| v.max(0.0)).collect()
}

pub fn full_report_spectral(
    x: &IntMatrix,
    y: &IntMatrix,
    r_max: usize,
    grid_points: usize,
    tol: f64,
) -> Result<FullReport> {
    require_same_order(x, y)?;
    assemble_full_report(
        r_max,
        x.trace() == y.trace(),
        |r| check_hypotheses_spectral(x, y, r),
        |r| verify_conclusions_spectral(x, y, r, grid_points, tol),
    )
}

fn assemble_full_report(
    r_max: usize,
    sums_equal: bool,
    hypotheses: impl Fn(usize) -> Result<HypothesisReport>,
    conclusions: impl Fn(usize) -> Result<ConclusionReport>,
) -> Result<FullReport> {
    if r_max == 0 {
        return Err(Error::InvalidArgument("r_max must be >= 1".into()));
    }
    let per_r = (1..=r_max).map(hypotheses).collect::<Result<Vec<_>>>()?;
    let certified_r = per_r.iter().rev().find(|h| h.all_pass).map(|h| h.r);
    let failure_witness = per_r
        .iter()
        .find_map(|h| h.first_failure().map(|c| (h.r, c.k)));
    let certified_interval = certified_r.map(|r| (0.0, if sums_equal { r as f64 + 1.0 } else { 1.0 }));
    let conclusions = certified_r.map(conclusions).transpose()?;
    Ok(FullReport { per_r, certified_r, certified_interval, failure_witness, conclusions })
}
