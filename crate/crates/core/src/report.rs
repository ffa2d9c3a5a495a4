//! Serializable report documents. Rationals are written as `"num/den"`
//! strings and fields serialize in declaration order, so a parsed report
//! re-serializes byte for byte.

use serde::{Deserialize, Serialize};

use crate::majorization::{MajorizationVerdict, ScanCell, Theorem2Report};
use crate::rational::{self, Rational};
use crate::theorem1::{ConclusionReport, FullReport, GridPoint, HypothesisReport};

/// Serde adapter for exact rationals.
pub mod fraction {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::to_fraction_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        rational::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for lists of exact rationals.
pub mod fraction_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational::to_fraction_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| rational::parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub k: usize,
    #[serde(with = "fraction")]
    pub fx: Rational,
    #[serde(with = "fraction")]
    pub fy: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    pub p: f64,
    pub nx: f64,
    pub ny: f64,
    pub margin: f64,
    pub pass: bool,
}

impl From<&GridPoint> for GridDoc {
    fn from(g: &GridPoint) -> Self {
        Self { p: g.p, nx: g.nx, ny: g.ny, margin: g.margin, pass: g.pass }
    }
}

fn checks_doc(h: &HypothesisReport) -> Vec<CheckDoc> {
    h.checks
        .iter()
        .map(|c| CheckDoc { k: c.k, fx: c.fx.clone(), fy: c.fy.clone(), pass: c.pass })
        .collect()
}

/// Asserted grid points: the low grid, then the high grid when the sums agree.
fn grids_doc(c: &ConclusionReport) -> Vec<GridDoc> {
    let high = if c.high_asserted { &c.grid_high[..] } else { &[] };
    c.grid_low.iter().chain(high).map(GridDoc::from).collect()
}

/// Single-order hypothesis check plus measured conclusions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Doc {
    pub r: usize,
    pub checks: Vec<CheckDoc>,
    pub sums_equal: bool,
    pub grids: Vec<GridDoc>,
    pub all_pass: bool,
    pub certified_interval: Option<[f64; 2]>,
    pub tolerance: f64,
    pub uncertified: Vec<GridDoc>,
    pub seed: u64,
}

impl Theorem1Doc {
    pub fn new(h: &HypothesisReport, c: &ConclusionReport, uncertified: &[GridPoint], seed: u64) -> Self {
        let certified_interval = h
            .all_pass
            .then_some([0.0, if h.sums_equal { h.r as f64 + 1.0 } else { 1.0 }]);
        Self {
            r: h.r,
            checks: checks_doc(h),
            sums_equal: h.sums_equal,
            grids: grids_doc(c),
            all_pass: h.all_pass && c.all_pass(),
            certified_interval,
            tolerance: c.tolerance,
            uncertified: uncertified.iter().map(GridDoc::from).collect(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisDoc {
    pub r: usize,
    pub checks: Vec<CheckDoc>,
    pub all_pass: bool,
    pub sums_equal: bool,
}

impl From<&HypothesisReport> for HypothesisDoc {
    fn from(h: &HypothesisReport) -> Self {
        Self { r: h.r, checks: checks_doc(h), all_pass: h.all_pass, sums_equal: h.sums_equal }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub r: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReportDoc {
    pub r_max: usize,
    pub per_r: Vec<HypothesisDoc>,
    pub certified_r: Option<usize>,
    pub certified_interval: Option<[f64; 2]>,
    pub failure_witness: Option<WitnessDoc>,
    pub grids: Vec<GridDoc>,
    pub conclusions_pass: Option<bool>,
    pub seed: u64,
}

impl FullReportDoc {
    pub fn new(report: &FullReport, r_max: usize, seed: u64) -> Self {
        Self {
            r_max,
            per_r: report.per_r.iter().map(HypothesisDoc::from).collect(),
            certified_r: report.certified_r,
            certified_interval: report.certified_interval.map(|(a, b)| [a, b]),
            failure_witness: report.failure_witness.map(|(r, k)| WitnessDoc { r, k }),
            grids: report.conclusions.as_ref().map(grids_doc).unwrap_or_default(),
            conclusions_pass: report.conclusions.as_ref().map(ConclusionReport::all_pass),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationDoc {
    pub holds: bool,
    pub sum_equal: bool,
    pub first_violation: Option<ViolationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub k: usize,
    #[serde(with = "fraction")]
    pub lhs: Rational,
    #[serde(with = "fraction")]
    pub rhs: Rational,
}

impl From<&MajorizationVerdict> for MajorizationDoc {
    fn from(v: &MajorizationVerdict) -> Self {
        Self {
            holds: v.holds,
            sum_equal: v.sum_equal,
            first_violation: v
                .first_violation
                .as_ref()
                .map(|(k, a, b)| ViolationDoc { k: *k, lhs: a.clone(), rhs: b.clone() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub r: usize,
    pub k: usize,
    #[serde(with = "fraction")]
    pub x: Rational,
    #[serde(with = "fraction")]
    pub y: Rational,
    pub holds: bool,
}

impl From<&ScanCell> for CellDoc {
    fn from(c: &ScanCell) -> Self {
        Self { r: c.r, k: c.k, x: c.lhs.clone(), y: c.rhs.clone(), holds: c.holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Doc {
    pub applicable: bool,
    pub majorizes: Option<MajorizationDoc>,
    pub g_holds: Option<bool>,
    pub m_holds: Option<bool>,
    pub first_g_violation: Option<CellDoc>,
    pub first_m_violation: Option<CellDoc>,
    pub consistent: Option<bool>,
    /// The families were scanned only for `k <= k_max`.
    pub k_max: usize,
    pub g_cells: Vec<CellDoc>,
    pub m_cells: Vec<CellDoc>,
    pub seed: u64,
}

impl Theorem2Doc {
    pub fn new(report: &Theorem2Report, seed: u64) -> Self {
        Self {
            applicable: true,
            majorizes: Some(MajorizationDoc::from(&report.majorization)),
            g_holds: Some(report.g_holds()),
            m_holds: Some(report.m_holds()),
            first_g_violation: report.first_g_violation().map(CellDoc::from),
            first_m_violation: report.first_m_violation().map(CellDoc::from),
            consistent: Some(report.consistent()),
            k_max: report.k_max,
            g_cells: report.g_cells.iter().map(CellDoc::from).collect(),
            m_cells: report.m_cells.iter().map(CellDoc::from).collect(),
            seed,
        }
    }

    pub fn not_applicable(k_max: usize, seed: u64) -> Self {
        Self {
            applicable: false,
            majorizes: None,
            g_holds: None,
            m_holds: None,
            first_g_violation: None,
            first_m_violation: None,
            consistent: None,
            k_max,
            g_cells: Vec::new(),
            m_cells: Vec::new(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientsDoc {
    pub r: usize,
    #[serde(with = "fraction_vec")]
    pub coeffs: Vec<Rational>,
    /// `k! * coeff_k`.
    #[serde(with = "fraction_vec")]
    pub scaled: Vec<Rational>,
}

impl CoefficientsDoc {
    pub fn new(r: usize, coeffs: &[Rational]) -> Self {
        let scaled = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * rational::factorial(k))
            .collect();
        Self { r, coeffs: coeffs.to_vec(), scaled }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::theorem1;
    use crate::vecnorm::RationalVector;

    #[test]
    fn fractions_render_canonically() {
        let doc = CoefficientsDoc::new(2, &[int(1), int(2), frac(3, 2)]);
        assert_eq!(rational::to_fraction_string(&doc.scaled[2]), "3/1");
        assert_eq!(doc.coeffs[2], frac(3, 2));
    }

    #[test]
    fn theorem1_doc_shapes() {
        let x = RationalVector::from_integers(&[2, 0]).unwrap();
        let y = RationalVector::from_integers(&[1, 1]).unwrap();
        let h = theorem1::check_hypotheses(&x, &y, 1).unwrap();
        let c = theorem1::verify_conclusions(&x, &y, 1, 5, 1e-9).unwrap();
        let doc = Theorem1Doc::new(&h, &c, &[], 42);
        assert_eq!(doc.checks.len(), 2);
        assert_eq!(doc.grids.len(), 10);
        assert_eq!(doc.certified_interval, Some([0.0, 2.0]));
        assert!(doc.all_pass);
    }
}
