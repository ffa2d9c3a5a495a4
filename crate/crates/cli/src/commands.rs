//! Command dispatch. Every command yields an [`Outcome`] holding both renderings.

use std::fmt::Write as _;
use std::path::Path;

use lpmaj_core::genfun::{self, Catalyst, SeriesTemplate};
use lpmaj_core::majorization::{self, SchurFamily};
use lpmaj_core::mellin::{self, Identity};
use lpmaj_core::rational::{self, to_fraction_string};
use lpmaj_core::report::{
    CheckDoc, CoefficientsDoc, FullReportDoc, HypothesisDoc, MajorizationDoc, Theorem1Doc, Theorem2Doc,
};
use lpmaj_core::spectral::{self, IntMatrix};
use lpmaj_core::sympoly::{self, Family};
use lpmaj_core::theorem1::{self, HypothesisReport};
use lpmaj_core::{lp_mean, partial_sums_desc, PExponent, Rational, RationalVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, RunConfig, WhichIdentity};
use crate::input::{self, InputError};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Usage(String),
    Core(lpmaj_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<lpmaj_core::Error> for CliError {
    fn from(e: lpmaj_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Input(e) => json!({
                "kind": "parse",
                "source": e.source,
                "line": e.line,
                "column": e.column,
                "message": e.message,
            }),
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Core(e) => json!({ "kind": "invalid-input", "message": e.to_string() }),
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    fn new(holds: bool, report: Value, text: String) -> Self {
        Self { code: if holds { EXIT_HOLDS } else { EXIT_FAILS }, report, text }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn to_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("report documents serialize")
}

pub fn dispatch(config: &RunConfig) -> CmdResult {
    config.validate().map_err(CliError::Usage)?;
    let seed = config.seed;
    match &config.command {
        Command::Norms { x, y, p, tol } => norms(x, y.as_deref(), p, *tol),
        Command::Fkr { x, r, family, k, k_max, identities, schur_samples } => {
            fkr(x, *r, (*family).into(), *k, *k_max, *identities, *schur_samples, seed)
        }
        Command::Theorem1 { x, y, qx, qy, direct, r, r_max, grid_points, tol, explore_to } => {
            let input = match (x, y, qx, qy) {
                (Some(x), Some(y), _, _) => {
                    let (x, y) = load_pair(x, y)?;
                    Theorem1Input::Vectors(x, y)
                }
                (_, _, Some(qx), Some(qy)) => {
                    let (x, y) = (spectral_matrix(qx, *direct)?, spectral_matrix(qy, *direct)?);
                    if x.rows() != y.rows() {
                        return Err(lpmaj_core::Error::LengthMismatch { left: x.rows(), right: y.rows() }.into());
                    }
                    Theorem1Input::Spectra(x, y)
                }
                _ => return Err(CliError::Usage("give --x/--y or --qx/--qy".into())),
            };
            match (r, r_max) {
                (Some(r), _) => theorem1_single(&input, *r, *grid_points, *tol, *explore_to, seed),
                (None, Some(r_max)) => theorem1_full(&input, *r_max, *grid_points, *tol, seed),
                (None, None) => Err(CliError::Usage("one of --r or --r-max is required".into())),
            }
        }
        Command::Majorize { pair } => {
            let (x, y) = load_pair(&pair.x, &pair.y)?;
            majorize(&x, &y)
        }
        Command::Theorem2 { pair, k_max } => {
            let (x, y) = load_pair(&pair.x, &pair.y)?;
            theorem2(&x, &y, *k_max, seed)
        }
        Command::Spectral { q, r, against, direct, sign_flips } => {
            spectral_cmd(q, r, against.as_deref(), *direct, *sign_flips)
        }
        Command::MellinValidate { r, p, a, which, max_rel_err } => {
            mellin_validate(*r, p.as_deref(), a, *which, *max_rel_err)
        }
        Command::Catalyst { pair, c, r } => {
            let (x, y) = load_pair(&pair.x, &pair.y)?;
            catalyst(&x, &y, c, *r)
        }
    }
}

fn load_pair(x: &Path, y: &Path) -> Result<(RationalVector, RationalVector), CliError> {
    let (x, y) = (input::load_vector(x)?, input::load_vector(y)?);
    if x.len() != y.len() {
        return Err(lpmaj_core::Error::LengthMismatch { left: x.len(), right: y.len() }.into());
    }
    Ok((x, y))
}

fn frac(q: &Rational) -> String {
    to_fraction_string(q)
}

fn fracs(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_fraction_string).collect()
}

/// Integer-valued rationals print bare in text mode.
fn pretty(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        q.to_string()
    }
}

fn pretty_list(v: &[Rational]) -> String {
    v.iter().map(pretty).collect::<Vec<_>>().join(", ")
}

fn parse_f64_list(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            let t = part.trim();
            match t {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => t
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Usage(format!("--{flag}: cannot parse {t:?} as a number"))),
            }
        })
        .collect()
}

fn p_label(p: f64) -> String {
    if p.is_infinite() {
        if p > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{p}")
    }
}

fn norms(x: &Path, y: Option<&Path>, p: &str, tol: f64) -> CmdResult {
    let x = input::load_vector(x)?;
    let y = y.map(input::load_vector).transpose()?;
    if let Some(y) = &y {
        if x.len() != y.len() {
            return Err(lpmaj_core::Error::LengthMismatch { left: x.len(), right: y.len() }.into());
        }
    }
    let ps = parse_f64_list("p", p)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut holds = true;
    writeln!(text, "partial sums (desc): {}", pretty_list(&partial_sums_desc(&x))).unwrap();
    for &p in &ps {
        let e = PExponent::from_f64(p);
        let nx = lp_mean(&x, e);
        let mut row = json!({ "p": p_label(p), "x": nx });
        write!(text, "p = {:>6}  ||x|| = {nx:.12}", p_label(p)).unwrap();
        if let Some(y) = &y {
            let ny = lp_mean(y, e);
            // Power majorization of x over y: below for p <= 1, above for p >= 1.
            let slack = tol * nx.abs().max(ny.abs()).max(1.0);
            let ok = if p <= 1.0 { nx <= ny + slack } else { true } && if p >= 1.0 { nx + slack >= ny } else { true };
            holds &= ok;
            row["y"] = json!(ny);
            row["pass"] = json!(ok);
            write!(text, "  ||y|| = {ny:.12}  {}", if ok { "ok" } else { "FAIL" }).unwrap();
        }
        text.push('\n');
        rows.push(row);
    }
    let mut report = json!({ "partial_sums": fracs(&partial_sums_desc(&x)), "rows": rows, "tolerance": tol });
    if y.is_some() {
        report["power_majorized"] = json!(holds);
        writeln!(text, "power majorization of x over y: {}", if holds { "holds" } else { "fails" }).unwrap();
    }
    Ok(Outcome::new(holds, report, text))
}

fn family_value(family: Family, x: &RationalVector, k: usize, r: usize) -> Result<Rational, CliError> {
    Ok(sympoly::evaluate(family, x, k, r)?.value)
}

#[allow(clippy::too_many_arguments)]
fn fkr(
    x: &Path,
    r: usize,
    family: Family,
    k: Option<usize>,
    k_max: Option<usize>,
    identities: bool,
    schur_samples: usize,
    seed: u64,
) -> CmdResult {
    let x = input::load_vector(x)?;
    let n = x.len();
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => {
            let default_top = if family == Family::E { n } else { n * r };
            (0..=k_max.unwrap_or(default_top)).collect()
        }
    };
    let values: Vec<Rational> = match family {
        Family::F if k.is_none() && k_max.is_none() => sympoly::f_kr_all(&x, r)?,
        _ => ks.iter().map(|&k| family_value(family, &x, k, r)).collect::<Result<_, _>>()?,
    };
    let mut text = format!("{family} values, r = {r}, x = {x}\n");
    let rows: Vec<Value> = ks
        .iter()
        .zip(&values)
        .map(|(&k, v)| {
            let scaled = v * rational::factorial(k);
            writeln!(text, "k = {k:>3}  value = {:<24}  k!*value = {}", pretty(v), pretty(&scaled)).unwrap();
            json!({ "k": k, "value": frac(v), "scaled": frac(&scaled) })
        })
        .collect();
    let mut holds = true;
    let mut report = json!({
        "family": family.to_string(),
        "r": if family == Family::E { Value::Null } else { json!(r) },
        "x": fracs(x.entries()),
        "values": rows,
    });
    if identities {
        let ids = sympoly::f_special_identities(&x, r)?;
        holds &= ids.all_pass();
        let checks: Vec<Value> = ids
            .checks
            .iter()
            .map(|c| {
                writeln!(text, "{}: {} ({} vs {})", c.name, if c.pass { "ok" } else { "FAIL" }, pretty(&c.lhs), pretty(&c.rhs))
                    .unwrap();
                json!({ "name": c.name, "lhs": frac(&c.lhs), "rhs": frac(&c.rhs), "pass": c.pass })
            })
            .collect();
        report["identities"] = json!(checks);
    }
    if schur_samples > 0 {
        let ctor: fn(usize, usize) -> SchurFamily = match family {
            Family::F => |k, r| SchurFamily::F { k, r },
            Family::G => |k, r| SchurFamily::G { k, r },
            Family::M => |k, r| SchurFamily::M { k, r },
            other => {
                return Err(CliError::Usage(format!("--schur-samples supports F, G and M, not {other}")));
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut probes = Vec::new();
        let mut violations = 0usize;
        for _ in 0..schur_samples {
            let v = majorization::random_vector(&mut rng, n, 20, 5);
            for &k in ks.iter().filter(|&&k| k >= 1) {
                let verdict = majorization::schur_ostrowski_sample(ctor(k, r), &v)?;
                if !verdict.holds {
                    violations += 1;
                    probes.push(json!({ "x": fracs(v.entries()), "k": k }));
                }
            }
        }
        holds &= violations == 0;
        writeln!(text, "Schur-Ostrowski: {schur_samples} samples, {violations} violations").unwrap();
        report["schur_ostrowski"] = json!({ "samples": schur_samples, "violations": probes });
    }
    Ok(Outcome::new(holds, report, text))
}

fn hypothesis_text(text: &mut String, h: &HypothesisReport) {
    writeln!(text, "r = {}: hypotheses {}", h.r, if h.all_pass { "hold" } else { "fail" }).unwrap();
    if let Some(c) = h.first_failure() {
        let f = rational::factorial(c.k);
        writeln!(
            text,
            "  witness k = {}: {}!F(x) = {} > {}!F(y) = {}",
            c.k,
            c.k,
            pretty(&(&c.fx * &f)),
            c.k,
            pretty(&(&c.fy * &f))
        )
        .unwrap();
    }
}

/// Theorem 1 inputs: explicit vectors, or two matrices whose spectra are
/// compared (hypotheses exactly via determinants, grids on f64 eigenvalues).
enum Theorem1Input {
    Vectors(RationalVector, RationalVector),
    Spectra(IntMatrix, IntMatrix),
}

fn theorem1_single(
    input: &Theorem1Input,
    r: usize,
    grid_points: usize,
    tol: f64,
    explore_to: Option<f64>,
    seed: u64,
) -> CmdResult {
    let (h, c, uncertified) = match input {
        Theorem1Input::Vectors(x, y) => {
            let uncertified = match explore_to {
                Some(p_max) => theorem1::explore_beyond(x, y, r, p_max, grid_points)?,
                None => Vec::new(),
            };
            (
                theorem1::check_hypotheses(x, y, r)?,
                theorem1::verify_conclusions(x, y, r, grid_points, tol)?,
                uncertified,
            )
        }
        Theorem1Input::Spectra(x, y) => {
            let uncertified = match explore_to {
                Some(p_max) => {
                    let ex = theorem1::clamp_psd(spectral::eigenvalues_f64(x)?);
                    let ey = theorem1::clamp_psd(spectral::eigenvalues_f64(y)?);
                    theorem1::explore_beyond_f64(&ex, &ey, r, p_max, grid_points)
                }
                None => Vec::new(),
            };
            (
                theorem1::check_hypotheses_spectral(x, y, r)?,
                theorem1::verify_conclusions_spectral(x, y, r, grid_points, tol)?,
                uncertified,
            )
        }
    };
    let doc = Theorem1Doc::new(&h, &c, &uncertified, seed);
    let mut text = String::new();
    hypothesis_text(&mut text, &h);
    if let Some([lo, hi]) = doc.certified_interval {
        writeln!(text, "certified interval: [{lo}, {hi}]").unwrap();
    }
    let violations = c.violations().count();
    writeln!(text, "conclusion grid: {} points, {violations} violations beyond {tol:e}", doc.grids.len()).unwrap();
    if !uncertified.is_empty() {
        let held = uncertified.iter().filter(|g| g.pass).count();
        writeln!(text, "uncertified exploration: {held}/{} points observed in order", uncertified.len()).unwrap();
    }
    Ok(Outcome::new(doc.all_pass, to_value(&doc), text))
}

fn theorem1_full(input: &Theorem1Input, r_max: usize, grid_points: usize, tol: f64, seed: u64) -> CmdResult {
    let full = match input {
        Theorem1Input::Vectors(x, y) => theorem1::full_report_with(x, y, r_max, grid_points, tol)?,
        Theorem1Input::Spectra(x, y) => theorem1::full_report_spectral(x, y, r_max, grid_points, tol)?,
    };
    let doc = FullReportDoc::new(&full, r_max, seed);
    let mut text = String::new();
    for h in &full.per_r {
        hypothesis_text(&mut text, h);
    }
    match (doc.certified_r, doc.certified_interval) {
        (Some(r), Some([lo, hi])) => writeln!(text, "certified r = {r}, interval [{lo}, {hi}]").unwrap(),
        _ => writeln!(text, "no order certified").unwrap(),
    }
    if let Some(pass) = doc.conclusions_pass {
        writeln!(text, "conclusion grid: {}", if pass { "all points pass" } else { "violations found" }).unwrap();
    }
    let holds = doc.failure_witness.is_none() && doc.conclusions_pass != Some(false);
    Ok(Outcome::new(holds, to_value(&doc), text))
}

fn majorization_text(doc: &MajorizationDoc) -> String {
    let mut text = format!("x majorizes y: {}\n", doc.holds);
    if !doc.sum_equal {
        text.push_str("  totals differ\n");
    }
    if let Some(v) = &doc.first_violation {
        writeln!(text, "  first violation at k = {}: s_k(x) = {} < s_k(y) = {}", v.k, pretty(&v.lhs), pretty(&v.rhs))
            .unwrap();
    }
    text
}

fn majorize(x: &RationalVector, y: &RationalVector) -> CmdResult {
    let doc = MajorizationDoc::from(&majorization::majorizes(x, y)?);
    let text = majorization_text(&doc);
    Ok(Outcome::new(doc.holds, to_value(&doc), text))
}

fn theorem2(x: &RationalVector, y: &RationalVector, k_max: usize, seed: u64) -> CmdResult {
    let doc = match majorization::theorem2_scan(x, y, k_max) {
        Ok(report) => Theorem2Doc::new(&report, seed),
        Err(lpmaj_core::Error::UnequalSums) => {
            let doc = Theorem2Doc::not_applicable(k_max, seed);
            let text = "not applicable: totals of x and y differ\n".to_string();
            return Ok(Outcome::new(false, to_value(&doc), text));
        }
        Err(e) => return Err(e.into()),
    };
    let major = doc.majorizes.as_ref().expect("applicable scan carries a verdict");
    let mut text = majorization_text(major);
    let cell_line = |name: &str, holds: Option<bool>, cell: &Option<lpmaj_core::report::CellDoc>, op: &str| {
        let mut line = format!("{name} (k <= {k_max}): {}", if holds == Some(true) { "holds" } else { "fails" });
        if let Some(c) = cell {
            write!(line, ", first violation r = {}, k = {}: {} {op} {}", c.r, c.k, pretty(&c.x), pretty(&c.y)).unwrap();
        }
        line.push('\n');
        line
    };
    text.push_str(&cell_line("G(x) <= G(y)", doc.g_holds, &doc.first_g_violation, ">"));
    text.push_str(&cell_line("M(x) >= M(y)", doc.m_holds, &doc.first_m_violation, "<"));
    writeln!(text, "consistent: {}", doc.consistent == Some(true)).unwrap();
    let holds = major.holds && doc.g_holds == Some(true) && doc.m_holds == Some(true);
    Ok(Outcome::new(holds, to_value(&doc), text))
}

fn spectral_matrix(path: &Path, direct: bool) -> Result<IntMatrix, CliError> {
    let m = input::load_matrix(path)?;
    if direct {
        if m.rows() != m.cols() || !m.is_symmetric() {
            return Err(CliError::Usage(format!("{}: --direct needs a symmetric square matrix", path.display())));
        }
        Ok(m)
    } else {
        Ok(spectral::gram(&m)?)
    }
}

fn spectral_doc(text: &mut String, label: &str, x: &IntMatrix, orders: &[usize]) -> Result<(Value, spectral::SpectralSummary), CliError> {
    let summary = spectral::summarize(x, orders)?;
    writeln!(text, "{label}: det(I + t{label}) coefficients: {}", pretty_list(&summary.e_coeffs)).unwrap();
    let f: Vec<CoefficientsDoc> = summary
        .f_coeffs
        .iter()
        .map(|(r, c)| {
            let doc = CoefficientsDoc::new(*r, c);
            writeln!(text, "{label}: r = {r}, k!F_k: {}", pretty_list(&doc.scaled)).unwrap();
            doc
        })
        .collect();
    let doc = json!({
        "matrix": x.to_rows(),
        "e_coeffs": fracs(&summary.e_coeffs),
        "f": to_value(&f),
        "nonnegative": summary.nonnegative(),
    });
    Ok((doc, summary))
}

fn spectral_cmd(q: &Path, orders: &[usize], against: Option<&Path>, direct: bool, sign_flips: usize) -> CmdResult {
    let x = spectral_matrix(q, direct)?;
    let mut text = String::new();
    let (x_doc, x_sum) = spectral_doc(&mut text, "X", &x, orders)?;
    let mut holds = x_sum.nonnegative();
    let mut report = json!({ "x": x_doc });
    if let Some(path) = against {
        let y = spectral_matrix(path, direct)?;
        if y.rows() != x.rows() {
            return Err(lpmaj_core::Error::LengthMismatch { left: x.rows(), right: y.rows() }.into());
        }
        let (y_doc, y_sum) = spectral_doc(&mut text, "Y", &y, orders)?;
        holds &= y_sum.nonnegative();
        let sums_equal = x.trace() == y.trace();
        let hyps: Vec<HypothesisDoc> = x_sum
            .f_coeffs
            .iter()
            .zip(&y_sum.f_coeffs)
            .map(|((r, fx), (_, fy))| {
                let h = theorem1::hypotheses_from_coefficients(fx, fy, *r, sums_equal);
                hypothesis_text(&mut text, &h);
                holds &= h.all_pass;
                HypothesisDoc::from(&h)
            })
            .collect();
        report["y"] = y_doc;
        report["hypotheses"] = to_value(&hyps);
    }
    if sign_flips > 0 && !direct {
        let q_matrix = input::load_matrix(q)?;
        let mut variants = Vec::new();
        for (idx, variant) in spectral::sign_flip_variants(&q_matrix, sign_flips).enumerate() {
            let e = spectral::det_i_plus_ta(&spectral::gram(&variant)?)?;
            variants.push(json!({ "variant": idx, "q": variant.to_rows(), "e_coeffs": fracs(&e) }));
        }
        writeln!(text, "sign-flip variants examined: {}", variants.len()).unwrap();
        report["sign_flips"] = json!(variants);
    }
    Ok(Outcome::new(holds, report, text))
}

fn mellin_validate(r: usize, p: Option<&str>, a: &str, which: WhichIdentity, max_rel_err: f64) -> CmdResult {
    let scales = parse_f64_list("a", a)?;
    let identities: &[Identity] = match which {
        WhichIdentity::Id1 => &[Identity::Id1],
        WhichIdentity::Id2 => &[Identity::Id2],
        WhichIdentity::Both => &[Identity::Id1, Identity::Id2],
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut holds = true;
    for &id in identities {
        let ps = match p {
            Some(list) => parse_f64_list("p", list)?,
            None => match id {
                Identity::Id1 => vec![0.25, 0.5, 0.75],
                Identity::Id2 => {
                    let mid = (r as f64 + 2.0) / 2.0;
                    if mid == 1.5 { vec![1.5] } else { vec![1.5, mid] }
                }
            },
        };
        let name = match id {
            Identity::Id1 => "id1",
            Identity::Id2 => "id2",
        };
        for &p in &ps {
            for &a in &scales {
                let lhs = mellin::identity_lhs(id, a, p, r)?;
                let target = a.powf(p);
                let rel_err = (lhs - target).abs() / target.max(f64::MIN_POSITIVE);
                let pass = rel_err < max_rel_err;
                holds &= pass;
                writeln!(text, "{name} r = {r} p = {p} a = {a}: lhs = {lhs:.15} a^p = {target:.15} rel err = {rel_err:.3e} {}", if pass { "ok" } else { "FAIL" }).unwrap();
                rows.push(json!({ "identity": name, "r": r, "p": p, "a": a, "lhs": lhs, "target": target, "rel_err": rel_err, "pass": pass }));
            }
        }
    }
    let mut report = json!({ "rows": rows, "max_rel_err": max_rel_err });
    if r == 1 && identities.contains(&Identity::Id1) {
        // I_1(p) = pi / (p sin(pi p)).
        let i = mellin::integral_i(1, 0.5)?.value;
        let target = 2.0 * std::f64::consts::PI;
        let rel_err = (i - target).abs() / target;
        let pass = rel_err < max_rel_err;
        holds &= pass;
        writeln!(text, "I_1(0.5) = {i:.15} vs 2pi: rel err = {rel_err:.3e} {}", if pass { "ok" } else { "FAIL" }).unwrap();
        report["closed_form"] = json!({ "value": i, "target": target, "rel_err": rel_err, "pass": pass });
    }
    Ok(Outcome::new(holds, report, text))
}

fn catalyst(x: &RationalVector, y: &RationalVector, c: &str, r: usize) -> CmdResult {
    let cat = Catalyst::new(input::parse_rational_list("c", c)?)?;
    let tpl = SeriesTemplate::taylor(r);
    let top = x.len() * cat.entries().len() * r;
    let fx = genfun::catalyst_product(x, &cat, &tpl, top).into_coeffs();
    let fy = genfun::catalyst_product(y, &cat, &tpl, top).into_coeffs();
    let (tx, ty) = (genfun::tensor(x, &cat), genfun::tensor(y, &cat));
    let h = theorem1::hypotheses_from_coefficients(&fx, &fy, r, tx.sum() == ty.sum());
    let major = MajorizationDoc::from(&majorization::majorizes(&tx, &ty)?);
    let mut text = format!("catalyst c = ({})\n", pretty_list(cat.entries()));
    hypothesis_text(&mut text, &h);
    text.push_str(&majorization_text(&major).replace("x majorizes y", "x(x)c majorizes y(x)c"));
    let checks: Vec<CheckDoc> = h
        .checks
        .iter()
        .map(|c| CheckDoc { k: c.k, fx: c.fx.clone(), fy: c.fy.clone(), pass: c.pass })
        .collect();
    let report = json!({
        "c": fracs(cat.entries()),
        "r": r,
        "tensor_x": fracs(tx.entries()),
        "tensor_y": fracs(ty.entries()),
        "checks": to_value(&checks),
        "all_pass": h.all_pass,
        "majorizes": to_value(&major),
    });
    Ok(Outcome::new(h.all_pass, report, text))
}
