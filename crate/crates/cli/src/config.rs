//! Validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpmaj_core::sympoly::Family;
use lpmaj_core::theorem1::{DEFAULT_GRID_POINTS, DEFAULT_TOLERANCE};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lpmaj", version, about = "Exact verification of lp-mean comparisons and majorization")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized probes; recorded in every report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// JSON array of nonnegative rationals.
    #[arg(long)]
    pub x: PathBuf,
    /// JSON array of nonnegative rationals, same length as x.
    #[arg(long)]
    pub y: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    E,
    F,
    G,
    Gbar,
    DeltaGbar,
    M,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::E => Family::E,
            FamilyArg::F => Family::F,
            FamilyArg::G => Family::G,
            FamilyArg::Gbar => Family::Gbar,
            FamilyArg::DeltaGbar => Family::DeltaGbar,
            FamilyArg::M => Family::M,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichIdentity {
    Id1,
    Id2,
    Both,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// lp means of x (and y) over a list of exponents.
    Norms {
        #[arg(long)]
        x: PathBuf,
        /// Optional comparison vector; checks power majorization of x over y.
        #[arg(long)]
        y: Option<PathBuf>,
        /// Exponents; accepts `inf` and `-inf`.
        #[arg(long, default_value = "-inf,-1,0,0.5,1,2,3,inf", allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Exact family values F, E, G, Gbar, DeltaGbar or M.
    Fkr {
        #[arg(long)]
        x: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value = "f")]
        family: FamilyArg,
        /// Single degree; otherwise all k in 0..=k-max.
        #[arg(long)]
        k: Option<usize>,
        /// Defaults to n*r (n for E).
        #[arg(long)]
        k_max: Option<usize>,
        /// Check the closed forms of F at the ends of its degree range.
        #[arg(long)]
        identities: bool,
        /// Schur-Ostrowski quotients on this many seeded random vectors.
        #[arg(long, default_value_t = 0)]
        schur_samples: usize,
    },
    /// Coefficientwise hypotheses on F_{k,r} and the lp-mean conclusions.
    Theorem1 {
        /// JSON array of nonnegative rationals.
        #[arg(long, requires = "y", required_unless_present = "qx", conflicts_with = "qx")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
        /// Integer factor Q; compares the spectrum of Q Q^T instead of a vector.
        #[arg(long, requires = "qy")]
        qx: Option<PathBuf>,
        #[arg(long, requires = "qx")]
        qy: Option<PathBuf>,
        /// Treat --qx/--qy as the symmetric matrices themselves.
        #[arg(long, requires = "qx")]
        direct: bool,
        #[arg(long, conflicts_with = "r_max", required_unless_present = "r_max")]
        r: Option<usize>,
        /// Check every r in 1..=r-max and certify the largest passing one.
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid_points: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Also sample (r+1, P]; reported as uncertified.
        #[arg(long, requires = "r")]
        explore_to: Option<f64>,
    },
    /// Is x majorized-above y?
    Majorize {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Majorization against the G and M families for k <= k-max.
    Theorem2 {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
    /// Coefficients of det(I + tX) and det(sum X^j t^j / j!) for X = Q Q^T.
    Spectral {
        /// Integer matrix, JSON array of arrays or CSV.
        #[arg(long)]
        q: PathBuf,
        /// Orders for the F coefficients.
        #[arg(long, default_value = "2", value_delimiter = ',')]
        r: Vec<usize>,
        /// Second factor; its Gram matrix is compared coefficientwise.
        #[arg(long)]
        against: Option<PathBuf>,
        /// Treat the files as X directly instead of Q.
        #[arg(long)]
        direct: bool,
        /// Informational: spectra of the first N sign-flip variants of Q.
        #[arg(long, default_value_t = 0)]
        sign_flips: usize,
    },
    /// Numerical check of the Mellin identities that synthesize a^p.
    MellinValidate {
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Exponents; defaults depend on the identity.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value = "0.5,2")]
        a: String,
        #[arg(long, value_enum, default_value = "both")]
        which: WhichIdentity,
        #[arg(long, default_value_t = 1e-6)]
        max_rel_err: f64,
    },
    /// Hypotheses of the order-r comparison after tensoring with a catalyst.
    Catalyst {
        #[command(flatten)]
        pair: PairArgs,
        /// Comma-separated rationals with c_0 = 1.
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norms { .. } => "norms",
            Command::Fkr { .. } => "fkr",
            Command::Theorem1 { .. } => "theorem1",
            Command::Majorize { .. } => "majorize",
            Command::Theorem2 { .. } => "theorem2",
            Command::Spectral { .. } => "spectral",
            Command::MellinValidate { .. } => "mellin-validate",
            Command::Catalyst { .. } => "catalyst",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub command: Command,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let check_tol = |tol: f64| {
            if tol > 0.0 && tol.is_finite() {
                Ok(())
            } else {
                Err(format!("tolerance must be positive and finite, got {tol}"))
            }
        };
        match &self.command {
            Command::Theorem1 { grid_points, tol, r, r_max, .. } => {
                check_tol(*tol)?;
                if *grid_points < 3 {
                    return Err(format!("--grid-points must be >= 3, got {grid_points}"));
                }
                if r.or(*r_max) == Some(0) {
                    return Err("order r must be >= 1".into());
                }
            }
            Command::Norms { tol, .. } => check_tol(*tol)?,
            Command::MellinValidate { max_rel_err, r, .. } => {
                check_tol(*max_rel_err)?;
                if *r == 0 {
                    return Err("order r must be >= 1".into());
                }
            }
            Command::Fkr { r, .. } | Command::Catalyst { r, .. } if *r == 0 => {
                return Err("order r must be >= 1".into());
            }
            Command::Spectral { r, .. } if r.contains(&0) => return Err("order r must be >= 1".into()),
            _ => {}
        }
        Ok(())
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig { format: cli.format, seed: cli.seed, command: cli.command }
    }
}
