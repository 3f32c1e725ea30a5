//! Command-line configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kohn_spectra::scalar::{format_rational, parse_rational};
use kohn_spectra::tridiag::{Parity, ZERO_THRESHOLD};
use kohn_spectra::RossiParam;
use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "kohn-spectra",
    version,
    about = "Matrices, spectra and eigenvalue bounds of the perturbed Kohn Laplacian on the Rossi sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; `sweep` defaults to csv, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Omit the timestamp line so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_header: bool,

    /// Bisection tolerance (absolute for block eigenvalues, relative for the bound).
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
    Both,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
            ParityArg::Both => Parity::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Harmonic basis of H_m or H_{p,q} in canonical order.
    Basis {
        #[arg(long, conflicts_with_all = ["p", "q"], required_unless_present_all = ["p", "q"])]
        m: Option<u32>,
        #[arg(long, requires = "q")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        q: Option<u32>,
    },
    /// Matrix of box_b^t / h on H_m, column j holding the image of f_j.
    Matrix {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "0", value_parser = parse_t)]
        t: RossiParam,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Closed-form V and W tridiagonal blocks on H_{2k-1}.
    Blocks {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value = "0", value_parser = parse_t)]
        t: RossiParam,
    },
    /// Eigenvalues with multiplicities, on H_{2k-1} (from blocks) or H_m (full matrix).
    Eigs {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "m", required_unless_present = "m")]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value = "0", value_parser = parse_t)]
        t: RossiParam,
    },
    /// Bound chain for the smallest eigenvalue on H_{2k-1}; exit 2 if it fails.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = parse_t)]
        t: RossiParam,
    },
    /// Smallest (nonzero) eigenvalues over a grid of k and t.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
        /// `lo:hi:step`, inclusive, as rationals or decimals.
        #[arg(long, value_parser = parse_t_grid, conflicts_with = "t", required_unless_present = "t")]
        t_grid: Option<TGrid>,
        /// Explicit t values (repeatable).
        #[arg(long, value_parser = parse_t)]
        t: Vec<RossiParam>,
        #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
        parity: ParityArg,
        /// Kernel threshold for even spaces, relative to h.
        #[arg(long, default_value_t = ZERO_THRESHOLD, value_parser = positive_f64)]
        zero_threshold: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Basis { .. } => "basis",
            Command::Matrix { .. } => "matrix",
            Command::Blocks { .. } => "blocks",
            Command::Eigs { .. } => "eigs",
            Command::Bound { .. } => "bound",
            Command::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TGrid(pub Vec<RossiParam>);

pub fn parse_t(s: &str) -> Result<RossiParam, String> {
    s.parse::<RossiParam>().map_err(|e| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive finite number, got {s}"))
    }
}

/// `lo:hi:step` with exact endpoints; every point must lie in `(0, 1)`.
pub fn parse_t_grid(s: &str) -> Result<TGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected lo:hi:step, got {s:?}"));
    };
    let parse = |x: &str| parse_rational(x).map_err(|e| e.to_string());
    let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
    let zero = BigRational::from_integer(0.into());
    if step <= zero {
        return Err("grid step must be positive".into());
    }
    if lo > hi {
        return Err("grid lower end exceeds upper end".into());
    }
    let mut points = Vec::new();
    let mut x = lo;
    while x <= hi {
        if x <= zero {
            return Err(format!(
                "grid point {} is not in (0, 1)",
                format_rational(&x)
            ));
        }
        points.push(RossiParam::new(x.clone()).map_err(|e| e.to_string())?);
        x += &step;
    }
    Ok(TGrid(points))
}
