//! Argument surface of the `scatspec` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "scatspec",
    version,
    about = "Singular-value spectra of Herglotz and far-field scattering operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Thread budget for data-parallel kernels (outputs do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact Herglotz-operator spectrum via Bessel product integrals.
    Herglotz(HerglotzArgs),
    /// Far-field Gram spectrum on a midpoint grid of the unit cube.
    Farfield(FarfieldArgs),
    /// Numerical verification of exact identities.
    Verify(VerifyArgs),
    /// Least-squares fits of spectrum files.
    Fit(FitArgs),
    /// Standalone SVG log-log plots of spectrum files.
    Plot(PlotArgs),
    /// Spectra over a list of frequencies plus a sigma1 summary.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum HerglotzOperator {
    /// Normalized operator (carries the kappa^{(n-1)/2} factor).
    A,
    /// Plain operator, values rescaled by kappa^{-(n-1)/2}.
    Q,
}

#[derive(Args, Debug)]
pub struct HerglotzArgs {
    /// Ambient dimension (2 or 3).
    #[arg(long, short = 'n')]
    pub n: usize,
    /// Frequency.
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, value_enum, default_value = "a", ignore_case = true)]
    pub operator: HerglotzOperator,
    /// Drop singular values below this floor.
    #[arg(long, default_value_t = 1e-14, conflicts_with = "max_count")]
    pub floor: f64,
    /// Keep at most this many values (counted with multiplicity).
    #[arg(long)]
    pub max_count: Option<usize>,
    /// Panel length of the radial Bessel quadrature.
    #[arg(long, default_value_t = 1.0)]
    pub panel_len: f64,
    /// Gauss-Legendre points per panel.
    #[arg(long, default_value_t = 16)]
    pub gl_points: usize,
    /// Output CSV path (a .meta.json sidecar is written next to it).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum EigModeArg {
    Full,
    TopK,
}

#[derive(Args, Debug)]
pub struct FarfieldArgs {
    #[arg(long, short = 'n')]
    pub n: usize,
    #[arg(long)]
    pub kappa: f64,
    /// Cells per axis of the midpoint grid on [0,1]^n
    /// (default: 60 for n=2, 12 for n=3).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Rescale by kappa^{-(n-1)/2} (the unnormalized operator).
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, value_enum, default_value = "full", ignore_case = true)]
    pub mode: EigModeArg,
    /// Number of leading values in top-k mode.
    #[arg(long)]
    pub top_k: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum IdentityArg {
    Coarea1,
    Coarea2,
    HsNorm,
    Determinant,
    AhLimit,
    CrossCheck,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ProfileArg {
    /// h = 1
    Const,
    /// h = exp(-r^2)
    Gauss,
    /// h = exp(-r^2/2)
    GaussHalf,
    /// h = 4 - r^2
    Shell,
    /// h = cos r
    Cos,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Which identity to check.
    #[arg(value_enum, ignore_case = true)]
    pub identity: IdentityArg,
    #[arg(long, short = 'n')]
    pub n: Option<usize>,
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Comma-separated frequency list (ah-limit).
    #[arg(long, value_delimiter = ',')]
    pub kappas: Vec<f64>,
    /// Spherical-harmonic degree (ah-limit).
    #[arg(long)]
    pub ell: Option<u32>,
    /// Largest degree (cross-check).
    #[arg(long)]
    pub ellmax: Option<u32>,
    /// Radial test profile (defaults per identity: const for coarea,
    /// gauss-half for hs-norm).
    #[arg(long, value_enum, ignore_case = true)]
    pub h: Option<ProfileArg>,
    /// Sphere-rule resolution override.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Number of random trials (determinant).
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// PRNG seed (determinant).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pass-threshold override on rel_diff.
    #[arg(long)]
    pub max_rel_diff: Option<f64>,
    /// Report file (JSON lines); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum FitModeArg {
    /// Fit all rows of a two-column CSV.
    Raw,
    /// Fit sigma1 against kappa from a sweep directory (or sigma1 CSV).
    Sigma1,
    /// Stable-window fit of a spectrum CSV.
    Stable,
    /// Tail-window fit of a spectrum CSV.
    Tail,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum TransformArg {
    Log,
    Pow,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Input CSV (raw/stable/tail) or sweep directory (sigma1).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "raw", ignore_case = true)]
    pub mode: FitModeArg,
    #[arg(long, value_enum, default_value = "log", ignore_case = true)]
    pub transform: TransformArg,
    /// Exponent for the pow transform.
    #[arg(long, default_value_t = 0.5)]
    pub pow: f64,
    /// Inclusive x-window "LO,HI".
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 2,
        allow_negative_numbers = true
    )]
    pub window: Vec<f64>,
    /// Dimension hint when the spectrum has no sidecar.
    #[arg(long, short = 'n')]
    pub n: Option<usize>,
    /// Operator tag hint when the spectrum has no sidecar.
    #[arg(long)]
    pub operator: Option<String>,
    /// Output JSON path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Input CSV files, one series each.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub logx: bool,
    #[arg(long)]
    pub logy: bool,
    /// Slope of an optional log-log reference line.
    #[arg(long, allow_negative_numbers = true)]
    pub ref_slope: Option<f64>,
    /// Anchor "X,Y" of the reference line (defaults to the first point).
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 2,
        allow_negative_numbers = true
    )]
    pub ref_anchor: Vec<f64>,
    #[arg(long, default_value_t = 720)]
    pub width: usize,
    #[arg(long, default_value_t = 540)]
    pub height: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum SweepOperator {
    Farfield,
    Herglotz,
    HerglotzQ,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, short = 'n')]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub kappas: Vec<f64>,
    #[arg(long, value_enum, default_value = "farfield", ignore_case = true)]
    pub operator: SweepOperator,
    /// Far-field grid cells per axis.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, value_enum, default_value = "full", ignore_case = true)]
    pub mode: EigModeArg,
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Herglotz sigma floor.
    #[arg(long, default_value_t = 1e-14)]
    pub floor: f64,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out_dir: PathBuf,
}
