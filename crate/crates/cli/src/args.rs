use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrdent_core::paths::DEFAULT_MA_TRUNCATION;
use lrdent_core::QuadratureConfig;
use serde::Serialize;

use crate::table::Format;
use crate::CliError;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "lrdent", version, about = "Entropy rates of long-range dependent Gaussian processes")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    #[arg(long, env = "LRDENT_ABS_TOL", global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, env = "LRDENT_REL_TOL", global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, env = "LRDENT_MAX_SUBDIVISIONS", global = true)]
    pub max_subdivisions: Option<usize>,
    /// Half-width of the analytic patch at λ = 0.
    #[arg(long, env = "LRDENT_ORIGIN_EXCISION", global = true)]
    pub origin_excision: Option<f64>,
}

impl Common {
    pub fn quadrature(&self) -> Result<QuadratureConfig, CliError> {
        let mut cfg = QuadratureConfig::default();
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            cfg.max_subdivisions = v;
        }
        if let Some(v) = self.origin_excision {
            cfg.origin_excision = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Entropy rate of one process by every available route.
    EntropyRate(SpecArgs),
    /// Entropy rates over a grid of Hurst exponents and variances.
    Sweep(SweepArgs),
    /// Spectral density on a frequency grid.
    Spectrum(SpectrumArgs),
    /// Cepstral coefficients and the weighted partial sums `Σ k b_k²`.
    Cepstrum(CepstrumArgs),
    /// Mutual information between past and future, with its partial-sum trace.
    Mi(SpecArgs),
    /// Conditional-entropy gaps `h(n) − h` and their decay rate.
    Convergence(ConvergenceArgs),
    /// Exact Gaussian sample path.
    Simulate(SimulateArgs),
    /// Hurst exponent maximizing the entropy rate at fixed variance.
    MaxEntropy(MaxEntropyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecArgs {
    /// `fgn:H=<r>,var=<r>` or `arfima:d=<r>[,ar=[..]][,ma=[..]],ivar=<r>`.
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepModel {
    /// Exact and low-frequency FGN rates.
    Fgn,
    /// ARFIMA(0, H − ½, 0) at fixed process variance.
    Arfima,
    /// FGN against ARFIMA at equal variance.
    Compare,
}

/// `lo:hi:step` with `0 < lo ≤ hi < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(format!("grid `{s}` must be lo:hi:step"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let grid = Grid { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if !(grid.step > 0.0 && grid.step.is_finite()) {
            return Err(format!("grid step must be positive, got {}", grid.step));
        }
        if !(grid.lo > 0.0 && grid.lo <= grid.hi && grid.hi < 1.0) {
            return Err(format!("grid must satisfy 0 < lo <= hi < 1, got {}:{}", grid.lo, grid.hi));
        }
        Ok(grid)
    }
}

impl Grid {
    /// `lo, lo + step, …` up to `hi`, rounded to 12 decimals.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((self.lo + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: SweepModel,
    #[arg(long, default_value = "0.05:0.95:0.05")]
    pub grid: Grid,
    /// Process variances, comma separated.
    #[arg(long = "var", value_delimiter = ',', default_value = "1")]
    pub variances: Vec<f64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub spec: String,
    /// Frequencies `kπ/N`, `k = 1..=N`.
    #[arg(long, default_value_t = 256)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CepstrumArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 256)]
    pub kmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergenceArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 4096)]
    pub nmax: usize,
    /// Emit the rate report instead of the gap series.
    #[arg(long)]
    pub report: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// ARFIMA only.
    #[arg(long, default_value_t = DEFAULT_MA_TRUNCATION)]
    pub ma_truncation: usize,
    /// ARFIMA only; defaults to the MA truncation.
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub allow_truncation_deficit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxEntropyModel {
    Fgn,
    Arfima,
    All,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MaxEntropyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub model: MaxEntropyModel,
}
