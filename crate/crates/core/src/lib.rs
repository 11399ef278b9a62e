//! Entropy rates of long-range dependent Gaussian processes.
//!
//! Covers fractional Gaussian noise and ARFIMA(p, d, q): covariances and
//! spectral densities, the Kolmogorov entropy rate, finite-order conditional
//! entropies from the Levinson–Durbin recursion, cepstral coefficients with
//! the past/future mutual information they determine, exact sample paths,
//! and convergence diagnostics.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod cepstrum;
pub mod convergence;
pub mod divergence;
pub mod entropy;
pub mod error;
pub mod fft;
pub mod paths;
pub mod process;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod spectrum;
pub mod toeplitz;

pub use cepstrum::{
    cepstral_coefficients, fgn_asymptotic_cepstrum, li_covariance_criterion, mutual_information_past_future,
    weighted_cepstrum_partial_sum, CepstrumSeries,
};
pub use convergence::{convergence_series, fit_rate, rate_report, RateFit, RateReport, RateShape, RateVerdict};
pub use divergence::{Assessment, Verdict};
pub use entropy::{
    arfima0d0_entropy_rate_fixed_variance, arfima_entropy_rate, entropy_rate_from_spectrum,
    entropy_rate_maximizer, fgn_entropy_rate, fgn_entropy_rate_approx, fgn_entropy_rate_derivative,
    EntropyModel, EntropyRateResult, Limit, Method,
};
pub use error::{Error, Result};
pub use paths::{generate_arfima0d0, generate_fgn, generate_path, PathGenerator, PathRequest};
pub use process::{
    arfima0d0_autocovariance, arfima_ar_ma_coefficients, autocovariance, classify_dependence,
    fgn_autocovariance, innovation_variance_from_process_variance, Arfima, CovarianceSequence,
    Dependence, Fgn, ProcessSpec,
};
pub use quadrature::{Integral, QuadratureConfig};
pub use spectrum::{
    arfima_spectral_density, fgn_spectral_density, fgn_spectral_density_approx, SpectralDensity, Spectrum,
};
pub use toeplitz::{
    conditional_entropy_sequence, excess_entropy_partial_sum, levinson, strong_szego_e, szego_limit_g,
    ConvergenceSeries, LevinsonResult,
};
