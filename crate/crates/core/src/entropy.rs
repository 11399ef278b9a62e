//! Differential entropy rates of stationary Gaussian processes.
//!
//! The Kolmogorov formula `h = ½log(2πe) + (1/4π)∫ log(2πf)` is evaluated on
//! `[ε, π]` by adaptive quadrature; the excised piece `[0, ε]` is added
//! analytically from the density's power law at the origin.

use alloc::format;

use crate::error::{domain, Error, Result};
use crate::process::{Arfima, Fgn};
use crate::quadrature::{integrate_with_breaks, QuadratureConfig};
use crate::roots::{find_root, Root};
use crate::special::{digamma, ln_gamma};
use crate::spectrum::{fgn_alias_sums, fgn_ln_alias, SpectralDensity, FGN_TRUNCATION};
use core::f64::consts::{E, PI};

/// `½ log(2πe)`, the entropy rate of unit-variance white noise.
pub const WHITE_NOISE_RATE: f64 = 1.418_938_533_204_672_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
    Approximation,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::Approximation => "approximation",
        }
    }
}

/// An entropy rate in nats per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRateResult {
    pub value: f64,
    pub method: Method,
    /// Zero for closed forms.
    pub error_estimate: f64,
}

impl EntropyRateResult {
    fn closed(value: f64) -> Self {
        Self { value, method: Method::ClosedForm, error_estimate: 0.0 }
    }
}

/// A quantity that is either finite or diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit<T = f64> {
    Finite(T),
    Divergent,
}

impl<T> Limit<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Limit::Finite(v) => Some(v),
            Limit::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Limit::Divergent)
    }
}

/// Log-spaced breakpoints from `eps` to `π` so bisection starts near the singularity.
fn origin_breaks(eps: f64) -> ([f64; 16], usize) {
    let mut b = [0.0; 16];
    b[0] = eps;
    let mut n = 1;
    let mut x = 1e-5;
    while x < 1.0 {
        if x > eps {
            b[n] = x;
            n += 1;
        }
        x *= 10.0;
    }
    b[n] = 1.0;
    b[n + 1] = PI;
    (b, n + 2)
}

/// `∫_ε^π g` plus `∫₀^ε (c0 + slope · log λ)`.
fn integrate_excised<F: FnMut(f64) -> f64>(
    g: F,
    c0: f64,
    slope: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let eps = cfg.origin_excision;
    let (breaks, n) = origin_breaks(eps);
    let r = integrate_with_breaks(g, &breaks[..n], cfg)?;
    let patch = eps * c0 + slope * (eps * libm::log(eps) - eps);
    Ok((r.value + patch, r.error_estimate))
}

/// `½log(2πe) + (1/4π)∫_{−π}^{π} log(2πf(λ)) dλ`.
pub fn entropy_rate_from_spectrum<S: SpectralDensity + ?Sized>(
    f: &S,
    cfg: &QuadratureConfig,
) -> Result<EntropyRateResult> {
    let law = f.origin();
    let ln_two_pi = libm::log(2.0 * PI);
    let (integral, err) = integrate_excised(
        |lambda| ln_two_pi + f.ln_density(lambda),
        ln_two_pi + libm::log(law.coefficient),
        law.exponent,
        cfg,
    )?;
    Ok(EntropyRateResult {
        value: WHITE_NOISE_RATE + integral / (2.0 * PI),
        method: Method::Quadrature,
        error_estimate: err / (2.0 * PI),
    })
}

fn check_hurst(function: &'static str, h: f64) -> Result<()> {
    if h > 0.0 && h < 1.0 {
        Ok(())
    } else {
        Err(domain(function, format!("requires 0 < H < 1, got {h}")))
    }
}

fn check_variance(function: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(function, format!("variance must be positive, got {v}")))
    }
}

/// Exact FGN entropy rate.
///
/// Splits `log(2πf)` into `log(σ² sin(πH) Γ(2H+1))`, `log(2(1 − cos λ))`
/// (which integrates to zero) and the log of the aliased sum, leaving only
/// the last for quadrature.
pub fn fgn_entropy_rate(hurst: f64, sigma2: f64, cfg: &QuadratureConfig) -> Result<EntropyRateResult> {
    const NAME: &str = "fgn_entropy_rate";
    check_hurst(NAME, hurst)?;
    check_variance(NAME, sigma2)?;
    let a = 2.0 * hurst + 1.0;
    let (integral, err) = integrate_excised(|l| fgn_ln_alias(a, l, FGN_TRUNCATION), 0.0, -a, cfg)?;
    let scale = libm::log(sigma2) + libm::log(libm::sin(PI * hurst)) + ln_gamma(a)?;
    Ok(EntropyRateResult {
        value: WHITE_NOISE_RATE + 0.5 * scale + integral / (2.0 * PI),
        method: Method::Quadrature,
        error_estimate: err / (2.0 * PI),
    })
}

/// Rate implied by the low-frequency approximation of the FGN density:
/// `½log(2πe) + ½log(2πc_f) + (1 − 2H)(log π − 1)`.
pub fn fgn_entropy_rate_approx(hurst: f64, sigma2: f64) -> Result<EntropyRateResult> {
    const NAME: &str = "fgn_entropy_rate_approx";
    check_hurst(NAME, hurst)?;
    check_variance(NAME, sigma2)?;
    let two_pi_cf = 2.0 * PI * Fgn::new(hurst, sigma2)?.spectral_constant();
    let value = WHITE_NOISE_RATE + 0.5 * libm::log(two_pi_cf) + (1.0 - 2.0 * hurst) * (libm::log(PI) - 1.0);
    Ok(EntropyRateResult { value, method: Method::Approximation, error_estimate: 0.0 })
}

/// `½log(2πeσ_ε²)`, whatever the AR, MA and fractional parts.
pub fn arfima_entropy_rate(arfima: &Arfima) -> EntropyRateResult {
    EntropyRateResult::closed(0.5 * libm::log(2.0 * PI * E * arfima.innovation_variance()))
}

/// ARFIMA(0, H − ½, 0) at fixed process variance:
/// `½log(2πeσ²) + lnΓ(3/2 − H) − ½lnΓ(2 − 2H)`, divergent at `H = 1`.
pub fn arfima0d0_entropy_rate_fixed_variance(hurst: f64, sigma2: f64) -> Result<Limit<EntropyRateResult>> {
    const NAME: &str = "arfima0d0_entropy_rate_fixed_variance";
    check_variance(NAME, sigma2)?;
    if hurst == 1.0 {
        return Ok(Limit::Divergent);
    }
    check_hurst(NAME, hurst)?;
    let value = 0.5 * libm::log(2.0 * PI * E * sigma2) + ln_gamma(1.5 - hurst)? - 0.5 * ln_gamma(2.0 - 2.0 * hurst)?;
    Ok(Limit::Finite(EntropyRateResult::closed(value)))
}

/// `dh/dH` of the exact FGN rate:
/// `(π/2)cot(πH) + ψ(2H+1) − (1/π)∫₀^π W(λ) dλ` with
/// `W = Σ log|2πj+λ| |2πj+λ|^{−a} / Σ |2πj+λ|^{−a}`.
pub fn fgn_entropy_rate_derivative(hurst: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_hurst("fgn_entropy_rate_derivative", hurst)?;
    let a = 2.0 * hurst + 1.0;
    let weight = |lambda: f64| {
        let (plain, weighted) = fgn_alias_sums(a, lambda, FGN_TRUNCATION);
        let p = libm::pow(lambda, a);
        (libm::log(lambda) + p * weighted) / (1.0 + p * plain)
    };
    let (integral, _) = integrate_excised(weight, 0.0, 1.0, cfg)?;
    Ok(0.5 * PI / libm::tan(PI * hurst) + digamma(a)? - integral / PI)
}

/// `dh̃/dH = (π/2)cot(πH) + ψ(2H+1) − 2(log π − 1)`.
pub fn fgn_entropy_rate_approx_derivative(hurst: f64) -> Result<f64> {
    check_hurst("fgn_entropy_rate_approx_derivative", hurst)?;
    Ok(0.5 * PI / libm::tan(PI * hurst) + digamma(2.0 * hurst + 1.0)? - 2.0 * (libm::log(PI) - 1.0))
}

/// `d/dH [lnΓ(3/2 − H) − ½lnΓ(2 − 2H)] = ψ(2 − 2H) − ψ(3/2 − H)`.
pub fn arfima_fixed_variance_derivative(hurst: f64) -> Result<f64> {
    check_hurst("arfima_fixed_variance_derivative", hurst)?;
    Ok(digamma(2.0 - 2.0 * hurst)? - digamma(1.5 - hurst)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyModel {
    FgnExact,
    FgnApprox,
    ArfimaFixedVariance,
}

impl EntropyModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntropyModel::FgnExact => "fgn_exact",
            EntropyModel::FgnApprox => "fgn_approx",
            EntropyModel::ArfimaFixedVariance => "arfima_fixed_variance",
        }
    }

    /// `dh/dH` of the model (independent of σ²).
    pub fn derivative(&self, hurst: f64, cfg: &QuadratureConfig) -> Result<f64> {
        match self {
            EntropyModel::FgnExact => fgn_entropy_rate_derivative(hurst, cfg),
            EntropyModel::FgnApprox => fgn_entropy_rate_approx_derivative(hurst),
            EntropyModel::ArfimaFixedVariance => arfima_fixed_variance_derivative(hurst),
        }
    }
}

/// Hurst parameter maximising the model's entropy rate: the root of `dh/dH`
/// on `(0.01, 0.99)`, at most 60 derivative evaluations.
pub fn entropy_rate_maximizer(model: EntropyModel, cfg: &QuadratureConfig) -> Result<Root> {
    let root = find_root(|h| model.derivative(h, cfg), 0.01, 0.99, 1e-9, 60)?;
    if root.bracket > 1e-4 {
        return Err(Error::InvalidSpec(format!(
            "maximizer for {} not bracketed to 1e-4 (width {})",
            model.as_str(),
            root.bracket
        )));
    }
    Ok(root)
}
