//! Spectral densities on `[−π, π]`, normalised so that `∫ f = γ(0)`.
//!
//! Every supported density factors as `f(λ) = |2 sin(λ/2)|^e · exp(r(λ))`
//! with `r` bounded and smooth on `[−π, π]`. The exponent `e` and the value
//! `r(0)` describe the behaviour at the origin; `r` itself is what the
//! cepstrum integrates once the singular factor has been removed.

use alloc::format;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::process::{Arfima, Fgn, ProcessSpec};
use core::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Default number of aliasing terms `|j| ≤ J` kept in the FGN density.
pub const FGN_TRUNCATION: usize = 200;

/// Local behaviour `f(λ) ≈ coefficient · |λ|^exponent` as `λ → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub exponent: f64,
    pub coefficient: f64,
}

/// An even, a.e. positive spectral density.
pub trait SpectralDensity {
    /// `f(λ)` for `0 < |λ| ≤ π`.
    fn density(&self, lambda: f64) -> f64 {
        libm::exp(self.ln_density(lambda))
    }

    /// `log f(λ)` for `0 < |λ| ≤ π`.
    fn ln_density(&self, lambda: f64) -> f64 {
        let e = self.origin().exponent;
        let singular = if e == 0.0 { 0.0 } else { e * ln_two_sin_half(lambda) };
        self.ln_regular(lambda) + singular
    }

    /// `r(λ) = log f(λ) − e · log|2 sin(λ/2)|`, finite on all of `[−π, π]`.
    fn ln_regular(&self, lambda: f64) -> f64;

    fn origin(&self) -> PowerLaw;

    fn singular_at_origin(&self) -> bool {
        self.origin().exponent < 0.0
    }
}

/// `log|2 sin(λ/2)|`.
pub(crate) fn ln_two_sin_half(lambda: f64) -> f64 {
    libm::log(2.0 * libm::fabs(libm::sin(0.5 * lambda)))
}

/// Aliased FGN sums over `j ≠ 0` for exponent `a = 2H + 1` at `0 ≤ λ ≤ π`:
/// `Σ |2πj + λ|^{−a}` and `Σ log|2πj + λ| · |2πj + λ|^{−a}`.
///
/// Terms with `|j| > J` are replaced by their integral from `J + ½` plus the
/// first Euler–Maclaurin midpoint correction.
pub(crate) fn fgn_alias_sums(a: f64, lambda: f64, truncation: usize) -> (f64, f64) {
    let mut plain = 0.0;
    let mut weighted = 0.0;
    for j in (1..=truncation).rev() {
        let base = TWO_PI * j as f64;
        for u in [base + lambda, base - lambda] {
            let p = libm::pow(u, -a);
            let l = libm::log(u);
            plain += p;
            weighted += l * p;
        }
    }
    let edge = TWO_PI * (truncation as f64 + 0.5);
    let am1 = a - 1.0;
    for u in [edge + lambda, edge - lambda] {
        let p = libm::pow(u, -a);
        let l = libm::log(u);
        plain += u * p / (TWO_PI * am1) - a * TWO_PI * p / (24.0 * u);
        weighted += u * p / TWO_PI * (l / am1 + 1.0 / (am1 * am1))
            + TWO_PI * p * (1.0 - a * l) / (24.0 * u);
    }
    (plain, weighted)
}

/// The first of [`fgn_alias_sums`] alone.
pub(crate) fn fgn_alias_sum(a: f64, lambda: f64, truncation: usize) -> f64 {
    let mut plain = 0.0;
    for j in (1..=truncation).rev() {
        let base = TWO_PI * j as f64;
        plain += libm::pow(base + lambda, -a) + libm::pow(base - lambda, -a);
    }
    let edge = TWO_PI * (truncation as f64 + 0.5);
    for u in [edge + lambda, edge - lambda] {
        let p = libm::pow(u, -a);
        plain += u * p / (TWO_PI * (a - 1.0)) - a * TWO_PI * p / (24.0 * u);
    }
    plain
}

/// `log Σ_j |2πj + λ|^{−a}` for `0 < λ ≤ π`.
pub(crate) fn fgn_ln_alias(a: f64, lambda: f64, truncation: usize) -> f64 {
    let rest = fgn_alias_sum(a, lambda, truncation);
    -a * libm::log(lambda) + libm::log1p(libm::pow(lambda, a) * rest)
}

/// Exact FGN spectral density `2c_f(1 − cos λ) Σ_j |2πj + λ|^{−2H−1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgnSpectrum {
    fgn: Fgn,
    truncation: usize,
    ln_cf: f64,
}

impl FgnSpectrum {
    pub fn new(fgn: Fgn) -> Self {
        Self::with_truncation(fgn, FGN_TRUNCATION)
    }

    pub fn with_truncation(fgn: Fgn, truncation: usize) -> Self {
        Self {
            fgn,
            truncation: truncation.max(1),
            ln_cf: libm::log(fgn.spectral_constant()),
        }
    }

    pub fn fgn(&self) -> &Fgn {
        &self.fgn
    }
}

impl SpectralDensity for FgnSpectrum {
    fn ln_regular(&self, lambda: f64) -> f64 {
        let lambda = libm::fabs(lambda);
        if lambda == 0.0 {
            return self.ln_cf;
        }
        let a = 2.0 * self.fgn.hurst() + 1.0;
        let rest = fgn_alias_sum(a, lambda, self.truncation);
        let sinc = 2.0 * libm::sin(0.5 * lambda) / lambda;
        self.ln_cf + a * libm::log(sinc) + libm::log1p(libm::pow(lambda, a) * rest)
    }

    fn origin(&self) -> PowerLaw {
        PowerLaw {
            exponent: 1.0 - 2.0 * self.fgn.hurst(),
            coefficient: libm::exp(self.ln_cf),
        }
    }
}

/// Low-frequency FGN approximation `c_f |λ|^{1−2H}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgnApproxSpectrum {
    fgn: Fgn,
}

impl FgnApproxSpectrum {
    pub fn new(fgn: Fgn) -> Self {
        Self { fgn }
    }
}

impl SpectralDensity for FgnApproxSpectrum {
    fn ln_density(&self, lambda: f64) -> f64 {
        libm::log(self.fgn.spectral_constant()) + (1.0 - 2.0 * self.fgn.hurst()) * libm::log(libm::fabs(lambda))
    }

    fn ln_regular(&self, lambda: f64) -> f64 {
        let lambda = libm::fabs(lambda);
        let e = 1.0 - 2.0 * self.fgn.hurst();
        let sinc = if lambda == 0.0 { 1.0 } else { 2.0 * libm::sin(0.5 * lambda) / lambda };
        libm::log(self.fgn.spectral_constant()) - e * libm::log(sinc)
    }

    fn origin(&self) -> PowerLaw {
        PowerLaw {
            exponent: 1.0 - 2.0 * self.fgn.hurst(),
            coefficient: self.fgn.spectral_constant(),
        }
    }
}

/// ARFIMA(p, d, q) density `(σ_ε²/2π) |ψ(e^{iλ})|² / |φ(e^{iλ})|² · |2 sin(λ/2)|^{−2d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArfimaSpectrum {
    arfima: Arfima,
}

impl ArfimaSpectrum {
    pub fn new(arfima: Arfima) -> Self {
        Self { arfima }
    }

    pub fn arfima(&self) -> &Arfima {
        &self.arfima
    }
}

/// `|1 + sign · Σ c_j e^{ijλ}|²`.
fn polynomial_modulus_sq(coeffs: &[f64], sign: f64, lambda: f64) -> f64 {
    let mut z = Complex64::new(1.0, 0.0);
    for (j, c) in coeffs.iter().enumerate() {
        let theta = (j + 1) as f64 * lambda;
        z += Complex64::new(libm::cos(theta), libm::sin(theta)) * (sign * c);
    }
    z.norm_sqr()
}

impl SpectralDensity for ArfimaSpectrum {
    fn ln_regular(&self, lambda: f64) -> f64 {
        let a = &self.arfima;
        let mut r = libm::log(a.innovation_variance() / TWO_PI);
        if !a.ma().is_empty() {
            r += libm::log(polynomial_modulus_sq(a.ma(), 1.0, lambda));
        }
        if !a.ar().is_empty() {
            r -= libm::log(polynomial_modulus_sq(a.ar(), -1.0, lambda));
        }
        r
    }

    fn origin(&self) -> PowerLaw {
        PowerLaw {
            exponent: -2.0 * self.arfima.d(),
            coefficient: libm::exp(self.ln_regular(0.0)),
        }
    }
}

/// The exact spectral density of a [`ProcessSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Fgn(FgnSpectrum),
    Arfima(ArfimaSpectrum),
}

impl Spectrum {
    pub fn of(spec: &ProcessSpec) -> Self {
        match spec {
            ProcessSpec::Fgn(f) => Spectrum::Fgn(FgnSpectrum::new(*f)),
            ProcessSpec::Arfima(a) => Spectrum::Arfima(ArfimaSpectrum::new(a.clone())),
        }
    }
}

impl SpectralDensity for Spectrum {
    fn ln_density(&self, lambda: f64) -> f64 {
        match self {
            Spectrum::Fgn(s) => s.ln_density(lambda),
            Spectrum::Arfima(s) => s.ln_density(lambda),
        }
    }

    fn ln_regular(&self, lambda: f64) -> f64 {
        match self {
            Spectrum::Fgn(s) => s.ln_regular(lambda),
            Spectrum::Arfima(s) => s.ln_regular(lambda),
        }
    }

    fn origin(&self) -> PowerLaw {
        match self {
            Spectrum::Fgn(s) => s.origin(),
            Spectrum::Arfima(s) => s.origin(),
        }
    }
}

fn check_frequency(function: &'static str, lambda: f64) -> Result<()> {
    if lambda.is_finite() && libm::fabs(lambda) <= PI {
        Ok(())
    } else {
        Err(domain(function, format!("λ must lie in [-π, π], got {lambda}")))
    }
}

/// Value at `λ = 0`: zero, the constant, or a pole, by the sign of the exponent.
fn at_origin(function: &'static str, law: PowerLaw) -> Result<f64> {
    if law.exponent > 0.0 {
        Ok(0.0)
    } else if law.exponent == 0.0 {
        Ok(law.coefficient)
    } else {
        Err(domain(function, "spectral density has a pole at λ = 0"))
    }
}

/// Exact FGN density with `truncation` aliasing terms per side plus an
/// analytic tail.
pub fn fgn_spectral_density(fgn: &Fgn, lambda: f64, truncation: usize) -> Result<f64> {
    const NAME: &str = "fgn_spectral_density";
    if truncation < 1 {
        return Err(domain(NAME, "truncation J must be at least 1"));
    }
    check_frequency(NAME, lambda)?;
    let s = FgnSpectrum::with_truncation(*fgn, truncation);
    if lambda == 0.0 {
        return at_origin(NAME, s.origin());
    }
    Ok(s.density(lambda))
}

/// `c_f |λ|^{1−2H}`.
pub fn fgn_spectral_density_approx(fgn: &Fgn, lambda: f64) -> Result<f64> {
    const NAME: &str = "fgn_spectral_density_approx";
    if !lambda.is_finite() {
        return Err(domain(NAME, format!("λ must be finite, got {lambda}")));
    }
    let s = FgnApproxSpectrum::new(*fgn);
    if lambda == 0.0 {
        return at_origin(NAME, s.origin());
    }
    Ok(s.density(lambda))
}

pub fn arfima_spectral_density(arfima: &Arfima, lambda: f64) -> Result<f64> {
    const NAME: &str = "arfima_spectral_density";
    check_frequency(NAME, lambda)?;
    let s = ArfimaSpectrum::new(arfima.clone());
    if lambda == 0.0 {
        return at_origin(NAME, s.origin());
    }
    Ok(s.density(lambda))
}
