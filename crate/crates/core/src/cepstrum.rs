//! Cepstral coefficients `b_k = (1/2π)∫ log f(λ) e^{−ikλ} dλ` and the
//! quantities built from them.
//!
//! With `log f = e·log|2 sin(λ/2)| + r(λ)` and
//! `log|2 sin(λ/2)| = −Σ cos(kλ)/k`, the singular factor contributes exactly
//! `−e/(2k)` to `b_k`; only the bounded remainder `r` is integrated. Low
//! orders use adaptive quadrature, higher orders a trapezoid rule on a
//! `2^20`-point grid evaluated by FFT.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::divergence::{assess, Assessment, Verdict};
use crate::error::{domain, Error, Result};
use crate::fft;
use crate::process::{autocovariance, classify_dependence, Dependence, ProcessSpec};
use crate::quadrature::{integrate_with_breaks, QuadratureConfig};
use crate::special::sine_integral_at_pi;
use crate::spectrum::{SpectralDensity, Spectrum};

/// Highest order computed by per-coefficient quadrature.
pub const QUADRATURE_CROSSOVER: usize = 64;
pub const FFT_GRID_LOG2: u32 = 20;
/// Number of cepstral terms summed when assessing the mutual information.
pub const MUTUAL_INFORMATION_TERMS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CepstrumMethod {
    Quadrature,
    FftGrid,
}

impl CepstrumMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CepstrumMethod::Quadrature => "quadrature",
            CepstrumMethod::FftGrid => "fft_grid",
        }
    }
}

/// `b_1..b_K` with `b_0` kept separately.
#[derive(Debug, Clone, PartialEq)]
pub struct CepstrumSeries {
    pub b0: f64,
    b: Vec<f64>,
    error_bounds: Vec<f64>,
    methods: Vec<CepstrumMethod>,
    /// Orders whose computation failed; their `b_k` is NaN.
    pub failures: Vec<(usize, Error)>,
}

impl CepstrumSeries {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `b_k` for `k ≥ 1`.
    pub fn coefficient(&self, k: usize) -> f64 {
        self.b[k - 1]
    }

    /// `[b_1, …, b_K]`.
    pub fn coefficients(&self) -> &[f64] {
        &self.b
    }

    pub fn error_bound(&self, k: usize) -> f64 {
        self.error_bounds[k - 1]
    }

    pub fn method(&self, k: usize) -> CepstrumMethod {
        self.methods[k - 1]
    }
}

pub fn cepstral_coefficients(spec: &ProcessSpec, k_max: usize, cfg: &QuadratureConfig) -> Result<CepstrumSeries> {
    cepstrum_of(&Spectrum::of(spec), k_max, cfg)
}

/// Cepstrum of any density exposing its regular part.
pub fn cepstrum_of<S: SpectralDensity + ?Sized>(
    f: &S,
    k_max: usize,
    cfg: &QuadratureConfig,
) -> Result<CepstrumSeries> {
    if k_max < 1 {
        return Err(domain("cepstral_coefficients", "k_max must be at least 1"));
    }
    let grid = 1usize << FFT_GRID_LOG2;
    if k_max > grid / 8 {
        return Err(domain(
            "cepstral_coefficients",
            alloc::format!("k_max must not exceed {}", grid / 8),
        ));
    }
    cfg.validate()?;
    let e = f.origin().exponent;
    let mut series = CepstrumSeries {
        b0: f64::NAN,
        b: vec![f64::NAN; k_max],
        error_bounds: vec![f64::INFINITY; k_max],
        methods: vec![CepstrumMethod::Quadrature; k_max],
        failures: Vec::new(),
    };

    for k in 0..=k_max.min(QUADRATURE_CROSSOVER) {
        match regular_coefficient(f, k, cfg) {
            Ok((value, err)) => {
                if k == 0 {
                    series.b0 = value;
                } else {
                    series.b[k - 1] = value - e / (2.0 * k as f64);
                    series.error_bounds[k - 1] = err;
                }
            }
            Err(error) => series.failures.push((k, error)),
        }
    }

    if k_max > QUADRATURE_CROSSOVER {
        let (fine, coarse) = grid_coefficients(f, FFT_GRID_LOG2, k_max);
        for k in QUADRATURE_CROSSOVER + 1..=k_max {
            series.b[k - 1] = fine[k] - e / (2.0 * k as f64);
            series.error_bounds[k - 1] = libm::fabs(fine[k] - coarse[k]) + 1e-14;
            series.methods[k - 1] = CepstrumMethod::FftGrid;
        }
    }
    Ok(series)
}

/// `(1/π)∫₀^π r(λ) cos(kλ) dλ` by adaptive quadrature.
fn regular_coefficient<S: SpectralDensity + ?Sized>(
    f: &S,
    k: usize,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let pieces = k.clamp(1, QUADRATURE_CROSSOVER);
    let mut breaks: Vec<f64> = vec![0.0, 1e-4, 1e-3, 1e-2];
    let width = PI / pieces as f64;
    breaks.extend((1..=pieces).map(|i| i as f64 * width).filter(|&x| x > 1e-2));
    let kf = k as f64;
    let r = integrate_with_breaks(|l| f.ln_regular(l) * libm::cos(kf * l), &breaks, cfg)?;
    Ok((r.value / PI, r.error_estimate / PI))
}

/// Trapezoid-rule Fourier coefficients of `r` on `2^log2` points and on the
/// half-resolution subgrid, orders `0..=k_max`.
fn grid_coefficients<S: SpectralDensity + ?Sized>(f: &S, log2: u32, k_max: usize) -> (Vec<f64>, Vec<f64>) {
    let n = 1usize << log2;
    let half = n / 2;
    let mut values = vec![0.0; half + 1];
    for (j, v) in values.iter_mut().enumerate() {
        *v = f.ln_regular(2.0 * PI * j as f64 / n as f64);
    }
    let sample = |j: usize| if j <= half { values[j] } else { values[n - j] };

    let transform = |len: usize, stride: usize| {
        let mut data: Vec<Complex64> = (0..len).map(|j| Complex64::new(sample(j * stride), 0.0)).collect();
        fft::forward(&mut data);
        data.iter().take(k_max + 1).map(|z| z.re / len as f64).collect::<Vec<f64>>()
    };
    (transform(n, 1), transform(half, 2))
}

/// `Σ_{k=1}^{m} k b_k²`.
pub fn weighted_cepstrum_partial_sum(series: &CepstrumSeries, m: usize) -> Result<f64> {
    if m > series.len() {
        return Err(domain(
            "weighted_cepstrum_partial_sum",
            alloc::format!("m = {m} exceeds the {} available coefficients", series.len()),
        ));
    }
    Ok(series.b[..m].iter().enumerate().map(|(i, b)| (i + 1) as f64 * b * b).sum())
}

/// Running sums `S_m = Σ_{k≤m} k b_k²` for `m = 1..=K`.
pub fn weighted_partial_sums(series: &CepstrumSeries) -> Vec<f64> {
    let mut s = 0.0;
    series
        .b
        .iter()
        .enumerate()
        .map(|(i, b)| {
            s += (i + 1) as f64 * b * b;
            s
        })
        .collect()
}

/// Mutual information between the infinite past and future, `½ Σ k b_k²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PastFutureInformation {
    /// `Converged` carries the information in nats.
    pub verdict: Verdict,
    /// Absent when the process is long-range dependent and the answer
    /// follows from the classification alone.
    pub assessment: Option<Assessment>,
}

pub fn mutual_information_past_future(spec: &ProcessSpec, cfg: &QuadratureConfig) -> Result<PastFutureInformation> {
    if classify_dependence(spec) == Dependence::Lrd {
        return Ok(PastFutureInformation { verdict: Verdict::Divergent, assessment: None });
    }
    let series = cepstral_coefficients(spec, MUTUAL_INFORMATION_TERMS, cfg)?;
    let a = assess(&weighted_partial_sums(&series));
    let verdict = match a.verdict {
        Verdict::Converged(s) => Verdict::Converged(0.5 * s),
        other => other,
    };
    Ok(PastFutureInformation { verdict, assessment: Some(a) })
}

/// Large-`k` cepstrum of the low-frequency FGN approximation,
/// `(1 − 2H)(−Si(π))/(πk)`.
pub fn fgn_asymptotic_cepstrum(hurst: f64, k: usize) -> Result<f64> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(domain("fgn_asymptotic_cepstrum", alloc::format!("requires 0 < H < 1, got {hurst}")));
    }
    if k < 1 {
        return Err(domain("fgn_asymptotic_cepstrum", "k must be at least 1"));
    }
    Ok((1.0 - 2.0 * hurst) * (-sine_integral_at_pi()) / (PI * k as f64))
}

/// `Σ_{k=1}^{m} k γ(k)²`.
pub fn li_covariance_criterion(spec: &ProcessSpec, m: usize) -> Result<f64> {
    if m < 1 {
        return Err(domain("li_covariance_criterion", "m must be at least 1"));
    }
    let gamma = autocovariance(spec, m)?;
    Ok(gamma.as_slice()[1..].iter().enumerate().map(|(i, g)| (i + 1) as f64 * g * g).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::Arfima;
    use crate::spectrum::ArfimaSpectrum;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn white_noise_cepstrum_vanishes() {
        let s = cepstral_coefficients(&ProcessSpec::white_noise(3.0).unwrap(), 80, &cfg()).unwrap();
        assert!(s.coefficients().iter().all(|b| b.abs() < 1e-12));
        assert!((s.b0 - libm::log(3.0 / (2.0 * PI))).abs() < 1e-12);
        assert_eq!(weighted_cepstrum_partial_sum(&s, 80).unwrap(), s.coefficients().iter().enumerate().map(|(i, b)| (i + 1) as f64 * b * b).sum::<f64>());
    }

    #[test]
    fn fractional_cepstrum_is_d_over_k() {
        let s = cepstral_coefficients(&ProcessSpec::arfima(0.3, vec![], vec![], 1.0).unwrap(), 100, &cfg()).unwrap();
        for k in [1usize, 5, 50, 64, 65, 100] {
            assert!((s.coefficient(k) - 0.3 / k as f64).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn ar1_cepstrum() {
        let s = cepstral_coefficients(&ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap(), 200, &cfg()).unwrap();
        for k in 1..=200usize {
            let want = libm::pow(0.5, k as f64) / k as f64;
            let tol = if k <= QUADRATURE_CROSSOVER { 1e-10 } else { 1e-8 };
            assert!((s.coefficient(k) - want).abs() < tol, "k={k}");
        }
        let w = weighted_cepstrum_partial_sum(&s, 200).unwrap();
        assert!((w + libm::log(0.75)).abs() < 1e-6);
        assert!(weighted_cepstrum_partial_sum(&s, 201).is_err());
    }

    #[test]
    fn mutual_information_values() {
        let wn = mutual_information_past_future(&ProcessSpec::white_noise(1.0).unwrap(), &cfg()).unwrap();
        assert!(matches!(wn.verdict, Verdict::Converged(v) if v.abs() < 1e-12));
        let ar = mutual_information_past_future(&ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap(), &cfg()).unwrap();
        assert!(matches!(ar.verdict, Verdict::Converged(v) if (v - 0.5 * libm::log(4.0 / 3.0)).abs() < 1e-8));
        let lrd = mutual_information_past_future(&ProcessSpec::fgn(0.8, 1.0).unwrap(), &cfg()).unwrap();
        assert_eq!(lrd.verdict, Verdict::Divergent);
        assert!(lrd.assessment.is_none());
    }

    #[test]
    fn asymptote_values() {
        assert_eq!(fgn_asymptotic_cepstrum(0.5, 7).unwrap(), 0.0);
        let b10 = fgn_asymptotic_cepstrum(0.8, 10).unwrap();
        assert!(b10 > 0.0);
        let b20 = fgn_asymptotic_cepstrum(0.8, 20).unwrap();
        assert!((10.0 * b10 - 20.0 * b20).abs() < 1e-15);
        assert!(fgn_asymptotic_cepstrum(0.8, 0).is_err());
    }

    #[test]
    fn li_criterion() {
        assert_eq!(li_covariance_criterion(&ProcessSpec::white_noise(1.0).unwrap(), 100).unwrap(), 0.0);
        let ar = ProcessSpec::arfima(0.0, vec![0.5], vec![], 0.75).unwrap();
        // γ(k) = 0.5^k, Σ k 0.25^k = 0.25/0.75²
        assert!((li_covariance_criterion(&ar, 200).unwrap() - 0.25 / 0.5625).abs() < 1e-14);
    }

    #[test]
    fn grid_matches_quadrature_at_crossover() {
        let f = ArfimaSpectrum::new(Arfima::new(0.2, vec![0.6], vec![0.3], 1.0).unwrap());
        let (fine, _) = grid_coefficients(&f, FFT_GRID_LOG2, QUADRATURE_CROSSOVER);
        let (quad, _) = regular_coefficient(&f, QUADRATURE_CROSSOVER, &cfg()).unwrap();
        assert!((fine[QUADRATURE_CROSSOVER] - quad).abs() < 1e-10);
    }
}
