//! Finite-order prediction: Levinson–Durbin on Toeplitz covariance matrices,
//! conditional entropies `h_e(n)`, excess entropy and the Szegő limits.
//!
//! Innovation variances are carried as logarithms, `log v_{k+1} = log v_k +
//! log(1 − α_k²)`, so gaps of order `1e−10` stay resolvable next to
//! `log v` of order one.

use alloc::vec;
use alloc::vec::Vec;

use crate::cepstrum::{cepstral_coefficients, weighted_partial_sums};
use crate::divergence::{assess, Assessment, Verdict};
use crate::entropy::{arfima_entropy_rate, entropy_rate_from_spectrum, fgn_entropy_rate, EntropyRateResult, WHITE_NOISE_RATE};
use crate::error::{domain, Error, Result};
use crate::process::{autocovariance, CovarianceSequence, ProcessSpec};
use crate::quadrature::QuadratureConfig;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonResult {
    ln_v: Vec<f64>,
    alpha: Vec<f64>,
}

impl LevinsonResult {
    /// Number of innovation variances `v_1..v_n`.
    pub fn len(&self) -> usize {
        self.ln_v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_v.is_empty()
    }

    /// `v_n = |K^{(n)}| / |K^{(n−1)}|`, `n ≥ 1`.
    pub fn innovation_variance(&self, n: usize) -> f64 {
        libm::exp(self.ln_v[n - 1])
    }

    /// `[log v_1, …, log v_n]`.
    pub fn ln_innovation_variances(&self) -> &[f64] {
        &self.ln_v
    }

    pub fn innovation_variances(&self) -> Vec<f64> {
        self.ln_v.iter().map(|l| libm::exp(*l)).collect()
    }

    /// `[α_1, …, α_{n−1}]`.
    pub fn reflection_coefficients(&self) -> &[f64] {
        &self.alpha
    }

    /// `log |K^{(n)}| = Σ_{k≤n} log v_k`.
    pub fn ln_determinant(&self, n: usize) -> f64 {
        self.ln_v[..n].iter().sum()
    }
}

/// Levinson–Durbin recursion on `γ(0..=m)`: returns `v_1..v_{m+1}` and
/// `α_1..α_m`.
pub fn levinson(gamma: &CovarianceSequence) -> Result<LevinsonResult> {
    let g = gamma.as_slice();
    let n = g.len();
    let mut ln_v = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n.saturating_sub(1));
    let mut phi = vec![0.0; n];
    let mut prev = vec![0.0; n];
    let mut v = g[0];
    ln_v.push(libm::log(v));
    for k in 1..n {
        let mut acc = g[k];
        for j in 1..k {
            acc -= phi[j] * g[k - j];
        }
        let a = acc / v;
        if !(libm::fabs(a) < 1.0) {
            return Err(Error::NotPositiveDefinite { order: k + 1, variance: v * (1.0 - a * a) });
        }
        prev[1..k].copy_from_slice(&phi[1..k]);
        for j in 1..k {
            phi[j] = prev[j] - a * prev[k - j];
        }
        phi[k] = a;
        let next = ln_v[k - 1] + libm::log1p(-a * a);
        v = libm::exp(next);
        ln_v.push(next);
        alpha.push(a);
    }
    Ok(LevinsonResult { ln_v, alpha })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceEntry {
    pub n: usize,
    /// `h_e(n) = ½ log(2πe v_n)`.
    pub conditional_entropy: f64,
    /// `h_e(n) − h`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSeries {
    pub entries: Vec<ConvergenceEntry>,
    pub entropy_rate: EntropyRateResult,
}

impl ConvergenceSeries {
    pub fn gap(&self, n: usize) -> f64 {
        self.entries[n - 1].gap
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.gap).collect()
    }
}

/// The entropy rate used as the limit of `h_e(n)`, with `log G` where `G`
/// is the limiting innovation variance.
fn reference_rate(spec: &ProcessSpec, cfg: &QuadratureConfig) -> Result<(EntropyRateResult, f64)> {
    match spec {
        ProcessSpec::Arfima(a) => Ok((arfima_entropy_rate(a), libm::log(a.innovation_variance()))),
        ProcessSpec::Fgn(f) => {
            let r = fgn_entropy_rate(f.hurst(), f.variance(), cfg)?;
            Ok((r, 2.0 * (r.value - WHITE_NOISE_RATE)))
        }
    }
}

/// `h_e(n)` and the gap to the entropy rate for `n = 1..=n_max`.
pub fn conditional_entropy_sequence(
    spec: &ProcessSpec,
    n_max: usize,
    cfg: &QuadratureConfig,
) -> Result<ConvergenceSeries> {
    if n_max < 1 {
        return Err(domain("conditional_entropy_sequence", "n_max must be at least 1"));
    }
    let lev = levinson(&autocovariance(spec, n_max - 1)?)?;
    let (rate, ln_g) = reference_rate(spec, cfg)?;
    let entries = lev
        .ln_innovation_variances()
        .iter()
        .enumerate()
        .map(|(i, &lv)| ConvergenceEntry {
            n: i + 1,
            conditional_entropy: WHITE_NOISE_RATE + 0.5 * lv,
            gap: 0.5 * (lv - ln_g),
        })
        .collect();
    Ok(ConvergenceSeries { entries, entropy_rate: rate })
}

/// `Σ_{n=1}^{m} (h_e(n) − h)`.
pub fn excess_entropy_partial_sum(spec: &ProcessSpec, m: usize, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(conditional_entropy_sequence(spec, m, cfg)?.entries.iter().map(|e| e.gap).sum())
}

/// `G = exp((1/2π)∫ log(2πf))`, the limit of the innovation variances.
pub fn szego_limit_g(spec: &ProcessSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let h = entropy_rate_from_spectrum(&Spectrum::of(spec), cfg)?;
    Ok(libm::exp(2.0 * (h.value - WHITE_NOISE_RATE)))
}

/// The strong Szegő constant `E` by two routes, each as partial sums of
/// `log E`: `−Σ j log(1 − α_j²)` and `Σ k b_k²`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongSzego {
    pub reflection: Assessment,
    pub cepstrum: Assessment,
}

impl StrongSzego {
    /// `log E` when both routes agree on convergence; divergent if either
    /// route diverges.
    pub fn ln_e(&self) -> Verdict {
        match (self.reflection.verdict, self.cepstrum.verdict) {
            (Verdict::Divergent, _) | (_, Verdict::Divergent) => Verdict::Divergent,
            (Verdict::Converged(a), Verdict::Converged(b)) => Verdict::Converged(0.5 * (a + b)),
            _ => Verdict::Indeterminate,
        }
    }

    pub fn e(&self) -> Verdict {
        match self.ln_e() {
            Verdict::Converged(l) => Verdict::Converged(libm::exp(l)),
            other => other,
        }
    }
}

pub fn strong_szego_e(spec: &ProcessSpec, n_terms: usize, cfg: &QuadratureConfig) -> Result<StrongSzego> {
    if n_terms < 1 {
        return Err(domain("strong_szego_e", "n_terms must be at least 1"));
    }
    let lev = levinson(&autocovariance(spec, n_terms)?)?;
    let mut s = 0.0;
    let product: Vec<f64> = lev
        .reflection_coefficients()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            s -= (i + 1) as f64 * libm::log1p(-a * a);
            s
        })
        .collect();
    let cep = cepstral_coefficients(spec, n_terms, cfg)?;
    Ok(StrongSzego {
        reflection: assess(&product),
        cepstrum: assess(&weighted_partial_sums(&cep)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::arfima0d0_autocovariance;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn white_noise_levinson() {
        let lev = levinson(&CovarianceSequence::new(vec![2.0, 0.0, 0.0, 0.0]).unwrap()).unwrap();
        assert!(lev.innovation_variances().iter().all(|&v| v == 2.0));
        assert!(lev.reflection_coefficients().iter().all(|&a| a == 0.0));
        assert_eq!(lev.len(), 4);
    }

    #[test]
    fn ar1_levinson() {
        let spec = ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap();
        let lev = levinson(&autocovariance(&spec, 20).unwrap()).unwrap();
        assert!((lev.reflection_coefficients()[0] - 0.5).abs() < 1e-15);
        assert!(lev.reflection_coefficients()[1..].iter().all(|a| a.abs() < 1e-15));
        assert!((lev.innovation_variance(1) - 4.0 / 3.0).abs() < 1e-15);
        for n in 2..=21 {
            assert!((lev.innovation_variance(n) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn fractional_reflection_coefficients() {
        let d = 0.3;
        let lev = levinson(&arfima0d0_autocovariance(d, 1.0, 64).unwrap()).unwrap();
        for (i, a) in lev.reflection_coefficients().iter().enumerate() {
            let k = (i + 1) as f64;
            assert!((a - d / (k - d)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn indefinite_sequence_is_reported() {
        let err = levinson(&CovarianceSequence::new(vec![1.0, 0.9, 0.0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { order: 3, .. }));
    }

    #[test]
    fn conditional_entropy_gaps() {
        let wn = conditional_entropy_sequence(&ProcessSpec::white_noise(2.0).unwrap(), 16, &cfg()).unwrap();
        assert!(wn.entries.iter().all(|e| e.gap == 0.0));
        let ar = conditional_entropy_sequence(&ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap(), 64, &cfg()).unwrap();
        assert!((ar.gap(1) - 0.5 * libm::log(4.0 / 3.0)).abs() < 1e-15);
        assert!(ar.entries[1..].iter().all(|e| e.gap.abs() <= 1e-14));
        let ex = excess_entropy_partial_sum(&ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap(), 64, &cfg()).unwrap();
        assert!((ex - 0.5 * libm::log(4.0 / 3.0)).abs() < 1e-13);
    }

    #[test]
    fn fractional_gap_matches_reflection_product() {
        let d: f64 = 0.3;
        let s = conditional_entropy_sequence(&ProcessSpec::arfima(d, vec![], vec![], 1.0).unwrap(), 1024, &cfg()).unwrap();
        for n in [1usize, 10, 100, 1024] {
            // gap(n) = −½ Σ_{k≥n} log(1 − α_k²), α_k = d/(k − d)
            let mut tail = 0.0;
            let mut k = 2_000_000usize;
            while k >= n {
                let a = d / (k as f64 - d);
                tail -= 0.5 * libm::log1p(-a * a);
                k -= 1;
            }
            tail += d * d / (2.0 * 2_000_000.0);
            assert!((s.gap(n) - tail).abs() < 1e-10 * tail.max(1e-4), "n={n}: {} vs {tail}", s.gap(n));
        }
    }

    #[test]
    fn szego_limits() {
        assert!((szego_limit_g(&ProcessSpec::white_noise(1.0).unwrap(), &cfg()).unwrap() - 1.0).abs() < 1e-10);
        assert!((szego_limit_g(&ProcessSpec::arfima(0.3, vec![], vec![], 1.0).unwrap(), &cfg()).unwrap() - 1.0).abs() < 1e-8);
        let wn = strong_szego_e(&ProcessSpec::white_noise(1.0).unwrap(), 128, &cfg()).unwrap();
        assert_eq!(wn.e(), Verdict::Converged(1.0));
        let ar = strong_szego_e(&ProcessSpec::arfima(0.0, vec![0.5], vec![], 1.0).unwrap(), 128, &cfg()).unwrap();
        assert!(matches!(ar.e(), Verdict::Converged(v) if (v - 4.0 / 3.0).abs() < 1e-8));
    }
}
