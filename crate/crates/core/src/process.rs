//! Stationary Gaussian process models: fractional Gaussian noise and
//! ARFIMA(p, d, q).
//!
//! Covariances use ratio recursions rather than gamma-function quotients so
//! that lags in the millions neither overflow nor lose precision.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::special::ln_gamma;

/// Fractional Gaussian noise with Hurst parameter `H` and marginal variance `σ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fgn {
    hurst: f64,
    variance: f64,
}

impl Fgn {
    pub fn new(hurst: f64, variance: f64) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::InvalidSpec(format!("FGN requires 0 < H < 1, got H = {hurst}")));
        }
        check_positive("variance", variance)?;
        Ok(Self { hurst, variance })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Low-frequency constant `c_f = σ²/(2π) · sin(πH) · Γ(2H + 1)`.
    pub fn spectral_constant(&self) -> f64 {
        let h = self.hurst;
        self.variance / (2.0 * core::f64::consts::PI)
            * libm::sin(core::f64::consts::PI * h)
            * libm::exp(ln_gamma(2.0 * h + 1.0).expect("2H + 1 > 0"))
    }
}

/// ARFIMA(p, d, q): `φ(L)(1 − L)^d X = ψ(L) ε` with
/// `φ(x) = 1 − Σ φ_j x^j`, `ψ(x) = 1 + Σ ψ_j x^j`, `Var ε = σ_ε²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arfima {
    d: f64,
    ar: Vec<f64>,
    ma: Vec<f64>,
    innovation_variance: f64,
}

impl Arfima {
    pub fn new(d: f64, ar: Vec<f64>, ma: Vec<f64>, innovation_variance: f64) -> Result<Self> {
        check_d(d).map_err(|_| {
            Error::InvalidSpec(format!("ARFIMA requires -1/2 < d < 1/2, got d = {d}"))
        })?;
        check_positive("innovation variance", innovation_variance)?;
        if ar.iter().chain(&ma).any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("AR/MA coefficients must be finite".to_string()));
        }
        if !roots_outside_unit_circle(&ar) {
            return Err(Error::InvalidSpec(format!(
                "AR polynomial {ar:?} has a root on or inside the unit circle (not stationary)"
            )));
        }
        let negated: Vec<f64> = ma.iter().map(|c| -c).collect();
        if !roots_outside_unit_circle(&negated) {
            return Err(Error::InvalidSpec(format!(
                "MA polynomial {ma:?} has a root on or inside the unit circle (not invertible)"
            )));
        }
        Ok(Self {
            d,
            ar,
            ma,
            innovation_variance,
        })
    }

    pub fn fractional(d: f64, innovation_variance: f64) -> Result<Self> {
        Self::new(d, Vec::new(), Vec::new(), innovation_variance)
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn ar(&self) -> &[f64] {
        &self.ar
    }

    pub fn ma(&self) -> &[f64] {
        &self.ma
    }

    pub fn innovation_variance(&self) -> f64 {
        self.innovation_variance
    }

    /// True for ARFIMA(0, d, 0).
    pub fn is_pure_fractional(&self) -> bool {
        self.ar.is_empty() && self.ma.is_empty()
    }
}

/// A stationary Gaussian model.
#[derive(Debug, Clone, PartialEq)]
pub enum ProcessSpec {
    Fgn(Fgn),
    Arfima(Arfima),
}

impl ProcessSpec {
    pub fn fgn(hurst: f64, variance: f64) -> Result<Self> {
        Fgn::new(hurst, variance).map(Self::Fgn)
    }

    pub fn arfima(d: f64, ar: Vec<f64>, ma: Vec<f64>, innovation_variance: f64) -> Result<Self> {
        Arfima::new(d, ar, ma, innovation_variance).map(Self::Arfima)
    }

    /// iid N(0, σ²), written as ARFIMA(0, 0, 0).
    pub fn white_noise(variance: f64) -> Result<Self> {
        Arfima::fractional(0.0, variance).map(Self::Arfima)
    }

    pub fn dependence(&self) -> Dependence {
        classify_dependence(self)
    }
}

/// Memory class of a stationary process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dependence {
    /// Long range dependent: non-summable covariances (H > ½, d > 0).
    Lrd,
    /// Short range dependent with H = ½ or d = 0.
    Srd,
    /// Constrained short range dependent: summable covariances with zero total (H < ½, d < 0).
    Csrd,
}

impl Dependence {
    pub fn as_str(&self) -> &'static str {
        match self {
            Dependence::Lrd => "LRD",
            Dependence::Srd => "SRD",
            Dependence::Csrd => "CSRD",
        }
    }
}

/// Exact comparison on the supplied parameter: H = 0.5 and d = 0 are the only SRD points.
pub fn classify_dependence(spec: &ProcessSpec) -> Dependence {
    let centred = match spec {
        ProcessSpec::Fgn(f) => f.hurst - 0.5,
        ProcessSpec::Arfima(a) => a.d,
    };
    if centred > 0.0 {
        Dependence::Lrd
    } else if centred < 0.0 {
        Dependence::Csrd
    } else {
        Dependence::Srd
    }
}

/// Autocovariances `γ(0), …, γ(n)` of a stationary process.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSequence {
    gamma: Vec<f64>,
}

impl CovarianceSequence {
    /// Checks `γ(0) > 0` and `|γ(k)| ≤ γ(0)` (up to rounding).
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        let Some(&g0) = gamma.first() else {
            return Err(domain("CovarianceSequence", "empty sequence"));
        };
        if !(g0 > 0.0 && g0.is_finite()) {
            return Err(domain("CovarianceSequence", format!("γ(0) must be positive, got {g0}")));
        }
        let bound = g0 * (1.0 + 1e-12);
        if let Some((k, g)) = gamma
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_finite() || libm::fabs(**g) > bound)
        {
            return Err(domain(
                "CovarianceSequence",
                format!("|γ({k})| = {g} exceeds γ(0) = {g0}"),
            ));
        }
        Ok(Self { gamma })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    pub fn variance(&self) -> f64 {
        self.gamma[0]
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.gamma
    }
}

/// `γ(k) = (σ²/2)(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H})`.
pub fn fgn_autocovariance(fgn: &Fgn, k: u64) -> f64 {
    let two_h = 2.0 * fgn.hurst;
    let half_var = 0.5 * fgn.variance;
    match k {
        0 => fgn.variance,
        1..=7 => {
            let k = k as f64;
            half_var * (libm::pow(k + 1.0, two_h) - 2.0 * libm::pow(k, two_h) + libm::pow(k - 1.0, two_h))
        }
        _ => {
            // k^{2H}[(1+x)^{2H} + (1−x)^{2H} − 2] = 2 k^{2H} Σ_{m≥1} C(2H, 2m) x^{2m}, x = 1/k,
            // which avoids the cancellation of the direct second difference.
            let k = k as f64;
            let x = 1.0 / k;
            let mut binom = 1.0;
            let mut power = 1.0;
            let mut sum = 0.0;
            for j in 1..200u32 {
                let jf = f64::from(j);
                binom *= (two_h - jf + 1.0) / jf;
                power *= x;
                if j % 2 == 0 {
                    let term = binom * power;
                    sum += term;
                    if libm::fabs(term) <= 1e-18 * libm::fabs(sum) || binom == 0.0 {
                        break;
                    }
                }
            }
            fgn.variance * libm::pow(k, two_h) * sum
        }
    }
}

/// `γ(0..=k_max)` of ARFIMA(0, d, 0): `γ(0) = σ_ε² Γ(1−2d)/Γ(1−d)²`,
/// `γ(k) = γ(k−1)(k−1+d)/(k−d)`.
pub fn arfima0d0_autocovariance(d: f64, sigma_eps2: f64, k_max: usize) -> Result<CovarianceSequence> {
    check_d(d)?;
    check_positive("innovation variance", sigma_eps2)?;
    let mut gamma = Vec::with_capacity(k_max + 1);
    let g0 = sigma_eps2 * libm::exp(ln_gamma(1.0 - 2.0 * d)? - 2.0 * ln_gamma(1.0 - d)?);
    gamma.push(g0);
    for k in 1..=k_max {
        let kf = k as f64;
        let prev = gamma[k - 1];
        gamma.push(prev * (kf - 1.0 + d) / (kf - d));
    }
    CovarianceSequence::new(gamma)
}

/// `σ_ε² = σ² Γ(1−d)²/Γ(1−2d)`: the innovation variance giving ARFIMA(0, d, 0)
/// process variance `σ²`.
pub fn innovation_variance_from_process_variance(d: f64, sigma2: f64) -> Result<f64> {
    check_d(d)?;
    check_positive("process variance", sigma2)?;
    Ok(sigma2 * libm::exp(2.0 * ln_gamma(1.0 - d)? - ln_gamma(1.0 - 2.0 * d)?))
}

/// AR(∞) weights `π_k` and MA(∞) weights `a_k` of ARFIMA(0, d, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct InfiniteRepresentation {
    /// `Σ π_k X_{n−k} = ε_n`.
    pub ar: Vec<f64>,
    /// `X_n = Σ a_k ε_{n−k}`.
    pub ma: Vec<f64>,
}

/// `π_k = π_{k−1}(k−1−d)/k`, `a_k = a_{k−1}(k−1+d)/k`, `π_0 = a_0 = 1`.
pub fn arfima_ar_ma_coefficients(d: f64, k_max: usize) -> Result<InfiniteRepresentation> {
    check_d(d)?;
    Ok(InfiniteRepresentation {
        ar: ratio_sequence(k_max, |k| (k - 1.0 - d) / k),
        ma: ma_weights(d, k_max),
    })
}

pub(crate) fn ma_weights(d: f64, k_max: usize) -> Vec<f64> {
    ratio_sequence(k_max, |k| (k - 1.0 + d) / k)
}

fn ratio_sequence(k_max: usize, ratio: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(1.0);
    for k in 1..=k_max {
        let prev = out[k - 1];
        out.push(prev * ratio(k as f64));
    }
    out
}

/// MA(∞) weights of `ψ(L)/φ(L)`, truncated once they fall below `1e-17` of
/// the largest weight for `p` consecutive lags.
pub fn arma_impulse_response(ar: &[f64], ma: &[f64]) -> Vec<f64> {
    const CAP: usize = 1_000_000;
    let p = ar.len();
    let q = ma.len();
    let mut c = vec![1.0];
    let mut peak: f64 = 1.0;
    let mut quiet = 0usize;
    for j in 1..CAP {
        let mut v = if j <= q { ma[j - 1] } else { 0.0 };
        for i in 1..=p.min(j) {
            v += ar[i - 1] * c[j - i];
        }
        peak = peak.max(libm::fabs(v));
        c.push(v);
        if j >= q {
            if libm::fabs(v) <= 1e-17 * peak {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= p.max(1) {
                break;
            }
        }
    }
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

/// `γ(0..=max_lag)` for any supported model.
///
/// ARFIMA(p, d, q) is the ARMA filter applied to ARFIMA(0, d, 0), so its
/// covariance is the fractional covariance convolved with the autocorrelation
/// of the ARMA impulse response.
pub fn autocovariance(spec: &ProcessSpec, max_lag: usize) -> Result<CovarianceSequence> {
    match spec {
        ProcessSpec::Fgn(f) => {
            CovarianceSequence::new((0..=max_lag as u64).map(|k| fgn_autocovariance(f, k)).collect())
        }
        ProcessSpec::Arfima(a) if a.is_pure_fractional() => {
            arfima0d0_autocovariance(a.d, a.innovation_variance, max_lag)
        }
        ProcessSpec::Arfima(a) => {
            let c = arma_impulse_response(&a.ar, &a.ma);
            let width = c.len() - 1;
            let kernel: Vec<f64> = (0..=width)
                .map(|m| c.iter().zip(&c[m..]).map(|(x, y)| x * y).sum())
                .collect();
            if a.d == 0.0 {
                let gamma = (0..=max_lag)
                    .map(|k| a.innovation_variance * kernel.get(k).copied().unwrap_or(0.0))
                    .collect();
                return CovarianceSequence::new(gamma);
            }
            let base = arfima0d0_autocovariance(a.d, a.innovation_variance, max_lag + width)?;
            let g = base.as_slice();
            let gamma = (0..=max_lag)
                .map(|k| {
                    let mut s = kernel[0] * g[k];
                    for (m, w) in kernel.iter().enumerate().skip(1) {
                        s += w * (g[k + m] + g[k.abs_diff(m)]);
                    }
                    s
                })
                .collect();
            CovarianceSequence::new(gamma)
        }
    }
}

/// Schur–Cohn step-down test: true when every root of `1 − Σ c_j x^j` lies
/// strictly outside the unit circle.
pub fn roots_outside_unit_circle(coeffs: &[f64]) -> bool {
    let mut a: Vec<f64> = coeffs.to_vec();
    while let Some(&k) = a.last() {
        let m = a.len();
        if !(libm::fabs(k) < 1.0) {
            return false;
        }
        let denom = 1.0 - k * k;
        let prev = a.clone();
        for j in 0..m - 1 {
            a[j] = (prev[j] + k * prev[m - 2 - j]) / denom;
        }
        a.pop();
    }
    true
}

fn check_d(d: f64) -> Result<()> {
    if d > -0.5 && d < 0.5 {
        Ok(())
    } else {
        Err(domain("arfima", format!("requires -1/2 < d < 1/2, got {d}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive and finite, got {v}")))
    }
}
