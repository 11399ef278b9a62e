//! Gaussian sample paths.
//!
//! FGN is drawn exactly by circulant embedding of its autocovariance.
//! ARFIMA(0, d, 0) is drawn as a moving average truncated at `K` terms,
//! evaluated by FFT convolution.
//!
//! Random numbers come from ChaCha20 seeded with `seed_from_u64(seed)`;
//! replicate `i` of a request uses stream `i` of the same key, so replicates
//! never share a keystream. Uniforms are `((x >> 11) + 1)·2⁻⁵³ ∈ (0, 1]`
//! and normals come in Box–Muller pairs, cosine branch first.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{domain, Error, Result};
use crate::fft;
use crate::process::{ma_weights, Arfima, Fgn, ProcessSpec};
use crate::special::ln_gamma;

pub const DEFAULT_MA_TRUNCATION: usize = 100_000;
/// Largest tolerated `Σ_{k>K} a_k² / Σ a_k²` unless explicitly overridden.
pub const MAX_TRUNCATION_DEFICIT: f64 = 0.01;
const EMBEDDING_DOUBLINGS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct PathRequest {
    pub spec: ProcessSpec,
    pub n: usize,
    pub seed: u64,
    /// ChaCha stream; replicate index.
    pub stream: u64,
    /// ARFIMA only.
    pub ma_truncation: usize,
    /// ARFIMA only; defaults to `ma_truncation`.
    pub burn_in: Option<usize>,
    /// Accept an MA truncation whose variance deficit exceeds [`MAX_TRUNCATION_DEFICIT`].
    pub allow_truncation_deficit: bool,
}

impl PathRequest {
    pub fn new(spec: ProcessSpec, n: usize, seed: u64) -> Self {
        Self {
            spec,
            n,
            seed,
            stream: 0,
            ma_truncation: DEFAULT_MA_TRUNCATION,
            burn_in: None,
            allow_truncation_deficit: false,
        }
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn with_ma_truncation(mut self, k: usize) -> Self {
        self.ma_truncation = k;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = Some(burn_in);
        self
    }
}

/// Standard normal variates from ChaCha20.
#[derive(Debug, Clone)]
pub struct GaussianSource {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let radius = libm::sqrt(-2.0 * libm::log(self.uniform()));
        let theta = 2.0 * PI * self.uniform();
        self.spare = Some(radius * libm::sin(theta));
        radius * libm::cos(theta)
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for x in out {
            *x = self.next_normal();
        }
    }
}

/// Exact FGN sampler for a fixed length.
#[derive(Debug, Clone)]
pub struct FgnGenerator {
    n: usize,
    /// `sqrt(λ_j / m)` for the circulant of size `m`.
    scale: Vec<f64>,
}

impl FgnGenerator {
    pub fn new(fgn: &Fgn, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(domain("generate_fgn", "path length must be at least 1"));
        }
        let mut half = n.next_power_of_two();
        let mut worst = 0.0;
        for _ in 0..=EMBEDDING_DOUBLINGS {
            let m = 2 * half;
            let gamma: Vec<f64> = (0..=half as u64).map(|k| crate::process::fgn_autocovariance(fgn, k)).collect();
            let mut c: Vec<Complex64> = (0..m)
                .map(|j| Complex64::new(gamma[if j <= half { j } else { m - j }], 0.0))
                .collect();
            fft::forward(&mut c);
            let top = c.iter().map(|z| z.re).fold(0.0, f64::max);
            let min = c.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
            if min >= -1e-10 * top {
                let scale = c.iter().map(|z| libm::sqrt(z.re.max(0.0) / m as f64)).collect();
                return Ok(Self { n, scale });
            }
            worst = min;
            half *= 2;
        }
        Err(Error::Embedding { size: half, min_eigenvalue: worst })
    }

    pub fn sample(&self, source: &mut GaussianSource) -> Vec<f64> {
        let mut w: Vec<Complex64> = self
            .scale
            .iter()
            .map(|s| {
                let re = source.next_normal();
                let im = source.next_normal();
                Complex64::new(re, im) * *s
            })
            .collect();
        fft::forward(&mut w);
        w.iter().take(self.n).map(|z| z.re).collect()
    }
}

/// Truncated-MA sampler for ARFIMA(0, d, 0).
#[derive(Debug, Clone)]
pub struct ArfimaGenerator {
    n: usize,
    burn_in: usize,
    truncation: usize,
    deficit: f64,
    /// FFT of `σ_ε a_k` zero-padded to the convolution size.
    kernel: Vec<Complex64>,
}

impl ArfimaGenerator {
    pub fn new(arfima: &Arfima, n: usize, truncation: usize, burn_in: Option<usize>, allow_deficit: bool) -> Result<Self> {
        if !arfima.is_pure_fractional() {
            return Err(Error::InvalidSpec("path generation supports ARFIMA(0, d, 0) only".into()));
        }
        if n < 1 {
            return Err(domain("generate_arfima0d0", "path length must be at least 1"));
        }
        if truncation < 1 {
            return Err(domain("generate_arfima0d0", "MA truncation must be at least 1"));
        }
        let d = arfima.d();
        let a = ma_weights(d, truncation);
        let kept: f64 = a.iter().map(|x| x * x).sum();
        let total = libm::exp(ln_gamma(1.0 - 2.0 * d)? - 2.0 * ln_gamma(1.0 - d)?);
        let deficit = (1.0 - kept / total).max(0.0);
        if deficit > MAX_TRUNCATION_DEFICIT && !allow_deficit {
            return Err(Error::TruncationDeficit { truncation, relative_deficit: deficit });
        }

        let burn_in = burn_in.unwrap_or(truncation);
        let noise = burn_in + n;
        let size = (noise + truncation - burn_in.min(truncation)).next_power_of_two();
        let sd = libm::sqrt(arfima.innovation_variance());
        let mut kernel = vec![Complex64::new(0.0, 0.0); size];
        for (k, w) in a.iter().enumerate() {
            kernel[k] = Complex64::new(sd * w, 0.0);
        }
        fft::forward(&mut kernel);
        Ok(Self { n, burn_in, truncation, deficit, kernel })
    }

    /// `Σ_{k>K} a_k² / Σ a_k²`.
    pub fn truncation_deficit(&self) -> f64 {
        self.deficit
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn sample(&self, source: &mut GaussianSource) -> Vec<f64> {
        let size = self.kernel.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); size];
        for z in buf.iter_mut().take(self.burn_in + self.n) {
            z.re = source.next_normal();
        }
        fft::forward(&mut buf);
        for (z, k) in buf.iter_mut().zip(&self.kernel) {
            *z *= k;
        }
        fft::inverse(&mut buf);
        buf[self.burn_in..self.burn_in + self.n]
            .iter()
            .map(|z| z.re / size as f64)
            .collect()
    }
}

/// A prepared sampler; reuse it across replicates of one request.
#[derive(Debug, Clone)]
pub enum PathGenerator {
    Fgn(FgnGenerator),
    Arfima(ArfimaGenerator),
}

impl PathGenerator {
    pub fn new(req: &PathRequest) -> Result<Self> {
        match &req.spec {
            ProcessSpec::Fgn(f) => FgnGenerator::new(f, req.n).map(Self::Fgn),
            ProcessSpec::Arfima(a) => {
                ArfimaGenerator::new(a, req.n, req.ma_truncation, req.burn_in, req.allow_truncation_deficit)
                    .map(Self::Arfima)
            }
        }
    }

    pub fn sample(&self, source: &mut GaussianSource) -> Vec<f64> {
        match self {
            Self::Fgn(g) => g.sample(source),
            Self::Arfima(g) => g.sample(source),
        }
    }

    /// Replicate `stream` for `seed`.
    pub fn replicate(&self, seed: u64, stream: u64) -> Vec<f64> {
        self.sample(&mut GaussianSource::new(seed, stream))
    }
}

pub fn generate_fgn(req: &PathRequest) -> Result<Vec<f64>> {
    let ProcessSpec::Fgn(f) = &req.spec else {
        return Err(Error::InvalidSpec("generate_fgn needs an FGN spec".into()));
    };
    Ok(FgnGenerator::new(f, req.n)?.sample(&mut GaussianSource::new(req.seed, req.stream)))
}

pub fn generate_arfima0d0(req: &PathRequest) -> Result<Vec<f64>> {
    if !matches!(req.spec, ProcessSpec::Arfima(_)) {
        return Err(Error::InvalidSpec("generate_arfima0d0 needs an ARFIMA spec".into()));
    }
    generate_path(req)
}

pub fn generate_path(req: &PathRequest) -> Result<Vec<f64>> {
    Ok(PathGenerator::new(req)?.replicate(req.seed, req.stream))
}

/// Zero-mean autocovariance estimates `(1/(n−h)) Σ x_t x_{t+h}` for `h = 0..=max_lag`.
pub fn sample_autocovariance(x: &[f64], max_lag: usize) -> Vec<f64> {
    (0..=max_lag.min(x.len().saturating_sub(1)))
        .map(|h| {
            let s: f64 = x.iter().zip(&x[h..]).map(|(a, b)| a * b).sum();
            s / (x.len() - h) as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_range_and_determinism() {
        let mut a = GaussianSource::new(7, 0);
        let mut b = GaussianSource::new(7, 0);
        let mut c = GaussianSource::new(7, 1);
        let xa: Vec<f64> = (0..100).map(|_| a.next_normal()).collect();
        let xb: Vec<f64> = (0..100).map(|_| b.next_normal()).collect();
        let xc: Vec<f64> = (0..100).map(|_| c.next_normal()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
        let mut s = GaussianSource::new(1, 0);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!(u > 0.0 && u <= 1.0);
        }
    }

    #[test]
    fn white_noise_paths() {
        let fgn = PathRequest::new(ProcessSpec::fgn(0.5, 1.0).unwrap(), 4096, 3);
        let x = generate_fgn(&fgn).unwrap();
        assert_eq!(x.len(), 4096);
        let acv = sample_autocovariance(&x, 1);
        let tol = 4.0 / libm::sqrt(4096.0);
        assert!((acv[0] - 1.0).abs() < 4.0 * libm::sqrt(2.0 / 4096.0));
        assert!(acv[1].abs() < tol);

        let req = PathRequest::new(ProcessSpec::white_noise(2.0).unwrap(), 100, 5).with_ma_truncation(10);
        let g = PathGenerator::new(&req).unwrap();
        let PathGenerator::Arfima(inner) = &g else { panic!() };
        assert!(inner.truncation_deficit() < 1e-15);
        // a_0 = 1 and a_k = 0: the path is √2 times the raw normals after burn-in.
        let mut src = GaussianSource::new(5, 0);
        let mut raw = vec![0.0; 110];
        src.fill(&mut raw);
        let path = g.replicate(5, 0);
        for (p, z) in path.iter().zip(&raw[10..]) {
            assert!((p - libm::sqrt(2.0) * z).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_deficit_guard() {
        let req = PathRequest::new(ProcessSpec::arfima(0.45, vec![], vec![], 1.0).unwrap(), 64, 1).with_ma_truncation(100);
        assert!(matches!(generate_path(&req), Err(Error::TruncationDeficit { .. })));
        let mut allowed = req.clone();
        allowed.allow_truncation_deficit = true;
        assert_eq!(generate_path(&allowed).unwrap().len(), 64);
        let arma = PathRequest::new(ProcessSpec::arfima(0.1, vec![0.5], vec![], 1.0).unwrap(), 64, 1);
        assert!(generate_path(&arma).is_err());
    }

    #[test]
    fn truncated_ma_matches_direct_convolution() {
        let req = PathRequest::new(ProcessSpec::arfima(0.3, vec![], vec![], 1.5).unwrap(), 50, 9)
            .with_ma_truncation(40)
            .with_burn_in(20);
        let mut allowed = req.clone();
        allowed.allow_truncation_deficit = true;
        let path = generate_path(&allowed).unwrap();
        let mut src = GaussianSource::new(9, 0);
        let mut eps = vec![0.0; 70];
        src.fill(&mut eps);
        let a = ma_weights(0.3, 40);
        for (t, x) in path.iter().enumerate() {
            let idx = t + 20;
            let direct: f64 = (0..=40.min(idx)).map(|k| a[k] * eps[idx - k]).sum::<f64>() * libm::sqrt(1.5);
            assert!((x - direct).abs() < 1e-12, "t={t}");
        }
    }
}
