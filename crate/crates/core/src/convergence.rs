//! Measured decay of the conditional-entropy gap `h_e(n) − h` against the
//! two candidate shapes `C/n` and `C log(n)/n`.
//!
//! Fits are made in log space: `log C` is the mean of `log gap − log s(n)`
//! over the window and the residual norm is the RMS deviation about it.

use alloc::format;
use alloc::vec::Vec;

use crate::divergence::log_slope;
use crate::error::{Error, Result};
use crate::process::ProcessSpec;
use crate::quadrature::QuadratureConfig;
use crate::toeplitz::{conditional_entropy_sequence, ConvergenceSeries};

/// Gaps at or below this magnitude are treated as zero (rounding level of `log v_n`).
pub const ZERO_GAP: f64 = 1e-14;
/// Largest distance of the window slope from a shape's own slope for the
/// shape to count as consistent.
pub const SLOPE_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateShape {
    COverN,
    CLogNOverN,
}

impl RateShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            RateShape::COverN => "C_over_n",
            RateShape::CLogNOverN => "C_logn_over_n",
        }
    }

    pub fn ln_shape(&self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            RateShape::COverN => -libm::log(n),
            RateShape::CLogNOverN => libm::log(libm::log(n)) - libm::log(n),
        }
    }

    /// `d log s / d log n`.
    pub fn local_slope(&self, n: f64) -> f64 {
        match self {
            RateShape::COverN => -1.0,
            RateShape::CLogNOverN => -1.0 + 1.0 / libm::log(n),
        }
    }

    fn other(&self) -> Self {
        match self {
            RateShape::COverN => RateShape::CLogNOverN,
            RateShape::CLogNOverN => RateShape::COverN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub shape: RateShape,
    pub c: f64,
    pub residual_norm: f64,
    pub window: (usize, usize),
    pub competing_residual_norm: f64,
}

pub fn convergence_series(spec: &ProcessSpec, n_max: usize, cfg: &QuadratureConfig) -> Result<ConvergenceSeries> {
    if n_max < 16 {
        return Err(Error::Fit(format!("n_max must be at least 16, got {n_max}")));
    }
    conditional_entropy_sequence(spec, n_max, cfg)
}

fn window_gaps(series: &ConvergenceSeries, window: (usize, usize)) -> Result<&[crate::toeplitz::ConvergenceEntry]> {
    let (lo, hi) = window;
    if !(lo >= 2 && lo < hi && hi <= series.entries.len()) {
        return Err(Error::Fit(format!(
            "window [{lo}, {hi}] must satisfy 2 <= lo < hi <= {}",
            series.entries.len()
        )));
    }
    Ok(&series.entries[lo - 1..hi])
}

/// `(log C, RMS residual)` of `log gap` against `shape`.
fn log_fit(points: &[crate::toeplitz::ConvergenceEntry], shape: RateShape) -> (f64, f64) {
    let ys: Vec<f64> = points.iter().map(|e| libm::log(e.gap) - shape.ln_shape(e.n)).collect();
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss = ys.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / ys.len() as f64;
    (mean, libm::sqrt(ss))
}

/// Fits `gap(n) ≈ C s(n)` on `window`. A window whose gaps are all zero
/// gives `C = 0`; a window mixing zero and positive gaps is refused.
pub fn fit_rate(series: &ConvergenceSeries, shape: RateShape, window: (usize, usize)) -> Result<RateFit> {
    let points = window_gaps(series, window)?;
    if points.iter().all(|e| libm::fabs(e.gap) <= ZERO_GAP) {
        return Ok(RateFit { shape, c: 0.0, residual_norm: 0.0, window, competing_residual_norm: 0.0 });
    }
    if let Some(e) = points.iter().find(|e| !(e.gap > ZERO_GAP)) {
        return Err(Error::Fit(format!("gap({}) = {:e} is not positive", e.n, e.gap)));
    }
    let (ln_c, residual_norm) = log_fit(points, shape);
    let (_, competing_residual_norm) = log_fit(points, shape.other());
    Ok(RateFit { shape, c: libm::exp(ln_c), residual_norm, window, competing_residual_norm })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateVerdict {
    ConsistentWithCOverN,
    ConsistentWithLogNOverN,
    FasterThanBoth,
    Indeterminate,
}

impl RateVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RateVerdict::ConsistentWithCOverN => "consistent_with_C_over_n",
            RateVerdict::ConsistentWithLogNOverN => "consistent_with_logn_over_n",
            RateVerdict::FasterThanBoth => "faster_than_both",
            RateVerdict::Indeterminate => "indeterminate",
        }
    }
}

/// `d log gap / d log n` between `n` and `2n`; `None` where a gap is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSlope {
    pub n: usize,
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub window: (usize, usize),
    pub local_slopes: Vec<LocalSlope>,
    /// Least-squares slope of `log gap` on `log n` over the window.
    pub window_slope: Option<f64>,
    pub c_over_n: Option<RateFit>,
    pub c_logn_over_n: Option<RateFit>,
    /// `max n·gap(n)` over the whole series.
    pub sup_n_gap: f64,
    pub verdict: RateVerdict,
}

pub fn rate_report(spec: &ProcessSpec, n_max: usize, cfg: &QuadratureConfig) -> Result<RateReport> {
    let series = convergence_series(spec, n_max, cfg)?;
    Ok(rate_report_from_series(&series))
}

/// Report on the default window `[n_max/4, n_max]`.
pub fn rate_report_from_series(series: &ConvergenceSeries) -> RateReport {
    let n_max = series.entries.len();
    let window = ((n_max / 4).max(2), n_max);
    let gap = |n: usize| series.gap(n);

    let mut local_slopes = Vec::new();
    let mut n = 1;
    while 2 * n <= n_max {
        let (a, b) = (gap(n), gap(2 * n));
        let slope = (a > ZERO_GAP && b > ZERO_GAP).then(|| libm::log(b / a) / libm::log(2.0));
        local_slopes.push(LocalSlope { n, slope });
        n *= 2;
    }
    let sup_n_gap = series.entries.iter().map(|e| e.n as f64 * e.gap).fold(0.0, f64::max);

    let points = &series.entries[window.0 - 1..window.1];
    let positive = points.iter().all(|e| e.gap > ZERO_GAP);
    let window_slope = positive.then(|| {
        let pts: Vec<(usize, f64)> = points.iter().map(|e| (e.n, libm::log(e.gap))).collect();
        log_slope(&pts)
    });
    let c_over_n = fit_rate(series, RateShape::COverN, window).ok();
    let c_logn_over_n = fit_rate(series, RateShape::CLogNOverN, window).ok();

    let verdict = match (window_slope, c_over_n, c_logn_over_n) {
        (None, _, _) => RateVerdict::FasterThanBoth,
        (Some(s), Some(a), Some(b)) => {
            let mid = libm::sqrt(window.0 as f64 * window.1 as f64);
            if s < RateShape::COverN.local_slope(mid) - 2.5 * SLOPE_TOLERANCE {
                RateVerdict::FasterThanBoth
            } else if libm::fabs(s - RateShape::COverN.local_slope(mid)) <= SLOPE_TOLERANCE
                && a.residual_norm <= b.residual_norm
            {
                RateVerdict::ConsistentWithCOverN
            } else if libm::fabs(s - RateShape::CLogNOverN.local_slope(mid)) <= SLOPE_TOLERANCE
                && b.residual_norm < a.residual_norm
            {
                RateVerdict::ConsistentWithLogNOverN
            } else {
                RateVerdict::Indeterminate
            }
        }
        _ => RateVerdict::Indeterminate,
    };

    RateReport { window, local_slopes, window_slope, c_over_n, c_logn_over_n, sup_n_gap, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn white_noise_report() {
        let spec = ProcessSpec::white_noise(1.0).unwrap();
        let s = convergence_series(&spec, 64, &cfg()).unwrap();
        let fit = fit_rate(&s, RateShape::COverN, (16, 64)).unwrap();
        assert_eq!(fit.c, 0.0);
        let r = rate_report_from_series(&s);
        assert_eq!(r.verdict, RateVerdict::FasterThanBoth);
        assert_eq!(r.sup_n_gap, 0.0);
    }

    #[test]
    fn fractional_rate() {
        let spec = ProcessSpec::arfima(0.3, vec![], vec![], 1.0).unwrap();
        let s = convergence_series(&spec, 1024, &cfg()).unwrap();
        let fit = fit_rate(&s, RateShape::COverN, (256, 1024)).unwrap();
        assert!((fit.c / 0.045 - 1.0).abs() < 0.02, "C = {}", fit.c);
        assert!(fit.residual_norm < fit.competing_residual_norm);
        let r = rate_report_from_series(&s);
        assert_eq!(r.verdict, RateVerdict::ConsistentWithCOverN);
        assert!(r.local_slopes.iter().all(|l| l.slope.is_some_and(|s| (-3.0..=0.0).contains(&s))));
    }

    #[test]
    fn ma1_decays_faster() {
        let spec = ProcessSpec::arfima(0.0, vec![], vec![0.5], 1.0).unwrap();
        let s = convergence_series(&spec, 64, &cfg()).unwrap();
        let c: Vec<f64> = [(2, 4), (4, 8), (8, 16)]
            .iter()
            .map(|w| fit_rate(&s, RateShape::COverN, *w).unwrap().c)
            .collect();
        assert!(c[0] > c[1] && c[1] > c[2]);
        assert_eq!(rate_report_from_series(&s).verdict, RateVerdict::FasterThanBoth);
    }

    #[test]
    fn invalid_windows() {
        let spec = ProcessSpec::arfima(0.3, vec![], vec![], 1.0).unwrap();
        let s = convergence_series(&spec, 32, &cfg()).unwrap();
        assert!(fit_rate(&s, RateShape::COverN, (8, 8)).is_err());
        assert!(fit_rate(&s, RateShape::COverN, (8, 64)).is_err());
        assert!(convergence_series(&spec, 8, &cfg()).is_err());
    }
}
