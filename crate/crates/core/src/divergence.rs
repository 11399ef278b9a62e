//! Convergence/divergence assessment for slowly varying partial sums.
//!
//! Shared by the strong Szegő constant, the weighted cepstrum sum and the
//! past/future mutual information so that all three apply the same rule.
//!
//! Partial sums are sampled at doubling indices `m = 1, 2, 4, …`. A sum is
//! converged when the last doubling changes it by less than
//! [`CONVERGENCE_TOLERANCE`]. It is divergent when it has passed
//! [`DIVERGENCE_THRESHOLD`] while still rising against `log m`, or when it
//! shows the harmonic signature of logarithmic growth: the last two doubling
//! increments are both above [`INCREMENT_FLOOR`] and the last is at least
//! [`HARMONIC_RATIO`] times the one before. Anything else is indeterminate.

use alloc::vec::Vec;

pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;
pub const DIVERGENCE_THRESHOLD: f64 = 50.0;
pub const INCREMENT_FLOOR: f64 = 1e-6;
/// A sum with terms `~ m^{−1−δ}` has doubling increments shrinking by
/// `2^{−δ}`; `0.9` separates `δ ≳ 0.15` from logarithmic growth.
pub const HARMONIC_RATIO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Converged(f64),
    Divergent,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converged(_) => "converged",
            Verdict::Divergent => "divergent",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    pub verdict: Verdict,
    /// `(m, S_m)` at the doubling indices and at the final index.
    pub trace: Vec<(usize, f64)>,
    /// Least-squares slope of `S_m` against `log m` over the last four trace points.
    pub slope: f64,
}

impl Assessment {
    pub fn last(&self) -> f64 {
        self.trace.last().map_or(0.0, |p| p.1)
    }
}

/// Doubling-index trace of `partial[m − 1] = S_m`.
pub fn doubling_trace(partial: &[f64]) -> Vec<(usize, f64)> {
    let mut trace = Vec::new();
    let mut m = 1;
    while m <= partial.len() {
        trace.push((m, partial[m - 1]));
        m *= 2;
    }
    if let Some(&(last, _)) = trace.last() {
        if last != partial.len() {
            trace.push((partial.len(), partial[partial.len() - 1]));
        }
    }
    trace
}

/// Slope of `y` against `log x` by least squares.
pub fn log_slope(points: &[(usize, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| libm::log(p.0 as f64)).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for p in points {
        let dx = libm::log(p.0 as f64) - mx;
        sxy += dx * (p.1 - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Applies the shared rule to `partial[m − 1] = S_m`, `m = 1..=len`.
pub fn assess(partial: &[f64]) -> Assessment {
    let trace = doubling_trace(partial);
    let tail = &trace[trace.len().saturating_sub(4)..];
    let slope = log_slope(tail);
    let verdict = classify(&trace, slope);
    Assessment { verdict, trace, slope }
}

fn classify(trace: &[(usize, f64)], slope: f64) -> Verdict {
    let k = trace.len();
    if k < 2 || trace.iter().any(|p| !p.1.is_finite()) {
        return Verdict::Indeterminate;
    }
    let last = trace[k - 1].1;
    let change = libm::fabs(last - trace[k - 2].1);
    if change < CONVERGENCE_TOLERANCE {
        return Verdict::Converged(last);
    }
    if last > DIVERGENCE_THRESHOLD && slope > 0.0 {
        return Verdict::Divergent;
    }
    if k >= 3 && trace[k - 1].0 == 2 * trace[k - 2].0 {
        let step = last - trace[k - 2].1;
        let previous = trace[k - 2].1 - trace[k - 3].1;
        if previous > INCREMENT_FLOOR && step > INCREMENT_FLOOR && step >= HARMONIC_RATIO * previous && slope > 0.0 {
            return Verdict::Divergent;
        }
    }
    Verdict::Indeterminate
}
