//! Independent reference computations used only by tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Innovation variances `v_k = |K^{(k)}|/|K^{(k−1)}|`, `k = 1..=n`, from a
/// dense Cholesky factorisation of the `n × n` Toeplitz matrix: `v_k = L_kk²`.
pub fn dense_innovation_variances(gamma: &[f64], n: usize) -> Vec<f64> {
    assert!(n <= 512 && gamma.len() >= n);
    let mut l = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = gamma[i - j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                assert!(s > 0.0, "matrix not positive definite at {i}");
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    (0..n).map(|i| l[i * n + i] * l[i * n + i]).collect()
}

/// Lanczos (g = 7, n = 9) log-gamma for `x > 0.5`, reflected below.
pub fn lanczos_ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// `∫₀^π g(λ) dλ` on a mesh graded geometrically towards 0 (ratio 1/2, down
/// to 2⁻⁶⁰), 20-point Gauss–Legendre per panel plus `panels` uniform panels.
pub fn graded_integral(g: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let (x, w) = gauss_legendre(20);
    let mut edges = vec![0.0];
    let first = PI / panels as f64;
    let mut e = first * 2f64.powi(-60);
    while e < first {
        edges.push(e);
        e *= 2.0;
    }
    for i in 1..=panels {
        edges.push(first * i as f64);
    }
    let mut total = 0.0;
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        total += half * x.iter().zip(&w).map(|(xi, wi)| wi * g(mid + half * xi)).sum::<f64>();
    }
    total
}

/// `Π_{k≥n} (1 − α_k²)`-based gap `−½ Σ_{k≥n} log(1 − α_k²)` for ARFIMA(0, d, 0),
/// `α_k = d/(k − d)`, summed to `10⁷` with a `d²/(2K)` tail.
pub fn reflection_product_gap(d: f64, n: usize) -> f64 {
    let k_max = 10_000_000usize;
    let mut s = 0.0;
    for k in (n..=k_max).rev() {
        let a = d / (k as f64 - d);
        s -= 0.5 * (-a * a).ln_1p();
    }
    s + d * d / (2.0 * k_max as f64)
}

/// Mean and standard error of replicate values.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
