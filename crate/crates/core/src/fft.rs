//! In-place iterative radix-2 FFT.
//!
//! Twiddles are evaluated directly from `cos`/`sin` rather than by repeated
//! multiplication, so the result for a given length is bit-reproducible.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// Forward transform `X_k = Σ_j x_j e^{-2πi jk/N}`. `data.len()` must be a power of two.
pub fn forward(data: &mut [Complex64]) {
    transform(data, -1.0);
}

/// Unnormalised inverse transform `x_j = Σ_k X_k e^{+2πi jk/N}`.
pub fn inverse(data: &mut [Complex64]) {
    transform(data, 1.0);
}

fn transform(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    assert!(n.is_power_of_two(), "FFT length {n} is not a power of two");
    if n <= 1 {
        return;
    }

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let theta = sign * 2.0 * PI * (k as f64) / (n as f64);
            Complex64::new(libm::cos(theta), libm::sin(theta))
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let u = data[start + k];
                let v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}
