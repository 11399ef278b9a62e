//! Real special functions on the positive axis: log-gamma, digamma and the
//! sine integral.
//!
//! Log-gamma and digamma shift the argument upward with their recurrences and
//! then apply the Stirling / asymptotic series. The sine integral uses its
//! power series for small arguments and a continued fraction for the
//! exponential integral `E1(ix)` beyond that.

#![allow(clippy::excessive_precision)]

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k) for k = 1..=7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("ln_gamma", alloc::format!("requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let mut z = x;
    let mut shift = 1.0;
    while z < 15.0 {
        shift *= z;
        z += 1.0;
    }

    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING {
        series += c * power;
        power *= inv2;
    }
    let stirling = (z - 0.5) * libm::log(z) - z + LN_SQRT_2PI + series;
    Ok(stirling - libm::log(shift))
}

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("digamma", alloc::format!("requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let mut z = x;
    let mut acc = 0.0;
    while z < 10.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }

    let inv2 = 1.0 / (z * z);
    let mut power = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_ASYMPTOTIC {
        series += c * power;
        power *= inv2;
    }
    Ok(acc + libm::log(z) - 0.5 / z - series)
}

/// Sine integral `Si(x) = ∫₀ˣ sin(t)/t dt` for `x ≥ 0`.
pub fn sine_integral(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain("sine_integral", alloc::format!("requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(FRAC_PI_2);
    }
    if x <= 4.0 {
        Ok(si_series(x))
    } else {
        Ok(si_continued_fraction(x))
    }
}

fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    // term_k = (-1)^k x^(2k+1) / (2k+1)!
    let mut term = x;
    let mut sum = x;
    let mut k = 0u32;
    loop {
        k += 1;
        let n = f64::from(2 * k);
        term *= -x2 / (n * (n + 1.0));
        let contribution = term / (n + 1.0);
        sum += contribution;
        if libm::fabs(contribution) < 1e-17 * libm::fabs(sum) || k > 60 {
            return sum;
        }
    }
}

// Modified Lentz evaluation of the continued fraction for E1(ix).
fn si_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 2..200 {
        let a = -f64::from((i - 1) * (i - 1));
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let del = c * d;
        h *= del;
        if libm::fabs(del.re - 1.0) + libm::fabs(del.im) < 1e-16 {
            break;
        }
    }
    let e1 = Complex64::new(libm::cos(x), -libm::sin(x)) * h;
    FRAC_PI_2 + e1.im
}

/// `Si(π)`, the first maximum of the sine integral.
pub fn sine_integral_at_pi() -> f64 {
    si_series(PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        libm::fabs(a - b) <= tol * b.abs().max(1.0)
    }

    #[test]
    fn ln_gamma_anchors() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        let half = 0.5 * libm::log(PI);
        assert!(close(ln_gamma(0.5).unwrap(), half, 1e-14));
    }

    #[test]
    fn ln_gamma_reference_values() {
        // mpmath, 30 digits
        let cases = [
            (2.6, 0.357_411_863_548_979_77),
            (0.1, 2.252_712_651_734_205_96),
            (3.7, 1.428_072_326_665_387_92),
            (10.5, 13.940_625_219_403_763_6),
            (50.25, 145.541_871_596_332_118),
            (170.0, 701.437_263_808_737_085),
            (1e-3, 6.907_178_885_383_853_68),
            (1.461_632_144_968_362_3, -0.121_486_290_535_849_608),
        ];
        for (x, want) in cases {
            let got = ln_gamma(x).unwrap();
            assert!(close(got, want, 1e-13), "lnΓ({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn digamma_reference_values() {
        let cases = [
            (1.0, -0.577_215_664_901_532_86),
            (2.0, 0.422_784_335_098_467_14),
            (0.25, -4.227_453_533_376_265_4),
            (7.3, 1.917_820_335_637_986_1),
            (0.01, -100.560_885_457_868_67),
            (30.0, 3.384_438_132_685_524_9),
        ];
        for (x, want) in cases {
            let got = digamma(x).unwrap();
            assert!((got - want).abs() < 1e-12, "ψ({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn sine_integral_reference_values() {
        let cases = [
            (0.5, 0.493_107_418_043_066_69),
            (1.0, 0.946_083_070_367_183_01),
            (2.0, 1.605_412_976_802_694_85),
            (3.9, 1.776_501_360_447_805_44),
            (4.0, 1.758_203_138_949_053_06),
            (4.1, 1.738_743_626_491_768_93),
            (PI, 1.851_937_051_982_466_17),
            (10.0, 1.658_347_594_218_874_05),
            (50.0, 1.551_617_072_485_935_89),
            (200.0, 1.568_382_339_339_469_83),
        ];
        for (x, want) in cases {
            let got = sine_integral(x).unwrap();
            assert!((got - want).abs() < 1e-13, "Si({x}) = {got}, want {want}");
        }
        assert_eq!(sine_integral(0.0).unwrap(), 0.0);
        assert!((sine_integral_at_pi() - 1.851_937_051_982_466_17).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(digamma(0.0).is_err());
        assert!(digamma(-2.0).is_err());
        assert!(sine_integral(-1e-9).is_err());
    }
}
