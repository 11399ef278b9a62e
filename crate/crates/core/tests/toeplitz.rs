mod common;

use lrdent_core::divergence::Verdict;
use lrdent_core::*;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn fractional_innovation_variances_closed_form() {
    for d in [-0.4, -0.1, 0.2, 0.35, 0.49] {
        let lev = levinson(&arfima0d0_autocovariance(d, 1.3, 200).unwrap()).unwrap();
        let lg = common::lanczos_ln_gamma;
        for n in 0..=200usize {
            let nf = n as f64;
            let want = 1.3f64.ln() + lg(nf + 1.0) + lg(nf + 1.0 - 2.0 * d) - 2.0 * lg(nf + 1.0 - d);
            let got = lev.ln_innovation_variances()[n];
            assert!((got - want).abs() < 1e-11, "d = {d}, n = {n}: {got} vs {want}");
        }
    }
}

#[test]
fn determinant_matches_cholesky() {
    let spec = ProcessSpec::fgn(0.75, 1.0).unwrap();
    let gamma = autocovariance(&spec, 99).unwrap();
    let lev = levinson(&gamma).unwrap();
    let dense = common::dense_innovation_variances(gamma.as_slice(), 100);
    let want: f64 = dense.iter().map(|v| v.ln()).sum();
    assert!((lev.ln_determinant(100) - want).abs() < 1e-10);
    assert_eq!(lev.len(), 100);
    assert_eq!(lev.reflection_coefficients().len(), 99);
}

#[test]
fn indefinite_sequence_rejected() {
    let gamma = CovarianceSequence::new(vec![1.0, 0.9, 0.0]).unwrap();
    assert!(matches!(levinson(&gamma), Err(Error::NotPositiveDefinite { order: 3, .. })));
}

#[test]
fn conditional_entropies_approach_rate() {
    let spec = ProcessSpec::fgn(0.8, 1.0).unwrap();
    let g = szego_limit_g(&spec, &cfg()).unwrap();
    let n = 1 << 14;
    let lev = levinson(&autocovariance(&spec, n - 1).unwrap()).unwrap();
    let excess = (lev.innovation_variance(n) / g).ln();
    assert!(excess > 0.0 && excess < 1e-4, "log(v_n / G) = {excess}");

    let spec = ProcessSpec::arfima(0.3, vec![], vec![], 2.0).unwrap();
    assert!((szego_limit_g(&spec, &cfg()).unwrap() - 2.0).abs() < 1e-8);
}

#[test]
fn szego_constant_for_ar1() {
    for phi in [-0.7, 0.2, 0.5, 0.9] {
        let spec = ProcessSpec::arfima(0.0, vec![phi], vec![], 1.0).unwrap();
        let want = -(1.0f64 - phi * phi).ln();
        let s = strong_szego_e(&spec, 1024, &cfg()).unwrap();
        for route in [s.reflection.verdict, s.cepstrum.verdict] {
            match route {
                Verdict::Converged(v) => assert!((v - want).abs() < 1e-6, "φ = {phi}: {v} vs {want}"),
                other => panic!("φ = {phi}: {other:?}"),
            }
        }
        match s.e() {
            Verdict::Converged(e) => assert!((e - 1.0 / (1.0 - phi * phi)).abs() < 1e-5),
            other => panic!("{other:?}"),
        }
        let excess = excess_entropy_partial_sum(&spec, 512, &cfg()).unwrap();
        assert!((excess - 0.5 * want).abs() < 1e-6);
    }
}

#[test]
fn szego_constant_diverges_for_lrd() {
    let s = strong_szego_e(&ProcessSpec::arfima(0.3, vec![], vec![], 1.0).unwrap(), 4096, &cfg()).unwrap();
    assert_eq!(s.ln_e(), Verdict::Divergent);
    assert!(strong_szego_e(&ProcessSpec::white_noise(1.0).unwrap(), 0, &cfg()).is_err());
}

#[test]
fn sequence_rate_matches_entropy_rate() {
    let spec = ProcessSpec::fgn(0.3, 1.0).unwrap();
    let s = conditional_entropy_sequence(&spec, 64, &cfg()).unwrap();
    let h = fgn_entropy_rate(0.3, 1.0, &cfg()).unwrap().value;
    assert!((s.entropy_rate.value - h).abs() < 1e-12);
    assert_eq!(s.entries.len(), 64);
    assert!(s.entries.iter().all(|e| (e.conditional_entropy - h - e.gap).abs() < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conditioning_reduces_entropy(d in -0.45f64..0.45, phi in -0.8f64..0.8, theta in -0.8f64..0.8) {
        let spec = ProcessSpec::arfima(d, vec![phi], vec![theta], 1.0).unwrap();
        let lev = levinson(&autocovariance(&spec, 127).unwrap()).unwrap();
        let v = lev.ln_innovation_variances();
        prop_assert!(v.windows(2).all(|w| w[1] <= w[0] + 1e-13));
        prop_assert!(*v.last().unwrap() >= -1e-12);
        prop_assert!(lev.reflection_coefficients().iter().all(|a| a.abs() < 1.0));
    }

    #[test]
    fn fgn_levinson_matches_dense(h in 0.05f64..0.95) {
        let gamma = autocovariance(&ProcessSpec::fgn(h, 1.0).unwrap(), 47).unwrap();
        let lev = levinson(&gamma).unwrap();
        let dense = common::dense_innovation_variances(gamma.as_slice(), 48);
        for (k, v) in dense.iter().enumerate() {
            prop_assert!((lev.innovation_variance(k + 1) / v - 1.0).abs() < 1e-10);
        }
    }
}
