mod common;

use lrdent_core::paths::{sample_autocovariance, ArfimaGenerator, GaussianSource, MAX_TRUNCATION_DEFICIT};
use lrdent_core::*;
use proptest::prelude::*;

fn moments(x: &[f64]) -> (f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let m = |p: i32| x.iter().map(|v| (v - mean).powi(p)).sum::<f64>() / n;
    let var = m(2);
    (mean, var, m(3) / var.powf(1.5), m(4) / (var * var) - 3.0)
}

fn assert_standard_gaussian(x: &[f64], var: f64) {
    let n = x.len() as f64;
    let (mean, v, skew, kurt) = moments(x);
    assert!(mean.abs() < 5.0 * (var / n).sqrt(), "mean {mean}");
    assert!((v / var - 1.0).abs() < 5.0 * (2.0 / n).sqrt(), "variance {v}");
    assert!(skew.abs() < 5.0 * (6.0 / n).sqrt(), "skewness {skew}");
    assert!(kurt.abs() < 5.0 * (24.0 / n).sqrt(), "excess kurtosis {kurt}");
}

#[test]
fn normal_source_is_gaussian() {
    let mut src = GaussianSource::new(7, 0);
    let mut x = vec![0.0; 1_000_000];
    src.fill(&mut x);
    assert_standard_gaussian(&x, 1.0);
    let below = x.iter().filter(|v| **v < 1.0).count() as f64 / x.len() as f64;
    assert!((below - 0.841_344_746_068_542_9).abs() < 5.0 * (0.84 * 0.16 / 1e6f64).sqrt());
}

#[test]
fn long_white_fgn_path_is_gaussian() {
    let x = generate_fgn(&PathRequest::new(ProcessSpec::fgn(0.5, 2.0).unwrap(), 1_000_000, 11)).unwrap();
    assert_eq!(x.len(), 1_000_000);
    assert_standard_gaussian(&x, 2.0);
    let lag1 = sample_autocovariance(&x, 1)[1];
    assert!(lag1.abs() < 5.0 * 2.0 / 1e3);
}

#[test]
fn fgn_lag_one_correlation() {
    let req = PathRequest::new(ProcessSpec::fgn(0.8, 1.0).unwrap(), 1 << 14, 3);
    let generator = PathGenerator::new(&req).unwrap();
    let lag1: Vec<f64> = (0..50).map(|r| sample_autocovariance(&generator.replicate(3, r), 1)[1]).collect();
    let (mean, se) = common::mean_and_se(&lag1);
    let want = 2f64.powf(0.6) - 1.0;
    assert!((mean - want).abs() < 4.0 * se, "{mean} ± {se} vs {want}");
}

#[test]
fn truncated_arfima_variance() {
    let d = 0.3;
    let arfima = Arfima::fractional(d, 1.0).unwrap();
    let generator = ArfimaGenerator::new(&arfima, 100_000, 100_000, None, false).unwrap();
    assert!(generator.truncation_deficit() < MAX_TRUNCATION_DEFICIT);
    let gamma0 = arfima0d0_autocovariance(d, 1.0, 0).unwrap().variance();
    let kept = gamma0 * (1.0 - generator.truncation_deficit());
    let variances: Vec<f64> = (0..20)
        .map(|r| sample_autocovariance(&generator.sample(&mut GaussianSource::new(5, r)), 0)[0])
        .collect();
    let (mean, se) = common::mean_and_se(&variances);
    assert!((mean - kept).abs() < 4.0 * se, "{mean} ± {se} vs {kept}");
}

#[test]
fn truncation_deficit_guard() {
    let arfima = Arfima::fractional(0.45, 1.0).unwrap();
    assert!(matches!(
        ArfimaGenerator::new(&arfima, 100, 10, None, false),
        Err(Error::TruncationDeficit { truncation: 10, .. })
    ));
    let g = ArfimaGenerator::new(&arfima, 100, 10, None, true).unwrap();
    assert!(g.truncation_deficit() > MAX_TRUNCATION_DEFICIT);
    assert_eq!(g.sample(&mut GaussianSource::new(1, 0)).len(), 100);
}

#[test]
fn invalid_requests() {
    let fgn = ProcessSpec::fgn(0.7, 1.0).unwrap();
    assert!(generate_path(&PathRequest::new(fgn.clone(), 0, 1)).is_err());
    assert!(generate_arfima0d0(&PathRequest::new(fgn, 10, 1)).is_err());
    let arma = ProcessSpec::arfima(0.2, vec![0.5], vec![], 1.0).unwrap();
    assert!(matches!(generate_path(&PathRequest::new(arma.clone(), 10, 1)), Err(Error::InvalidSpec(_))));
    assert!(generate_fgn(&PathRequest::new(arma, 10, 1)).is_err());
}

#[test]
fn seeds_and_streams_are_independent() {
    let spec = ProcessSpec::fgn(0.3, 1.0).unwrap();
    let n = 1 << 16;
    let a = generate_path(&PathRequest::new(spec.clone(), n, 1)).unwrap();
    let b = generate_path(&PathRequest::new(spec.clone(), n, 2)).unwrap();
    let c = generate_path(&PathRequest::new(spec, n, 1).with_stream(1)).unwrap();
    let corr = |x: &[f64], y: &[f64]| {
        let xy: f64 = x.iter().zip(y).map(|(p, q)| p * q).sum();
        let xx: f64 = x.iter().map(|p| p * p).sum();
        let yy: f64 = y.iter().map(|q| q * q).sum();
        xy / (xx * yy).sqrt()
    };
    let bound = 5.0 / (n as f64).sqrt();
    assert!(corr(&a, &b).abs() < bound);
    assert!(corr(&a, &c).abs() < bound);
}

#[test]
fn burn_in_changes_the_path_not_its_length() {
    let spec = ProcessSpec::arfima(0.2, vec![], vec![], 1.0).unwrap();
    let base = PathRequest::new(spec, 500, 9).with_ma_truncation(20_000);
    let x = generate_path(&base).unwrap();
    let y = generate_path(&base.clone().with_burn_in(0)).unwrap();
    assert_eq!(x.len(), y.len());
    assert_ne!(x, y);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn paths_are_reproducible(h in 0.05f64..0.95, n in 1usize..3000, seed in any::<u64>(), stream in 0u64..1000) {
        let req = PathRequest::new(ProcessSpec::fgn(h, 1.0).unwrap(), n, seed).with_stream(stream);
        let x = generate_path(&req).unwrap();
        prop_assert_eq!(x.len(), n);
        prop_assert!(x.iter().all(|v| v.is_finite()));
        prop_assert_eq!(x, generate_path(&req).unwrap());
    }

    #[test]
    fn arfima_paths_are_reproducible(d in -0.45f64..0.3, n in 1usize..2000, seed in any::<u64>()) {
        let req = PathRequest::new(ProcessSpec::arfima(d, vec![], vec![], 1.0).unwrap(), n, seed).with_ma_truncation(20_000);
        let x = generate_path(&req).unwrap();
        prop_assert_eq!(x.len(), n);
        prop_assert_eq!(x, generate_path(&req).unwrap());
    }
}
