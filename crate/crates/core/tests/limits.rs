//! Finite-n exact values approaching the asymptotic constants.

use degree_trees::asymptotics::{constrained_degree_fraction, DEFAULT_TILT_TOL};
use degree_trees::numeric::to_f64;
use degree_trees::prufer::sample_degree_counts;
use degree_trees::stats::{
    asymptotic_covariance_coeff, asymptotic_expectation_coeff, asymptotic_variance_coeff, correlation, covariance,
    expectation, limiting_correlation, variance,
};
use degree_trees::{limiting_degree_distribution, DegreeSet};

#[test]
fn variance_and_covariance_increments() {
    for d in 1..=4 {
        let step = to_f64(&(variance(d, 801).unwrap() - variance(d, 800).unwrap()));
        assert!((step - asymptotic_variance_coeff(d)).abs() < 2e-3, "d = {d}: {step}");
    }
    for (d1, d2) in [(1, 2), (2, 3), (2, 4), (3, 4)] {
        let step = to_f64(&(covariance(d1, d2, 801).unwrap() - covariance(d1, d2, 800).unwrap()));
        let slope = asymptotic_covariance_coeff(d1, d2).unwrap().value;
        assert!((step - slope).abs() < 2e-3, "({d1},{d2}): {step} vs {slope}");
    }
}

#[test]
fn expectation_per_vertex() {
    for n in [100usize, 400] {
        for d in 1..=4 {
            let ratio = to_f64(&expectation(d, n).unwrap()) / n as f64;
            assert!((ratio - asymptotic_expectation_coeff(d)).abs() <= 2.0 / n as f64);
        }
    }
}

#[test]
fn finite_correlation_near_limit() {
    let rho = limiting_correlation(2, 3).unwrap().rho;
    let r = correlation(2, 3, 1500).unwrap();
    assert!((r - rho).abs() < 5e-3, "{r} vs {rho}");
}

#[test]
fn constrained_fraction_near_tilt() {
    let p: DegreeSet = "1,2,3".parse().unwrap();
    let dist = limiting_degree_distribution(&p, DEFAULT_TILT_TOL).unwrap();
    let f = constrained_degree_fraction(&p, 1, 200).unwrap();
    assert!((f - dist.probs[&1]).abs() < 5e-3, "{f} vs {}", dist.probs[&1]);
}

#[test]
fn sampled_leaf_count_mean() {
    let n = 100;
    let samples = 100_000;
    let xs = sample_degree_counts(n, 1, samples, 20261014).unwrap();
    let m = xs.len() as f64;
    let mean = xs.iter().map(|&x| x as f64).sum::<f64>() / m;
    let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let exact = 100.0 * (0.99f64).powi(98);
    assert!((mean - exact).abs() < 3.0 * (var / m).sqrt(), "{mean} vs {exact}");
    assert!((to_f64(&expectation(1, n).unwrap()) - exact).abs() < 1e-9);
}
