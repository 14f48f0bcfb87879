//! Empirical growth constants and limiting degree distributions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::degrees::DegreeSet;
use crate::error::{Error, Result};
use crate::extrapolate::richardson_in_inverse_n;
use crate::numeric::{factorial, falling_product, int, to_f64};
use crate::series::IncrementalPowers;

pub const MIN_GROWTH_TERMS: usize = 30;
/// Richardson depth: the final estimate interpolates this many + 1 ratios.
pub const DEFAULT_DEPTH: usize = 10;
pub const DEFAULT_TILT_TOL: f64 = 1e-12;
const TAIL_LEN: usize = 5;

/// Estimated `c` such that `a(n)` grows like `c^n n!` up to subexponential factors.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub c: f64,
    /// Depth-`DEFAULT_DEPTH` estimates ending at each of the last few ratios; the last one is `c`.
    pub c_sequence_tail: Vec<f64>,
    pub n_max_used: i64,
    /// Period of the nonzero support (2 when odd-index terms vanish, for instance).
    pub stride: usize,
    /// Secondary diagnostic: `theta` in `a(n) ~ K n! c^n n^theta`.
    pub exponent_estimate: f64,
}

/// Ratio analysis of `seq`, where `seq[i]` is the term of index `start_index + i`.
///
/// With support period `s`, the ratios are `R(n) = a(n+s) / (n^s a(n))`, which
/// tend to `c^s`. They are extrapolated exactly in `1/n` and converted to
/// floating point at the end.
pub fn estimate_growth(seq: &[BigUint], start_index: i64) -> Result<GrowthEstimate> {
    let first = seq.iter().position(|v| !v.is_zero()).ok_or(Error::ZeroTerm { index: start_index })?;
    let stride =
        seq[first..].iter().enumerate().filter(|(_, v)| !v.is_zero()).fold(0usize, |g, (i, _)| g.gcd(&i)).max(1);
    let terms: Vec<(i64, &BigUint)> =
        seq[first..].iter().enumerate().step_by(stride).map(|(i, v)| (start_index + (first + i) as i64, v)).collect();
    // Sporadic zeros at small n (a(3) = 0 for P = {1,3,4}) are dropped with everything before them.
    let terms = match terms.iter().rposition(|(_, v)| v.is_zero()) {
        Some(last) if last + 1 == terms.len() => return Err(Error::ZeroTerm { index: terms[last].0 }),
        Some(last) => terms[last + 1..].to_vec(),
        None => terms,
    };
    if terms.len() < MIN_GROWTH_TERMS {
        return Err(Error::InsufficientData { needed: MIN_GROWTH_TERMS, available: terms.len() });
    }
    let s = stride as u32;
    let ratios: Vec<(i64, BigRational)> = terms
        .windows(2)
        .map(|w| {
            let (n, a) = w[0];
            let den = int(a.clone()) * num_traits::pow(num_bigint::BigInt::from(n), s as usize);
            (n, BigRational::new(int(w[1].1.clone()), den))
        })
        .collect();
    let depth = DEFAULT_DEPTH.min(ratios.len() - 1);
    let window_limit = |end: usize| {
        let window = &ratios[end - depth..=end];
        let ns: Vec<i64> = window.iter().map(|(n, _)| *n).collect();
        let vs: Vec<BigRational> = window.iter().map(|(_, v)| v.clone()).collect();
        richardson_in_inverse_n(&ns, &vs)
    };
    let last = ratios.len() - 1;
    let tail_start = last.saturating_sub(TAIL_LEN - 1).max(depth);
    let root = |x: f64| x.powf(1.0 / s as f64);
    let limit = window_limit(last);
    let c_sequence_tail = (tail_start..=last).map(|end| root(to_f64(&window_limit(end)))).collect();

    // D(n) = n (n+s) (R(n) - R(n+s)) / s tends to c^s * b, where R(n) ~ c^s (1 + b/n).
    let diffs: Vec<(i64, BigRational)> = ratios[ratios.len().saturating_sub(depth + 2)..]
        .windows(2)
        .map(|w| {
            let (n, r0) = (&w[0].0, &w[0].1);
            let scale = BigRational::new((*n * (*n + s as i64)).into(), (s as i64).into());
            (*n, (r0 - &w[1].1) * scale)
        })
        .collect();
    let d_end = diffs.len() - 1;
    let d_depth = depth.min(d_end);
    let window = &diffs[d_end - d_depth..];
    let slope = richardson_in_inverse_n(
        &window.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        &window.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
    );
    let b = to_f64(&(slope / &limit));
    let sf = s as f64;
    Ok(GrowthEstimate {
        c: root(to_f64(&limit)),
        c_sequence_tail,
        n_max_used: terms.last().unwrap().0,
        stride,
        exponent_estimate: (b - sf * (sf + 1.0) / 2.0) / sf,
    })
}

/// Limiting fraction of vertices of each allowed degree in a uniform random
/// `P`-constrained tree, from the tilt `t` solving `t f'(t) / f(t) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pub support: Vec<u32>,
    pub probs: BTreeMap<u32, f64>,
    /// `None` in the boundary case, where the tilt runs off to infinity.
    pub tilt: Option<f64>,
    pub boundary: bool,
}

impl DegreeDistribution {
    /// `sum_i probs[i] (i - 1)`; 1 in the interior case.
    pub fn mean_offset(&self) -> f64 {
        self.probs.iter().map(|(&d, &p)| p * (d as f64 - 1.0)).sum()
    }
}

fn tilt_terms(allowed: &DegreeSet, t: f64) -> impl Iterator<Item = (u32, f64)> + '_ {
    allowed.iter().map(move |i| {
        let k = (i - 1) as i32;
        let log_fact: f64 = (1..=k).map(|v| (v as f64).ln()).sum();
        (i, (k as f64 * t.ln() - log_fact).exp())
    })
}

fn tilted_mean(allowed: &DegreeSet, t: f64) -> f64 {
    let (num, den) = tilt_terms(allowed, t).fold((0.0, 0.0), |(num, den), (i, w)| (num + (i - 1) as f64 * w, den + w));
    num / den
}

pub fn limiting_degree_distribution(allowed: &DegreeSet, tol: f64) -> Result<DegreeDistribution> {
    if !allowed.contains(1) {
        return Err(Error::DegenerateDistribution("allowed sets without degree 1"));
    }
    if allowed.len() < 2 {
        return Err(Error::DegenerateDistribution("P = {1}, where only the two-vertex tree exists"));
    }
    let support: Vec<u32> = allowed.iter().collect();
    if allowed.max() == Some(2) {
        return Ok(DegreeDistribution {
            support,
            probs: BTreeMap::from([(1, 0.0), (2, 1.0)]),
            tilt: None,
            boundary: true,
        });
    }
    // The tilted mean rises monotonically from 0 towards max(i - 1) > 1.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while tilted_mean(allowed, hi) < 1.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if tilted_mean(allowed, mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let weights: Vec<(u32, f64)> = tilt_terms(allowed, t).collect();
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    Ok(DegreeDistribution {
        support,
        probs: weights.into_iter().map(|(i, w)| (i, w / total)).collect(),
        tilt: Some(t),
        boundary: false,
    })
}

/// Exact `E[X_d]` over the uniform distribution on trees with all degrees in `allowed`:
/// `n (n-2)! [z^(n-2)] (z^(d-1)/(d-1)!) f^(n-1) / a_P(n)`.
pub fn constrained_expected_degree_count(allowed: &DegreeSet, d: u32, n: usize) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::InvalidVertexCount { n, reason: "constrained expectations need n >= 3" });
    }
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut powers = IncrementalPowers::for_allowed(allowed, n - 2)?;
    for _ in 0..n - 1 {
        powers.step();
    }
    let m = (n - 1).checked_sub(d as usize);
    let marked = match m {
        Some(m) if allowed.contains(d) => {
            // (n-2)!/m! * b_m / (d-1)!, with b_m = m! [z^m] f^(n-1)
            let b = powers.current().numerator(m)?.clone();
            Some(falling_product(n - 2, n - 2 - m) * b * n as u64)
        }
        _ => None,
    };
    let total = powers.step().numerator(n - 2)?.clone();
    if total.is_zero() {
        return Err(Error::EmptyFamily { n });
    }
    Ok(match marked {
        Some(num) => BigRational::new(int(num), int(factorial(d as usize - 1) * total)),
        None => BigRational::zero(),
    })
}

/// `constrained_expected_degree_count / n` as a float, for comparison with the tilt.
pub fn constrained_degree_fraction(allowed: &DegreeSet, d: u32, n: usize) -> Result<f64> {
    let e = constrained_expected_degree_count(allowed, d, n)?;
    Ok(to_f64(&(e / BigRational::from_integer((n as u64).into()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_allowed_seq, count_forbidden_seq};

    fn set(s: &str) -> DegreeSet {
        s.parse().unwrap()
    }

    #[test]
    fn cayley_growth_is_e() {
        let seq = count_forbidden_seq(&DegreeSet::empty(), 200).unwrap();
        let est = estimate_growth(&seq, 2).unwrap();
        assert!((est.c - std::f64::consts::E).abs() < 1e-6, "{est:?}");
        assert_eq!(est.n_max_used, 200);
        assert_eq!(est.c_sequence_tail.last(), Some(&est.c));
        assert!((est.exponent_estimate + 2.5).abs() < 1e-3, "{est:?}");
    }

    #[test]
    fn path_growth_is_one() {
        let seq = count_allowed_seq(&set("1,2"), 120).unwrap();
        let est = estimate_growth(&seq, 2).unwrap();
        assert!((est.c - 1.0).abs() < 1e-9);
        assert!(est.exponent_estimate.abs() < 1e-6);
    }

    #[test]
    fn even_support_growth_converges() {
        let seq = count_allowed_seq(&set("1,3"), 200).unwrap();
        let est = estimate_growth(&seq, 2).unwrap();
        assert_eq!(est.stride, 2);
        let tail = &est.c_sequence_tail;
        assert!((tail[tail.len() - 1] - tail[tail.len() - 2]).abs() < 1e-6);
        // a(n) = (n-2)! C(n, (n-2)/2) / 2^((n-2)/2), whose ratios tend to 2 = c^2
        assert!((est.c - 2f64.sqrt()).abs() < 1e-9, "{est:?}");
    }

    #[test]
    fn growth_needs_enough_nonzero_terms() {
        let seq = count_allowed_seq(&set("1,2"), 20).unwrap();
        assert!(matches!(estimate_growth(&seq, 2), Err(Error::InsufficientData { .. })));
        let zeros = vec![BigUint::zero(); 40];
        assert!(matches!(estimate_growth(&zeros, 2), Err(Error::ZeroTerm { .. })));
        let single = count_allowed_seq(&set("1"), 40).unwrap();
        assert!(matches!(estimate_growth(&single, 2), Err(Error::ZeroTerm { .. })));
    }

    #[test]
    fn growth_skips_early_zeros() {
        // a(3) = 0 when degree 2 is excluded
        let seq = count_forbidden_seq(&set("2"), 200).unwrap();
        let est = estimate_growth(&seq, 2).unwrap();
        assert_eq!(est.stride, 1);
        // saddle of e^z - z sits at t = 1, giving c = e - 1
        assert!((est.c - (std::f64::consts::E - 1.0)).abs() < 1e-6, "{est:?}");
        let seq = count_allowed_seq(&set("1,3,4"), 200).unwrap();
        assert_eq!(estimate_growth(&seq, 2).unwrap().stride, 1);
    }

    #[test]
    fn tilt_for_one_three() {
        let dist = limiting_degree_distribution(&set("1,3"), DEFAULT_TILT_TOL).unwrap();
        assert!((dist.tilt.unwrap() - 2f64.sqrt()).abs() < 1e-10);
        assert!((dist.probs[&1] - 0.5).abs() < 1e-10);
        assert!((dist.probs[&3] - 0.5).abs() < 1e-10);
        assert!(!dist.boundary);
    }

    #[test]
    fn boundary_and_degenerate_sets() {
        let dist = limiting_degree_distribution(&set("1,2"), DEFAULT_TILT_TOL).unwrap();
        assert!(dist.boundary);
        assert_eq!(dist.probs, BTreeMap::from([(1, 0.0), (2, 1.0)]));
        assert!(limiting_degree_distribution(&set("1"), DEFAULT_TILT_TOL).is_err());
        assert!(limiting_degree_distribution(&set("2,3"), DEFAULT_TILT_TOL).is_err());
    }

    #[test]
    fn tilt_normalization_and_mean() {
        for p in ["1,3", "1,2,3", "1,3,4", "1,4", "1,2,5,7", "1,3,4,6,7"] {
            let dist = limiting_degree_distribution(&set(p), DEFAULT_TILT_TOL).unwrap();
            let total: f64 = dist.probs.values().sum();
            assert!((total - 1.0).abs() < 1e-12, "{p}");
            assert!((dist.mean_offset() - 1.0).abs() < 1e-9, "{p}");
            assert!(dist.probs.values().all(|&q| (0.0..=1.0).contains(&q)));
        }
    }

    #[test]
    fn constrained_expectation_examples() {
        let e = constrained_expected_degree_count(&set("1,3"), 1, 6).unwrap();
        assert_eq!(e, BigRational::from_integer(4.into()));
        let e = constrained_expected_degree_count(&set("1,2"), 2, 10).unwrap();
        assert_eq!(e, BigRational::from_integer(8.into()));
        assert_eq!(constrained_expected_degree_count(&set("1,3"), 1, 5), Err(Error::EmptyFamily { n: 5 }));
    }

    #[test]
    fn constrained_expectations_sum_to_n() {
        for (p, n) in [("1,2,3", 9), ("1,3,4", 12), ("1,3", 10), ("1,2,5", 15)] {
            let p = set(p);
            let total: BigRational = p.iter().map(|d| constrained_expected_degree_count(&p, d, n).unwrap()).sum();
            assert_eq!(total, BigRational::from_integer(n.into()));
        }
    }
}
