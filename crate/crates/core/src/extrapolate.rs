//! Polynomial (Neville) extrapolation to `h = 0`.
//!
//! With nodes `h = 1/n` on consecutive `n` this is iterated Richardson
//! extrapolation; the rational version introduces no rounding at all.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Value at `h = 0` of the interpolating polynomial through `(h_i, y_i)`.
pub fn neville_exact(points: &[(BigRational, BigRational)]) -> BigRational {
    assert!(!points.is_empty(), "extrapolation needs at least one point");
    let mut p: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    let k = points.len();
    for level in 1..k {
        for i in 0..k - level {
            let (hi, hj) = (&points[i].0, &points[i + level].0);
            // P(0) from the two overlapping lower-degree interpolants
            p[i] = (hj * &p[i] - hi * &p[i + 1]) / (hj - hi);
        }
    }
    p.swap_remove(0)
}

pub fn neville(points: &[(f64, f64)]) -> f64 {
    assert!(!points.is_empty(), "extrapolation needs at least one point");
    let mut p: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let k = points.len();
    for level in 1..k {
        for i in 0..k - level {
            let (hi, hj) = (points[i].0, points[i + level].0);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

/// Exact Richardson table in `h = 1/n`: the limit of `values[i] = v(n_i)`.
///
/// Evaluated in Lagrange form, where the weight of node `i` is
/// `prod_{j != i} n_i / (n_i - n_j)`, summed over one common denominator.
pub fn richardson_in_inverse_n(ns: &[i64], values: &[BigRational]) -> BigRational {
    assert_eq!(ns.len(), values.len());
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for (i, (&ni, v)) in ns.iter().zip(values).enumerate() {
        let (mut wn, mut wd) = (BigInt::one(), BigInt::one());
        for (j, &nj) in ns.iter().enumerate() {
            if j != i {
                wn *= ni;
                wd *= ni - nj;
            }
        }
        let (tn, td) = (wn * v.numer(), wd * v.denom());
        num = num * &td + tn * &den;
        den *= td;
    }
    BigRational::new(num, den)
}
