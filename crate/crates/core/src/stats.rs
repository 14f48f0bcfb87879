//! Degree statistics of uniform random labeled trees.
//!
//! `X_d` counts the vertices of degree `d`. Marking degree-`d` vertices with
//! `g` gives the probability generating function
//! `(n-2)!/n^(n-2) [z^(n-2)] (e^z + (g-1) z^(d-1)/(d-1)!)^n`, whose Taylor
//! coefficients in `(g-1)` are the binomial moments `E[C(X_d, j)]`. They have a
//! closed form, and every other moment here is an exact linear combination of
//! them (Stirling numbers of the second kind, then a binomial shift to the mean).

use std::collections::BTreeMap;
use std::f64::consts::E;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extrapolate::neville;
use crate::numeric::{
    binomial, factorial, falling_product, int, pow_usize, rational_string, signed_sqrt, stirling2_table, to_f64,
};

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidVertexCount { n, reason: "degree statistics need n >= 2" });
    }
    Ok(())
}

/// Numerator of `E[C(X_d1, j1) C(X_d2, j2)]` over `n^(n-2) (d1-1)!^j1 (d2-1)!^j2`:
/// `(n-2)!/E! * n!/(j1! j2! (n-j1-j2)!) * (n-j1-j2)^E` with `E = n-2-(d1-1)j1-(d2-1)j2`.
fn binomial_numerator(d1: u32, j1: usize, d2: u32, j2: usize, n: usize) -> BigUint {
    let shift = (d1 as usize - 1) * j1 + (d2 as usize - 1) * j2;
    if j1 + j2 > n || shift > n - 2 {
        return BigUint::zero();
    }
    let rest = n - j1 - j2;
    falling_product(n - 2, shift) * binomial(n, j1) * binomial(n - j1, j2) * pow_usize(rest, n - 2 - shift)
}

/// `E[C(X_d, j)] = (n-2)!/n^(n-2) * C(n,j)/(d-1)!^j * (n-j)^E / E!` with
/// `E = n - 2 - (d-1) j`; zero when `E < 0`.
pub fn binomial_moment(d: u32, j: usize, n: usize) -> Result<BigRational> {
    check_n(n)?;
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let den = pow_usize(n, n - 2) * num_traits::pow(factorial(d as usize - 1), j);
    Ok(BigRational::new(int(binomial_numerator(d, j, d, 0, n)), int(den)))
}

/// `E[C(X_d1, j1) C(X_d2, j2)]` for distinct degrees.
pub fn mixed_binomial_moment(d1: u32, j1: usize, d2: u32, j2: usize, n: usize) -> Result<BigRational> {
    check_pair(d1, d2, n)?;
    let den = pow_usize(n, n - 2)
        * num_traits::pow(factorial(d1 as usize - 1), j1)
        * num_traits::pow(factorial(d2 as usize - 1), j2);
    Ok(BigRational::new(int(binomial_numerator(d1, j1, d2, j2, n)), int(den)))
}

fn check_pair(d1: u32, d2: u32, n: usize) -> Result<()> {
    check_n(n)?;
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if d1 == d2 {
        return Err(Error::SameDegree(d1));
    }
    Ok(())
}

/// `sign(num) sqrt(num^2 / den)` for `den > 0`, without reducing the fraction.
fn signed_root_ratio(num: &BigInt, den: &BigInt) -> f64 {
    let q = BigRational::new_raw(num * num, den.clone());
    let mag = to_f64(&q).sqrt();
    if num.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact moments of one `X_d` at fixed `n`, up to a fixed order.
///
/// Every binomial moment shares the denominator `D = n^(n-2) (d-1)!^max_order`,
/// so all work happens on integer numerators and fractions are reduced only
/// when a moment is returned.
#[derive(Debug, Clone)]
pub struct DegreeMoments {
    pub d: u32,
    pub n: usize,
    denom: BigInt,
    binomial: Vec<BigInt>,
    raw: Vec<BigInt>,
}

impl DegreeMoments {
    pub fn new(d: u32, n: usize, max_order: usize) -> Result<Self> {
        check_n(n)?;
        if d == 0 {
            return Err(Error::InvalidDegree(0));
        }
        let fact = factorial(d as usize - 1);
        let denom = int(pow_usize(n, n - 2) * num_traits::pow(fact.clone(), max_order));
        let binomial: Vec<BigInt> = (0..=max_order)
            .map(|j| int(binomial_numerator(d, j, d, 0, n) * num_traits::pow(fact.clone(), max_order - j)))
            .collect();
        let stirling = stirling2_table(max_order);
        let raw = (0..=max_order)
            .map(|k| (0..=k).map(|j| int(&stirling[k][j] * factorial(j)) * &binomial[j]).sum())
            .collect();
        Ok(Self { d, n, denom, binomial, raw })
    }

    pub fn max_order(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn binomial(&self, j: usize) -> BigRational {
        BigRational::new(self.binomial[j].clone(), self.denom.clone())
    }

    pub fn raw(&self, k: usize) -> BigRational {
        BigRational::new(self.raw[k].clone(), self.denom.clone())
    }

    pub fn mean(&self) -> BigRational {
        self.raw(1)
    }

    /// Numerator of `mu_k` over `D^k`.
    fn central_numerator(&self, k: usize) -> BigInt {
        let neg_mean = -&self.raw[1];
        let mut acc = num_traits::pow(neg_mean.clone(), k);
        let mut scale = BigInt::one();
        for i in 1..=k {
            acc += int(binomial(k, i)) * &self.raw[i] * num_traits::pow(neg_mean.clone(), k - i) * &scale;
            scale *= &self.denom;
        }
        acc
    }

    pub fn central(&self, k: usize) -> BigRational {
        BigRational::new(self.central_numerator(k), num_traits::pow(self.denom.clone(), k))
    }

    pub fn variance(&self) -> BigRational {
        self.central(2)
    }

    /// `mu_k / sigma^k`, or `None` when the variance vanishes.
    pub fn standardized(&self, k: usize) -> Option<f64> {
        let var = self.central_numerator(2);
        (!var.is_zero()).then(|| signed_root_ratio(&self.central_numerator(k), &num_traits::pow(var, k)))
    }
}

pub fn raw_moment(d: u32, k: usize, n: usize) -> Result<BigRational> {
    Ok(DegreeMoments::new(d, n, k)?.raw(k))
}

pub fn central_moment(d: u32, k: usize, n: usize) -> Result<BigRational> {
    Ok(DegreeMoments::new(d, n, k.max(1))?.central(k))
}

pub fn expectation(d: u32, n: usize) -> Result<BigRational> {
    binomial_moment(d, 1, n)
}

pub fn variance(d: u32, n: usize) -> Result<BigRational> {
    central_moment(d, 2, n)
}

/// Exact joint moments of `(X_d1, X_d2)` at fixed `n`, kept as numerators over
/// the common denominator `D = n^(n-2) (d1-1)!^max1 (d2-1)!^max2`.
#[derive(Debug, Clone)]
pub struct JointMoments {
    pub d1: u32,
    pub d2: u32,
    pub n: usize,
    denom: BigInt,
    /// raw[a][b] = D E[X_d1^a X_d2^b]
    raw: Vec<Vec<BigInt>>,
}

impl JointMoments {
    pub fn new(d1: u32, d2: u32, n: usize, max1: usize, max2: usize) -> Result<Self> {
        check_pair(d1, d2, n)?;
        let (max1, max2) = (max1.max(1), max2.max(1));
        let (f1, f2) = (factorial(d1 as usize - 1), factorial(d2 as usize - 1));
        let denom = int(pow_usize(n, n - 2) * num_traits::pow(f1.clone(), max1) * num_traits::pow(f2.clone(), max2));
        let mut binom = vec![vec![BigInt::zero(); max2 + 1]; max1 + 1];
        for (j1, row) in binom.iter_mut().enumerate() {
            for (j2, cell) in row.iter_mut().enumerate() {
                let scale = num_traits::pow(f1.clone(), max1 - j1) * num_traits::pow(f2.clone(), max2 - j2);
                *cell = int(binomial_numerator(d1, j1, d2, j2, n) * scale);
            }
        }
        let stirling = stirling2_table(max1.max(max2));
        let falling = |k: usize, j: usize| int(&stirling[k][j] * factorial(j));
        let mut raw = vec![vec![BigInt::zero(); max2 + 1]; max1 + 1];
        for (a, row) in raw.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for (i, brow) in binom.iter().enumerate().take(a + 1) {
                    for (j, bij) in brow.iter().enumerate().take(b + 1) {
                        if !bij.is_zero() {
                            acc += falling(a, i) * falling(b, j) * bij;
                        }
                    }
                }
                *cell = acc;
            }
        }
        Ok(Self { d1, d2, n, denom, raw })
    }

    pub fn raw(&self, a: usize, b: usize) -> BigRational {
        BigRational::new(self.raw[a][b].clone(), self.denom.clone())
    }

    /// Numerator of `mu_{k1,k2}` over `D^(k1+k2)`.
    fn central_numerator(&self, k1: usize, k2: usize) -> BigInt {
        let m1 = -&self.raw[1][0];
        let m2 = -&self.raw[0][1];
        let powers: Vec<BigInt> = (0..k1 + k2)
            .scan(BigInt::one(), |p, _| {
                let cur = p.clone();
                *p *= &self.denom;
                Some(cur)
            })
            .collect();
        let mut acc = BigInt::zero();
        for a in 0..=k1 {
            for b in 0..=k2 {
                let mut term = int(binomial(k1, a) * binomial(k2, b))
                    * num_traits::pow(m1.clone(), k1 - a)
                    * num_traits::pow(m2.clone(), k2 - b);
                if a + b > 0 {
                    term *= &self.raw[a][b] * &powers[a + b - 1];
                }
                acc += term;
            }
        }
        acc
    }

    pub fn central(&self, k1: usize, k2: usize) -> BigRational {
        BigRational::new(self.central_numerator(k1, k2), num_traits::pow(self.denom.clone(), k1 + k2))
    }

    pub fn covariance(&self) -> BigRational {
        self.central(1, 1)
    }

    /// `mu_{k1,k2} / (sigma1^k1 sigma2^k2)`, or `None` when a variance vanishes.
    pub fn scaled(&self, k1: usize, k2: usize) -> Option<f64> {
        let (v1, v2) = (self.central_numerator(2, 0), self.central_numerator(0, 2));
        if v1.is_zero() || v2.is_zero() {
            return None;
        }
        let den = num_traits::pow(v1, k1) * num_traits::pow(v2, k2);
        Some(signed_root_ratio(&self.central_numerator(k1, k2), &den))
    }
}

pub fn mixed_central_moment(d1: u32, d2: u32, k1: usize, k2: usize, n: usize) -> Result<BigRational> {
    Ok(JointMoments::new(d1, d2, n, k1, k2)?.central(k1, k2))
}

pub fn covariance(d1: u32, d2: u32, n: usize) -> Result<BigRational> {
    mixed_central_moment(d1, d2, 1, 1, n)
}

/// Exact correlation squared with its sign: `sign(Cov) Cov^2 / (Var1 Var2)`.
pub fn signed_correlation_squared(d1: u32, d2: u32, n: usize) -> Result<BigRational> {
    let joint = JointMoments::new(d1, d2, n, 2, 2)?;
    let cov = joint.central_numerator(1, 1);
    let den = joint.central_numerator(2, 0) * joint.central_numerator(0, 2);
    if den.is_zero() {
        return Err(Error::DegenerateDistribution("correlation with a constant degree count"));
    }
    let sq = BigRational::new(&cov * &cov, den);
    Ok(if cov.is_negative() { -sq } else { sq })
}

pub fn correlation(d1: u32, d2: u32, n: usize) -> Result<f64> {
    Ok(signed_sqrt(&signed_correlation_squared(d1, d2, n)?))
}

fn fact_f64(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Limit of `E[X_d] / n`: `e^-1 / (d-1)!`.
pub fn asymptotic_expectation_coeff(d: u32) -> f64 {
    (-1f64).exp() / fact_f64(d - 1)
}

/// Limit of `Var(X_d) / n`: `e^-1/(d-1)! - (d^2 - 4d + 5) e^-2 / (d-1)!^2`.
pub fn asymptotic_variance_coeff(d: u32) -> f64 {
    let f = fact_f64(d - 1);
    let b = (d * d + 5) as f64 - 4.0 * d as f64;
    (-1f64).exp() / f - b * (-2f64).exp() / (f * f)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceSlope {
    pub value: f64,
    /// False when the smaller degree is 1; the closed form is stated for `1 < d1 < d2`.
    pub within_stated_range: bool,
}

/// Limit of `Cov(X_d1, X_d2) / n`: `(2 d1 + 2 d2 - d1 d2 - 5) / ((d1-1)! (d2-1)! e^2)`.
pub fn asymptotic_covariance_coeff(d1: u32, d2: u32) -> Result<CovarianceSlope> {
    if d1 == d2 {
        return Err(Error::SameDegree(d1));
    }
    let (a, b) = (d1.min(d2), d1.max(d2));
    let num = 2.0 * (a + b) as f64 - (a * b) as f64 - 5.0;
    Ok(CovarianceSlope { value: num / (fact_f64(a - 1) * fact_f64(b - 1) * E * E), within_stated_range: a > 1 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationLimit {
    /// Covariance slope over the geometric mean of the variance slopes.
    pub rho: f64,
    /// The closed form with denominator `sqrt(prod (sqrt((d-1)!) - (d^2-4d+5)/e))`,
    /// evaluated for comparison; NaN when the radicand is negative.
    pub printed_form: f64,
    pub within_stated_range: bool,
}

pub fn limiting_correlation(d1: u32, d2: u32) -> Result<CorrelationLimit> {
    let cov = asymptotic_covariance_coeff(d1, d2)?;
    let (v1, v2) = (asymptotic_variance_coeff(d1), asymptotic_variance_coeff(d2));
    if v1 <= 0.0 || v2 <= 0.0 {
        return Err(Error::Internal(format!("nonpositive variance slope for degrees {d1}, {d2}")));
    }
    let (a, b) = (d1.min(d2), d1.max(d2));
    let num = 2.0 * (a + b) as f64 - (a * b) as f64 - 5.0;
    let factor = |d: u32| fact_f64(d - 1).sqrt() - (d * d + 5 - 4 * d) as f64 / E;
    Ok(CorrelationLimit {
        rho: cov.value / (v1 * v2).sqrt(),
        printed_form: num / (factor(a) * factor(b)).sqrt(),
        within_stated_range: cov.within_stated_range,
    })
}

/// `E[Z^k]` for a standard normal `Z`.
pub fn normal_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        (1..k).step_by(2).map(|v| v as f64).product()
    }
}

/// `E[Z1^a Z2^b]` for a standard bivariate normal with correlation `rho`.
pub fn bivariate_normal_moment(a: usize, b: usize, rho: f64) -> f64 {
    if a == 0 {
        return normal_moment(b);
    }
    if b == 0 {
        return normal_moment(a);
    }
    let mut acc = b as f64 * rho * bivariate_normal_moment(a - 1, b - 1, rho);
    if a >= 2 {
        acc += (a - 1) as f64 * bivariate_normal_moment(a - 2, b, rho);
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityRow {
    pub n: usize,
    pub variance: f64,
    /// k -> mu_k / sigma^k
    pub standardized: BTreeMap<usize, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityReport {
    pub d: u32,
    pub rows: Vec<NormalityRow>,
    /// Values of n skipped because the variance vanished.
    pub degenerate: Vec<usize>,
    /// k -> limit extrapolated in `h = n^(-1/2)` over all usable rows.
    pub extrapolated: BTreeMap<usize, f64>,
    pub normal: BTreeMap<usize, f64>,
}

pub const DIAGNOSTIC_ORDERS: std::ops::RangeInclusive<usize> = 3..=6;

fn check_n_list(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidVertexCount { n: 0, reason: "need at least one n" });
    }
    if let Some(&n) = n_list.iter().find(|&&n| n < 4) {
        return Err(Error::InvalidVertexCount { n, reason: "normality diagnostics need n >= 4" });
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidVertexCount { n: n_list[0], reason: "n list must be increasing" });
    }
    Ok(())
}

/// Extrapolates `(n, value)` pairs to `n -> infinity` in the variable `n^(-1/2)`.
pub fn extrapolate_sqrt(points: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(n, v)| (1.0 / (n as f64).sqrt(), v)).collect();
    neville(&pts)
}

pub fn normality_diagnostics(d: u32, n_list: &[usize]) -> Result<NormalityReport> {
    check_n_list(n_list)?;
    let mut rows = Vec::new();
    let mut degenerate = Vec::new();
    for &n in n_list {
        let m = DegreeMoments::new(d, n, *DIAGNOSTIC_ORDERS.end())?;
        if m.standardized(2).is_none() {
            degenerate.push(n);
            continue;
        }
        let standardized = DIAGNOSTIC_ORDERS.map(|k| (k, m.standardized(k).unwrap())).collect();
        rows.push(NormalityRow { n, variance: to_f64(&m.variance()), standardized });
    }
    let extrapolated = if rows.is_empty() {
        BTreeMap::new()
    } else {
        DIAGNOSTIC_ORDERS
            .map(|k| (k, extrapolate_sqrt(&rows.iter().map(|r| (r.n, r.standardized[&k])).collect::<Vec<_>>())))
            .collect()
    };
    Ok(NormalityReport {
        d,
        rows,
        degenerate,
        extrapolated,
        normal: DIAGNOSTIC_ORDERS.map(|k| (k, normal_moment(k))).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointNormalityRow {
    pub n: usize,
    /// (k1, k2) -> mu_{k1,k2} / (sigma1^k1 sigma2^k2)
    pub scaled: BTreeMap<(usize, usize), f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointNormalityReport {
    pub d1: u32,
    pub d2: u32,
    pub rows: Vec<JointNormalityRow>,
    pub degenerate: Vec<usize>,
    pub extrapolated: BTreeMap<(usize, usize), f64>,
    pub limit: CorrelationLimit,
    /// Bivariate-normal values at the limiting correlation.
    pub predicted: BTreeMap<(usize, usize), f64>,
}

/// Scaled mixed central moments, normalized by the finite-`n` standard deviations.
/// Central moments of total order `k` grow like `n^(k/2)`, and this scaling is
/// what makes them converge.
pub fn joint_normality_diagnostics(
    d1: u32,
    d2: u32,
    n_list: &[usize],
    orders: &[(usize, usize)],
) -> Result<JointNormalityReport> {
    check_n_list(n_list)?;
    let limit = limiting_correlation(d1, d2)?;
    let max1 = orders.iter().map(|o| o.0).max().unwrap_or(1).max(2);
    let max2 = orders.iter().map(|o| o.1).max().unwrap_or(1).max(2);
    let mut rows = Vec::new();
    let mut degenerate = Vec::new();
    for &n in n_list {
        let joint = JointMoments::new(d1, d2, n, max1, max2)?;
        if joint.scaled(0, 0).is_none() {
            degenerate.push(n);
            continue;
        }
        let scaled_moments = orders.iter().map(|&(a, b)| ((a, b), joint.scaled(a, b).unwrap())).collect();
        rows.push(JointNormalityRow { n, scaled: scaled_moments });
    }
    let extrapolated = if rows.is_empty() {
        BTreeMap::new()
    } else {
        orders
            .iter()
            .map(|&o| (o, extrapolate_sqrt(&rows.iter().map(|r| (r.n, r.scaled[&o])).collect::<Vec<_>>())))
            .collect()
    };
    let predicted = orders.iter().map(|&(a, b)| ((a, b), bivariate_normal_moment(a, b, limit.rho))).collect();
    Ok(JointNormalityReport { d1, d2, rows, degenerate, extrapolated, limit, predicted })
}

/// Exact moments of one variable or a pair, with float renditions and the
/// relevant asymptotic slope constants.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub degrees: Vec<u32>,
    pub n: usize,
    pub exact: BTreeMap<String, BigRational>,
    pub floats: BTreeMap<String, f64>,
    pub asymptotic_slopes: BTreeMap<String, f64>,
}

impl MomentReport {
    /// Binomial, raw and central moments of `X_d` up to order `upto`.
    pub fn single(d: u32, n: usize, upto: usize) -> Result<Self> {
        let m = DegreeMoments::new(d, n, upto.max(2))?;
        let mut exact = BTreeMap::new();
        for k in 0..=upto {
            exact.insert(format!("binomial_{k}"), m.binomial(k));
            if k >= 1 {
                exact.insert(format!("raw_{k}"), m.raw(k));
                exact.insert(format!("central_{k}"), m.central(k));
            }
        }
        exact.insert("mean".into(), m.mean());
        exact.insert("variance".into(), m.variance());
        let floats = exact.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect();
        let asymptotic_slopes = BTreeMap::from([
            ("expectation".to_string(), asymptotic_expectation_coeff(d)),
            ("variance".to_string(), asymptotic_variance_coeff(d)),
        ]);
        Ok(Self { degrees: vec![d], n, exact, floats, asymptotic_slopes })
    }

    /// Mixed central moments `mu_{a,b}` for `a <= k1`, `b <= k2`, plus means, variances and correlation.
    pub fn mixed(d1: u32, d2: u32, n: usize, k1: usize, k2: usize) -> Result<Self> {
        let joint = JointMoments::new(d1, d2, n, k1.max(2), k2.max(2))?;
        let mut exact = BTreeMap::new();
        for a in 0..=k1 {
            for b in 0..=k2 {
                if a + b > 0 {
                    exact.insert(format!("mixed_central_{a}_{b}"), joint.central(a, b));
                }
            }
        }
        exact.insert("mean_1".into(), joint.raw(1, 0));
        exact.insert("mean_2".into(), joint.raw(0, 1));
        exact.insert("variance_1".into(), joint.central(2, 0));
        exact.insert("variance_2".into(), joint.central(0, 2));
        exact.insert("covariance".into(), joint.covariance());
        let mut floats: BTreeMap<String, f64> = exact.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect();
        if let Some(rho) = joint.scaled(1, 1) {
            floats.insert("correlation".into(), rho);
        }
        let cov = asymptotic_covariance_coeff(d1, d2)?;
        let limit = limiting_correlation(d1, d2)?;
        let mut asymptotic_slopes = BTreeMap::from([
            ("covariance".to_string(), cov.value),
            ("variance_1".to_string(), asymptotic_variance_coeff(d1)),
            ("variance_2".to_string(), asymptotic_variance_coeff(d2)),
            ("limiting_correlation".to_string(), limit.rho),
        ]);
        if limit.printed_form.is_finite() {
            asymptotic_slopes.insert("printed_correlation_form".into(), limit.printed_form);
        }
        Ok(Self { degrees: vec![d1, d2], n, exact, floats, asymptotic_slopes })
    }

    /// Exact values become `"p/q"` strings; floats stay IEEE doubles.
    pub fn to_json(&self) -> Value {
        let exact: Map<String, Value> =
            self.exact.iter().map(|(k, v)| (k.clone(), Value::String(rational_string(v)))).collect();
        let floats: Map<String, Value> = self.floats.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let slopes: Map<String, Value> = self.asymptotic_slopes.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({
            "degrees": self.degrees,
            "n": self.n,
            "exact": exact,
            "floats": floats,
            "asymptotic_slopes": slopes,
        })
    }
}
