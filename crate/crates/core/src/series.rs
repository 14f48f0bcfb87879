//! Truncated power series used for coefficient extraction.
//!
//! [`RationalSeries`] is the reference representation: coefficients of `z^k`
//! stored directly as exact rationals. [`EgfSeries`] stores the same kind of
//! series by its integer numerators `b_k` in `sum b_k z^k / k!`; every series
//! built from a degree set has integral numerators, and so do all their
//! products, which lets the counting fast paths run on integers only.

use std::ops::Add;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::degrees::DegreeSet;
use crate::error::{Error, Result};
use crate::numeric::{factorial, int, ratio};

/// Power series truncated after `z^order`, with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    /// Panics if `coeffs` is empty (a series always knows its constant term).
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Self { coeffs }
    }

    pub fn from_integers(coeffs: impl IntoIterator<Item = i64>) -> Self {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        Self { coeffs }
    }

    /// `sum_{i in P} z^(i-1) / (i-1)!`, dropping degrees with `i - 1 > order`.
    pub fn from_allowed(allowed: &DegreeSet, order: usize) -> Result<Self> {
        if allowed.is_empty() {
            return Err(Error::EmptyAllowedSet);
        }
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in allowed.iter() {
            let k = (i - 1) as usize;
            if k <= order {
                coeffs[k] = ratio(BigUint::one(), factorial(k));
            }
        }
        Ok(Self { coeffs })
    }

    /// `e^z - sum_{i in F} z^(i-1) / (i-1)!`.
    pub fn from_forbidden(forbidden: &DegreeSet, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigUint::one();
        for k in 0..=order {
            if k > 0 {
                fact *= k as u64;
            }
            coeffs.push(if forbidden.contains(k as u32 + 1) {
                BigRational::zero()
            } else {
                ratio(BigUint::one(), fact.clone())
            });
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`. Indices past the truncation order are unknown, not zero.
    pub fn coeff(&self, k: usize) -> Result<&BigRational> {
        self.coeffs.get(k).ok_or(Error::CoefficientOutOfRange { index: k, order: self.order() })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// `self^n` truncated to `self.order()`, by binary exponentiation.
    pub fn pow_truncated(&self, mut n: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_truncated(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_truncated(&base);
            }
        }
        result
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;

    fn add(self, other: &RationalSeries) -> RationalSeries {
        let order = self.order().min(other.order());
        RationalSeries { coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }
}

/// `sum_k b_k z^k / k!` truncated after `z^order`, with nonnegative integer `b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    numerators: Vec<BigUint>,
}

impl EgfSeries {
    pub fn one(order: usize) -> Self {
        let mut numerators = vec![BigUint::zero(); order + 1];
        numerators[0] = BigUint::one();
        Self { numerators }
    }

    /// Same series as [`RationalSeries::from_allowed`].
    pub fn from_allowed(allowed: &DegreeSet, order: usize) -> Result<Self> {
        if allowed.is_empty() {
            return Err(Error::EmptyAllowedSet);
        }
        let mut numerators = vec![BigUint::zero(); order + 1];
        for k in allowed.iter().map(|i| (i - 1) as usize).filter(|&k| k <= order) {
            numerators[k] = BigUint::one();
        }
        Ok(Self { numerators })
    }

    /// Same series as [`RationalSeries::from_forbidden`].
    pub fn from_forbidden(forbidden: &DegreeSet, order: usize) -> Self {
        Self {
            numerators: (0..=order)
                .map(|k| if forbidden.contains(k as u32 + 1) { BigUint::zero() } else { BigUint::one() })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.numerators.len() - 1
    }

    /// `k! * [z^k]`, always an integer.
    pub fn numerator(&self, k: usize) -> Result<&BigUint> {
        self.numerators.get(k).ok_or(Error::CoefficientOutOfRange { index: k, order: self.order() })
    }

    pub fn to_rational(&self) -> RationalSeries {
        let mut fact = BigUint::one();
        let coeffs = self
            .numerators
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if k > 0 {
                    fact *= k as u64;
                }
                BigRational::new(int(b.clone()), int(fact.clone()))
            })
            .collect();
        RationalSeries::new(coeffs)
    }

    /// Binomial convolution `c_k = sum_j C(k, j) a_j b_(k-j)`, truncated to the smaller order.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut numerators = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = BigUint::zero();
            let mut binom = BigUint::one();
            for j in 0..=k {
                if j > 0 {
                    binom = binom * (k + 1 - j) as u64 / j as u64;
                }
                let (a, b) = (&self.numerators[j], &other.numerators[k - j]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &binom * a * b;
                }
            }
            numerators.push(acc);
        }
        Self { numerators }
    }

    pub fn pow_truncated(&self, mut n: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_truncated(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_truncated(&base);
            }
        }
        result
    }
}

/// Successive powers `f, f^2, f^3, ...` of a sparse series
/// `f = sum_{j in offsets} z^j / j!`, each truncated to a fixed order.
///
/// Each step multiplies by `f` in `O(order * |offsets|)` big-integer operations.
#[derive(Debug, Clone)]
pub struct IncrementalPowers {
    offsets: Vec<usize>,
    // binom[k][t] = C(k, offsets[t])
    binom: Vec<Vec<BigUint>>,
    current: EgfSeries,
    exponent: u64,
}

impl IncrementalPowers {
    /// Powers of the allowed-set series; starts at `f^0`.
    pub fn for_allowed(allowed: &DegreeSet, order: usize) -> Result<Self> {
        if allowed.is_empty() {
            return Err(Error::EmptyAllowedSet);
        }
        let offsets: Vec<usize> = allowed.iter().map(|i| (i - 1) as usize).filter(|&k| k <= order).collect();
        let binom = (0..=order).map(|k| offsets.iter().map(|&j| crate::numeric::binomial(k, j)).collect()).collect();
        Ok(Self { offsets, binom, current: EgfSeries::one(order), exponent: 0 })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn current(&self) -> &EgfSeries {
        &self.current
    }

    /// Advances to the next power and returns it.
    pub fn step(&mut self) -> &EgfSeries {
        let prev = &self.current.numerators;
        let numerators = (0..prev.len())
            .map(|k| {
                let mut acc = BigUint::zero();
                for (t, &j) in self.offsets.iter().enumerate() {
                    if j > k {
                        break;
                    }
                    let g = &prev[k - j];
                    if !g.is_zero() {
                        acc += &self.binom[k][t] * g;
                    }
                }
                acc
            })
            .collect();
        self.current = EgfSeries { numerators };
        self.exponent += 1;
        &self.current
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn set(s: &str) -> DegreeSet {
        s.parse().unwrap()
    }

    #[test]
    fn allowed_series_examples() {
        let f = RationalSeries::from_allowed(&set("1"), 3).unwrap();
        assert_eq!(f, RationalSeries::from_integers([1, 0, 0, 0]));
        let f = RationalSeries::from_allowed(&set("1,3"), 4).unwrap();
        assert_eq!(f.coeffs(), &[q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(0, 1)]);
        let f = RationalSeries::from_allowed(&set("1,3,4,6,7"), 6).unwrap();
        let want = [q(1, 1), q(0, 1), q(1, 2), q(1, 6), q(0, 1), q(1, 120), q(1, 720)];
        assert_eq!(f.coeffs(), &want);
        assert_eq!(RationalSeries::from_allowed(&DegreeSet::empty(), 3), Err(Error::EmptyAllowedSet));
    }

    #[test]
    fn allowed_series_drops_high_degrees() {
        let f = RationalSeries::from_allowed(&set("1,9"), 2).unwrap();
        assert_eq!(f, RationalSeries::from_integers([1, 0, 0]));
    }

    #[test]
    fn forbidden_series_examples() {
        let f = RationalSeries::from_forbidden(&DegreeSet::empty(), 3);
        assert_eq!(f.coeffs(), &[q(1, 1), q(1, 1), q(1, 2), q(1, 6)]);
        let f = RationalSeries::from_forbidden(&set("2"), 3);
        assert_eq!(f.coeffs(), &[q(1, 1), q(0, 1), q(1, 2), q(1, 6)]);
        let f = RationalSeries::from_forbidden(&set("1,3"), 3);
        assert_eq!(f.coeffs(), &[q(0, 1), q(1, 1), q(0, 1), q(1, 6)]);
    }

    #[test]
    fn multiplication_examples() {
        let a = RationalSeries::from_integers([1, 1]);
        assert_eq!(a.mul_truncated(&a), RationalSeries::from_integers([1, 2]));
        let b = RationalSeries::new(vec![q(1, 1), q(0, 1), q(1, 2)]);
        assert_eq!(b.mul_truncated(&b), RationalSeries::from_integers([1, 0, 1]));
        assert_eq!(b.mul_truncated(&RationalSeries::one(2)), b);
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = RationalSeries::from_integers([1, 1, 1, 1]);
        let b = RationalSeries::from_integers([1, 1]);
        assert_eq!(a.mul_truncated(&b).order(), 1);
    }

    #[test]
    fn power_examples() {
        let a = RationalSeries::from_integers([1, 1, 0]);
        assert_eq!(a.pow_truncated(4), RationalSeries::from_integers([1, 4, 6]));
        // (1 + z^2/2)^4 = 1 + 2 z^2 + ...
        let f = RationalSeries::from_allowed(&set("1,3"), 2).unwrap();
        assert_eq!(f.pow_truncated(4).coeff(2).unwrap(), &q(2, 1));
        assert_eq!(f.pow_truncated(1), f);
        assert_eq!(f.pow_truncated(0), RationalSeries::one(2));
    }

    #[test]
    fn coefficient_access() {
        let a = RationalSeries::from_integers([1, 4, 6]);
        assert_eq!(a.coeff(1).unwrap(), &q(4, 1));
        let e = RationalSeries::from_forbidden(&DegreeSet::empty(), 5);
        assert_eq!(e.coeff(4).unwrap(), &q(1, 24));
        assert_eq!(a.coeff(3), Err(Error::CoefficientOutOfRange { index: 3, order: 2 }));
    }

    #[test]
    fn egf_series_matches_rational_series() {
        for s in ["1", "1,3", "1,2,5", "2,4,6"] {
            let p = set(s);
            let r = RationalSeries::from_allowed(&p, 9).unwrap();
            let e = EgfSeries::from_allowed(&p, 9).unwrap();
            assert_eq!(e.to_rational(), r);
            assert_eq!(e.pow_truncated(7).to_rational(), r.pow_truncated(7));
            let r = RationalSeries::from_forbidden(&p, 9);
            let e = EgfSeries::from_forbidden(&p, 9);
            assert_eq!(e.pow_truncated(5).to_rational(), r.pow_truncated(5));
        }
    }

    #[test]
    fn incremental_powers_match_binary_powers() {
        let p = set("1,3,4");
        let f = EgfSeries::from_allowed(&p, 12).unwrap();
        let mut inc = IncrementalPowers::for_allowed(&p, 12).unwrap();
        for n in 1..=9u64 {
            assert_eq!(inc.step(), &f.pow_truncated(n));
            assert_eq!(inc.exponent(), n);
        }
    }

    fn small_series(max_order: usize) -> impl Strategy<Value = RationalSeries> {
        (0..=max_order).prop_flat_map(|order| {
            prop::collection::vec((-5i64..=5, 1i64..=4), order + 1)
                .prop_map(|cs| RationalSeries::new(cs.into_iter().map(|(p, d)| q(p, d)).collect()))
        })
    }

    proptest! {
        #[test]
        fn power_equals_repeated_product(f in small_series(12), n in 1u64..6) {
            let mut acc = f.clone();
            for _ in 1..n {
                acc = acc.mul_truncated(&f);
            }
            prop_assert_eq!(f.pow_truncated(n), acc);
        }

        #[test]
        fn product_commutes_and_associates(f in small_series(8), g in small_series(8), h in small_series(8)) {
            prop_assert_eq!(f.mul_truncated(&g), g.mul_truncated(&f));
            prop_assert_eq!(f.mul_truncated(&g).mul_truncated(&h), f.mul_truncated(&g.mul_truncated(&h)));
        }

        #[test]
        fn forbidden_plus_removed_terms_is_exp(mask in 0u32..64, order in 0usize..10) {
            let forbidden = DegreeSet::new((1..=6).filter(|d| mask >> (d - 1) & 1 == 1)).unwrap();
            let removed = if forbidden.is_empty() {
                RationalSeries::new(vec![BigRational::zero(); order + 1])
            } else {
                RationalSeries::from_allowed(&forbidden, order).unwrap()
            };
            let lhs = &RationalSeries::from_forbidden(&forbidden, order) + &removed;
            prop_assert_eq!(lhs, RationalSeries::from_forbidden(&DegreeSet::empty(), order));
        }
    }
}
