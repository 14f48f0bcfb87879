//! Exact counts of labeled trees under a degree rule.
//!
//! A tree on `n >= 2` vertices whose degrees all lie in `P` is counted by
//! `(n-2)! [z^(n-2)] f(z)^n` with `f(z) = sum_{i in P} z^(i-1)/(i-1)!`.
//! Forbidden sets use `f(z) = e^z - sum_{i in F} z^(i-1)/(i-1)!`, evaluated
//! either through the series or through the alternating multi-index sum that
//! comes from expanding the power multinomially.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::degrees::{DegreeRule, DegreeSet};
use crate::error::{Error, Result};
use crate::numeric::{as_integer, factorial, int, pow_usize};
use crate::series::{EgfSeries, IncrementalPowers, RationalSeries};

/// Above this many usable degrees the dense binary power beats repeated sparse products.
const SPARSE_LIMIT: usize = 16;

/// Largest forbidden set handled by the multi-index sum in [`count_forbidden`].
pub const INCLUSION_EXCLUSION_LIMIT: usize = 3;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidVertexCount { n, reason: "a tree needs at least one vertex" });
    }
    Ok(())
}

/// Number of labeled trees on `n` vertices with every degree in `allowed`.
///
/// The single-vertex tree (degree 0) is counted once for every rule.
pub fn count_allowed(allowed: &DegreeSet, n: usize) -> Result<BigUint> {
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet);
    }
    check_n(n)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let order = n - 2;
    let usable = allowed.iter().filter(|&i| (i - 1) as usize <= order).count();
    if usable > SPARSE_LIMIT {
        let f = EgfSeries::from_allowed(allowed, order)?;
        return Ok(f.pow_truncated(n as u64).numerator(order)?.clone());
    }
    let mut powers = IncrementalPowers::for_allowed(allowed, order)?;
    for _ in 0..n {
        powers.step();
    }
    Ok(powers.current().numerator(order)?.clone())
}

/// `count_allowed(allowed, n)` for `n = 2..=max_n`, sharing one chain of powers.
pub fn count_allowed_seq(allowed: &DegreeSet, max_n: usize) -> Result<Vec<BigUint>> {
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet);
    }
    if max_n < 2 {
        return Err(Error::InvalidVertexCount { n: max_n, reason: "sequences start at n = 2" });
    }
    let mut powers = IncrementalPowers::for_allowed(allowed, max_n - 2)?;
    powers.step();
    let mut out = Vec::with_capacity(max_n - 1);
    for n in 2..=max_n {
        out.push(powers.step().numerator(n - 2)?.clone());
    }
    Ok(out)
}

/// Number of labeled trees on `n` vertices with no degree in `forbidden`.
pub fn count_forbidden(forbidden: &DegreeSet, n: usize) -> Result<BigUint> {
    if forbidden.len() <= INCLUSION_EXCLUSION_LIMIT {
        count_forbidden_inclusion_exclusion(forbidden, n)
    } else {
        count_forbidden_series(forbidden, n)
    }
}

pub fn count_forbidden_seq(forbidden: &DegreeSet, max_n: usize) -> Result<Vec<BigUint>> {
    if max_n < 2 {
        return Err(Error::InvalidVertexCount { n: max_n, reason: "sequences start at n = 2" });
    }
    (2..=max_n).map(|n| count_forbidden(forbidden, n)).collect()
}

/// Forbidden-set count from `(n-2)! [z^(n-2)] (e^z - sum_{i in F} z^(i-1)/(i-1)!)^n`.
pub fn count_forbidden_series(forbidden: &DegreeSet, n: usize) -> Result<BigUint> {
    check_n(n)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let f = EgfSeries::from_forbidden(forbidden, n - 2);
    Ok(f.pow_truncated(n as u64).numerator(n - 2)?.clone())
}

/// Forbidden-set count by the alternating sum over `k = (k_1..k_m)`, where
/// `k_j` vertices are forced to take the forbidden degree `r_j`:
///
/// `sum (-1)^|k| n!/((n-|k|)! prod k_j!) * (n-2)!/(E! prod (r_j-1)!^k_j) * (n-|k|)^E`
///
/// with `E = n - 2 - sum (r_j - 1) k_j >= 0` and `0^0 = 1`. Both factorial
/// ratios are multinomial coefficients, so every term is an integer.
pub fn count_forbidden_inclusion_exclusion(forbidden: &DegreeSet, n: usize) -> Result<BigUint> {
    check_n(n)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let facts: Vec<BigUint> = (0..=n)
        .scan(BigUint::one(), |acc, i| {
            if i > 0 {
                *acc *= i as u64;
            }
            Some(acc.clone())
        })
        .collect();
    let shifts: Vec<usize> = forbidden.iter().map(|r| (r - 1) as usize).filter(|&s| s <= n - 2).collect();
    let mut state =
        Multi { n, facts: &facts, shifts: &shifts, ks: Vec::with_capacity(shifts.len()), total: BigInt::zero() };
    state.descend(0, 0, 0);
    let total = state.total;
    if total.is_negative() {
        return Err(Error::Internal(format!("negative inclusion-exclusion total for {forbidden} at n = {n}")));
    }
    Ok(total.magnitude().clone())
}

struct Multi<'a> {
    n: usize,
    facts: &'a [BigUint],
    shifts: &'a [usize],
    ks: Vec<usize>,
    total: BigInt,
}

impl Multi<'_> {
    fn descend(&mut self, idx: usize, used: usize, shift_sum: usize) {
        let n = self.n;
        if idx == self.shifts.len() {
            self.add_term(used, shift_sum);
            return;
        }
        let s = self.shifts[idx];
        let max_k = (n - 2 - shift_sum).checked_div(s).map_or(n - used, |q| q.min(n - used));
        for k in 0..=max_k {
            self.ks.push(k);
            self.descend(idx + 1, used + k, shift_sum + s * k);
            self.ks.pop();
        }
    }

    fn add_term(&mut self, used: usize, shift_sum: usize) {
        let n = self.n;
        let e = n - 2 - shift_sum;
        let f = self.facts;
        let mut den_a = f[n - used].clone();
        let mut den_b = f[e].clone();
        for (&k, &s) in self.ks.iter().zip(self.shifts) {
            den_a *= &f[k];
            den_b *= num_traits::pow(f[s].clone(), k);
        }
        let (choose_a, rem_a) = f[n].div_rem(&den_a);
        let (choose_b, rem_b) = f[n - 2].div_rem(&den_b);
        debug_assert!(rem_a.is_zero() && rem_b.is_zero());
        let term = int(choose_a * choose_b * pow_usize(n - used, e));
        if used.is_multiple_of(2) {
            self.total += term;
        } else {
            self.total -= term;
        }
    }
}

/// Count through the rational reference series, for either kind of rule.
/// Used as an independent cross-check of the integer fast paths.
pub fn count_via_rational_series(rule: &DegreeRule, n: usize) -> Result<BigUint> {
    check_n(n)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let f = match rule {
        DegreeRule::Allowed(p) => RationalSeries::from_allowed(p, n - 2)?,
        DegreeRule::Forbidden(fb) => RationalSeries::from_forbidden(fb, n - 2),
    };
    let c = f.pow_truncated(n as u64).coeff(n - 2)?.clone();
    let scaled = c * BigRational::from_integer(int(factorial(n - 2)));
    let value = as_integer(&scaled).ok_or(Error::NonIntegral { what: "series coefficient extraction" })?;
    value.to_biguint().ok_or_else(|| Error::Internal("negative tree count".into()))
}

pub fn count(rule: &DegreeRule, n: usize) -> Result<BigUint> {
    match rule {
        DegreeRule::Allowed(p) => count_allowed(p, n),
        DegreeRule::Forbidden(f) => count_forbidden(f, n),
    }
}

/// Counts for `n = 2..=max_n`.
pub fn count_seq(rule: &DegreeRule, max_n: usize) -> Result<Vec<BigUint>> {
    match rule {
        DegreeRule::Allowed(p) => count_allowed_seq(p, max_n),
        DegreeRule::Forbidden(f) => count_forbidden_seq(f, max_n),
    }
}

/// Number of labeled trees whose vertex `i` has degree exactly `degrees[i]`:
/// `(n-2)! / prod (d_i - 1)!` when the degrees are positive and sum to `2n - 2`.
pub fn count_degree_sequence(degrees: &[u32]) -> BigUint {
    let n = degrees.len();
    if n < 2 || degrees.contains(&0) {
        return BigUint::zero();
    }
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    if sum != 2 * n as u64 - 2 {
        return BigUint::zero();
    }
    let den = degrees.iter().fold(BigUint::one(), |acc, &d| acc * factorial(d as usize - 1));
    factorial(n - 2) / den
}
