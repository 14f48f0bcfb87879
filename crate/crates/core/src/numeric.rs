//! Small exact-arithmetic helpers shared across modules.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    falling_product(n, n)
}

/// `top * (top-1) * ... * (top-len+1)`; the empty product is 1.
pub fn falling_product(top: usize, len: usize) -> BigUint {
    debug_assert!(len <= top || top == 0 && len == 0);
    let mut acc = BigUint::one();
    for v in (top + 1 - len..=top).rev() {
        acc *= v as u64;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow_usize(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

pub fn int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(int(num), int(den))
}

/// Converts an exact rational to the nearest `f64`.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `sign(q) * sqrt(|q|)` evaluated in floating point at the last step.
pub fn signed_sqrt(q: &BigRational) -> f64 {
    let mag = to_f64(&q.abs()).sqrt();
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Canonical text for an exact rational: `"p/q"`, or `"p"` when integral.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Returns the integer value of `q`, or `None` if it has a nontrivial denominator.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| if v.is_zero() { g } else { g.gcd(v) })
}

/// Stirling numbers of the second kind, rows `0..=max_k`, by the triangular recurrence.
pub fn stirling2_table(max_k: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_k + 1);
    rows.push(vec![BigUint::one()]);
    for k in 1..=max_k {
        let prev = &rows[k - 1];
        let mut row = vec![BigUint::zero(); k + 1];
        for j in 1..=k {
            let carry = if j < k { prev[j].clone() * j as u64 } else { BigUint::zero() };
            row[j] = carry + &prev[j - 1];
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(pow_usize(0, 0), BigUint::one());
        assert_eq!(falling_product(7, 3), BigUint::from(210u32));
    }

    #[test]
    fn stirling_rows() {
        let s = stirling2_table(5);
        let row4: Vec<u32> = s[4].iter().map(|v| v.to_u32().unwrap()).collect();
        assert_eq!(row4, [0, 1, 7, 6, 1]);
        assert_eq!(s[5][2], BigUint::from(15u32));
    }

    #[test]
    fn rational_text_round_trip() {
        let q = BigRational::new((-3).into(), 16.into());
        assert_eq!(rational_string(&q), "-3/16");
        assert_eq!(parse_rational("-3/16"), Some(q));
        assert_eq!(parse_rational("125").unwrap().to_integer(), 125.into());
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn signed_sqrt_keeps_sign() {
        let q = BigRational::new((-9).into(), 4.into());
        assert_eq!(signed_sqrt(&q), -1.5);
    }
}
