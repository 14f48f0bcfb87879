//! Guessing linear recurrences with polynomial coefficients.
//!
//! A candidate `(order r, degree d)` is an unknown relation
//! `sum_{j=0}^{r} p_j(n) a(n+j) = 0` with `deg p_j <= d`. Each known window of
//! `r + 1` terms gives one linear equation in the `(r+1)(d+1)` unknown
//! coefficients. Candidates are searched by increasing order and then degree.
//! A cheap rank computation modulo a prime rejects most of them; survivors get
//! an exact nullspace over the integers and must then reproduce every held-out
//! term.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::gcd_all;

/// Equations required beyond the number of unknowns before a fit is trusted.
pub const DEFAULT_MARGIN: usize = 10;
pub const DEFAULT_VERIFY_COUNT: usize = 10;

const PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessOptions {
    pub max_order: usize,
    pub max_degree: usize,
    pub verify_count: usize,
    pub margin: usize,
}

impl GuessOptions {
    pub fn new(max_order: usize, max_degree: usize) -> Self {
        Self { max_order, max_degree, verify_count: DEFAULT_VERIFY_COUNT, margin: DEFAULT_MARGIN }
    }

    pub fn verify(mut self, count: usize) -> Self {
        self.verify_count = count;
        self
    }

    /// Terms needed so that every candidate in the bounds is overdetermined.
    pub fn terms_needed(&self) -> usize {
        (self.max_order + 1) * (self.max_degree + 1) + self.margin + self.max_order + self.verify_count
    }
}

/// The guessed relation runs over `m`, where the original term index is `start + stride * m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reindex {
    pub start: i64,
    pub stride: i64,
}

/// `sum_j p_j(n) a(n+j) = 0` for every `n >= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRecurrence {
    /// `coeffs[j][e]` is the coefficient of `n^e` in `p_j`.
    coeffs: Vec<Vec<BigInt>>,
    /// First value of `n` at which the relation is asserted (term 0 of the working sequence).
    pub offset: i64,
    /// Original index of the first term of the sequence the recurrence was guessed from.
    pub first_index: i64,
    /// Set when zero terms were interleaved and the relation runs over the nonzero support.
    pub reindex: Option<Reindex>,
    pub terms_used: usize,
    pub terms_verified: usize,
}

fn eval_poly(poly: &[BigInt], n: i64) -> BigInt {
    let x = BigInt::from(n);
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

impl PRecurrence {
    /// Builds a recurrence from coefficient polynomials, normalizing content and sign.
    pub fn new(coeffs: Vec<Vec<BigInt>>, offset: i64) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Internal("a recurrence needs order at least 1".into()));
        }
        let mut rec = Self { coeffs, offset, first_index: offset, reindex: None, terms_used: 0, terms_verified: 0 };
        if rec.coeffs.last().unwrap().iter().all(Zero::is_zero) {
            return Err(Error::Internal("leading polynomial is identically zero".into()));
        }
        rec.normalize();
        Ok(rec)
    }

    fn normalize(&mut self) {
        let g = gcd_all(self.coeffs.iter().flatten());
        let lead = self.coeffs.last().unwrap().iter().rev().find(|c| !c.is_zero()).cloned().unwrap();
        let g = if lead.is_negative() { -g } else { g };
        for c in self.coeffs.iter_mut().flatten() {
            *c = &*c / &g;
        }
        let width = self.degree() + 1;
        for p in &mut self.coeffs {
            p.truncate(width);
            p.resize(width, BigInt::zero());
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest exponent with a nonzero coefficient in any `p_j`.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(|p| p.iter().rposition(|c| !c.is_zero())).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn eval(&self, j: usize, n: i64) -> BigInt {
        eval_poly(&self.coeffs[j], n)
    }

    /// `sum_j p_j(n) a(n+j)` where `terms[i]` is `a(offset + i)`.
    pub fn residual(&self, terms: &[BigInt], n: i64) -> BigInt {
        let base = (n - self.offset) as usize;
        (0..=self.order()).map(|j| self.eval(j, n) * &terms[base + j]).sum()
    }

    fn holds_on(&self, terms: &[BigInt]) -> bool {
        (0..terms.len().saturating_sub(self.order())).all(|i| self.residual(terms, self.offset + i as i64).is_zero())
    }

    /// Working (possibly re-indexed) view of a sequence that starts at `first_index`.
    fn working_terms(&self, seq: &[BigInt]) -> Vec<BigInt> {
        match self.reindex {
            None => seq.to_vec(),
            Some(Reindex { start, stride }) => {
                let skip = (start - self.first_index) as usize;
                seq.iter().skip(skip).step_by(stride as usize).cloned().collect()
            }
        }
    }

    /// Human-readable form, e.g. `(-n - 1)*a(n) + (1)*a(n+1) = 0 for n >= 2`.
    pub fn to_text(&self) -> String {
        let var = if self.reindex.is_some() { "m" } else { "n" };
        let mut terms = Vec::new();
        for (j, p) in self.coeffs.iter().enumerate() {
            if p.iter().all(Zero::is_zero) {
                continue;
            }
            let shift = if j == 0 { String::new() } else { format!("+{j}") };
            terms.push(format!("({})*a({var}{shift})", poly_text(p, var)));
        }
        let mut out = format!("{} = 0 for {var} >= {}", terms.join(" + "), self.offset);
        if let Some(Reindex { start, stride }) = self.reindex {
            out.push_str(&format!(", where a(m) is term {start} + {stride}*m"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "degree": self.degree(),
            "offset": self.offset,
            "first_index": self.first_index,
            "reindex": self.reindex.map(|r| json!({ "start": r.start, "stride": r.stride })),
            "coefficients": self.coeffs.iter().map(|p| p.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "terms_used": self.terms_used,
            "terms_verified": self.terms_verified,
        })
    }

    pub fn from_json(value: &Value) -> Option<Self> {
        let coeffs = value["coefficients"]
            .as_array()?
            .iter()
            .map(|p| p.as_array()?.iter().map(|c| c.as_str()?.parse().ok()).collect::<Option<Vec<BigInt>>>())
            .collect::<Option<Vec<_>>>()?;
        let reindex = match &value["reindex"] {
            Value::Null => None,
            r => Some(Reindex { start: r["start"].as_i64()?, stride: r["stride"].as_i64()? }),
        };
        let mut rec = Self::new(coeffs, value["offset"].as_i64()?).ok()?;
        rec.first_index = value["first_index"].as_i64()?;
        rec.reindex = reindex;
        rec.terms_used = value["terms_used"].as_u64()? as usize;
        rec.terms_verified = value["terms_verified"].as_u64()? as usize;
        Some(rec)
    }
}

impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn poly_text(p: &[BigInt], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (e, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mono = match e {
            0 => mag.to_string(),
            _ => {
                let pw = if e == 1 { var.to_string() } else { format!("{var}^{e}") };
                if mag.is_one() {
                    pw
                } else {
                    format!("{mag}*{pw}")
                }
            }
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{mono}") } else { mono });
        } else {
            parts.push(format!("{sign} {mono}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Detects zeros interleaved with period > 1 after the first nonzero term.
fn detect_support(seq: &[BigInt]) -> Option<(usize, usize)> {
    let nonzero: Vec<usize> = seq.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i).collect();
    if nonzero.len() < 2 {
        return None;
    }
    let first = nonzero[0];
    let stride = nonzero.iter().skip(1).fold(0usize, |g, &i| g.gcd(&(i - first)));
    (stride > 1).then_some((first, stride))
}

/// Searches for the smallest `(order, degree)` recurrence that annihilates
/// `seq` (term `i` has index `offset + i`), fitting on all but the last
/// `verify_count` terms and checking those exactly.
///
/// Returns `Ok(None)` when nothing within the bounds survives verification.
pub fn guess_recurrence(seq: &[BigInt], offset: i64, opts: GuessOptions) -> Result<Option<PRecurrence>> {
    if opts.max_order == 0 {
        return Err(Error::Internal("max_order must be at least 1".into()));
    }
    let (work, work_offset, reindex) = match detect_support(seq) {
        Some((first, stride)) => {
            let sub: Vec<BigInt> = seq[first..].iter().step_by(stride).cloned().collect();
            let start = offset + first as i64;
            (sub, 0, Some(Reindex { start, stride: stride as i64 }))
        }
        None => (seq.to_vec(), offset, None),
    };
    let needed = opts.terms_needed();
    if work.len() < needed {
        return Err(Error::InsufficientData { needed, available: work.len() });
    }
    let fit_len = work.len() - opts.verify_count;
    let fit = &work[..fit_len];
    let fit_mod: Vec<u64> = fit.iter().map(reduce_mod).collect();

    for order in 1..=opts.max_order {
        for degree in 0..=opts.max_degree {
            let unknowns = (order + 1) * (degree + 1);
            let rows = fit_len - order;
            debug_assert!(rows >= unknowns + opts.margin);
            if modular_rank(&fit_mod, work_offset, order, degree) == unknowns {
                continue;
            }
            let matrix: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| {
                    let n = BigInt::from(work_offset + i as i64);
                    let mut row = Vec::with_capacity(unknowns);
                    for j in 0..=order {
                        let mut pw = BigInt::one();
                        for _ in 0..=degree {
                            row.push(&pw * &fit[i + j]);
                            pw *= &n;
                        }
                    }
                    row
                })
                .collect();
            for vector in integer_nullspace(matrix, unknowns) {
                let coeffs: Vec<Vec<BigInt>> = vector.chunks(degree + 1).map(<[BigInt]>::to_vec).collect();
                if coeffs[order].iter().all(Zero::is_zero) {
                    continue;
                }
                let mut rec = PRecurrence::new(coeffs, work_offset)?;
                if rec.holds_on(&work) {
                    rec.first_index = offset;
                    rec.reindex = reindex;
                    rec.terms_used = fit_len;
                    rec.terms_verified = opts.verify_count;
                    return Ok(Some(rec));
                }
            }
        }
    }
    Ok(None)
}

fn reduce_mod(v: &BigInt) -> u64 {
    let r = v.mod_floor(&BigInt::from(PRIME));
    r.to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Rank of the candidate system modulo [`PRIME`]; a lower bound on the rank over the rationals.
fn modular_rank(terms: &[u64], offset: i64, order: usize, degree: usize) -> usize {
    let cols = (order + 1) * (degree + 1);
    let mut rows: Vec<Vec<u64>> = (0..terms.len() - order)
        .map(|i| {
            let n = (offset + i as i64).rem_euclid(PRIME as i64) as u64;
            let mut row = Vec::with_capacity(cols);
            for j in 0..=order {
                let mut pw = 1;
                for _ in 0..=degree {
                    row.push(mul_mod(pw, terms[i + j]));
                    pw = mul_mod(pw, n);
                }
            }
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], PRIME - 2);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            let f = mul_mod(row[c], inv);
            if f == 0 {
                continue;
            }
            for (cell, &p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *cell = (*cell + PRIME - mul_mod(f, p)) % PRIME;
            }
        }
        rank += 1;
        if rank == cols {
            break;
        }
    }
    rank
}

fn remove_content(row: &mut [BigInt]) {
    let g = gcd_all(row.iter());
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Integer basis of the right nullspace, one vector per free column, by
/// fraction-free Gauss-Jordan elimination with row content removal.
fn integer_nullspace(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        remove_content(&mut rows[rank]);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for k in 0..cols {
                row[k] = &row[k] * &pivot_row[c] - &factor * &pivot_row[k];
            }
            remove_content(row);
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    // Row i reads pivot_i * x_{pivots[i]} + sum_free row[i][f] x_f = 0.
    let scale = rows.iter().zip(&pivots).fold(BigInt::one(), |acc, (row, &c)| acc.lcm(&row[c]));
    free.iter()
        .map(|&f| {
            let mut x = vec![BigInt::zero(); cols];
            x[f] = scale.clone();
            for (row, &c) in rows.iter().zip(&pivots) {
                x[c] = -(&row[f] * &scale) / &row[c];
            }
            remove_content(&mut x);
            x
        })
        .collect()
}

/// Extends `prefix` (term `i` has original index `rec.first_index + i`) to
/// `total` terms by solving the relation for its highest-shift term.
pub fn extend_with_recurrence(rec: &PRecurrence, prefix: &[BigInt], total: usize) -> Result<Vec<BigInt>> {
    if total <= prefix.len() {
        return Ok(prefix[..total].to_vec());
    }
    let r = rec.order();
    let mut work = rec.working_terms(prefix);
    let work_total = match rec.reindex {
        None => total,
        Some(Reindex { start, stride }) => {
            let skip = (start - rec.first_index) as usize;
            total.saturating_sub(skip).div_ceil(stride as usize)
        }
    };
    if work.len() < r {
        return Err(Error::ShortPrefix { needed: r, got: work.len() });
    }
    while work.len() < work_total {
        let m = (work.len() - r) as i64;
        let n = rec.offset + m;
        let lead = rec.eval(r, n);
        if lead.is_zero() {
            return Err(Error::SingularPoint { index: n });
        }
        let rest: BigInt = (0..r).map(|j| rec.eval(j, n) * &work[m as usize + j]).sum();
        let (q, rem) = (-rest).div_rem(&lead);
        if !rem.is_zero() {
            return Err(Error::InexactDivision { index: n + r as i64 });
        }
        work.push(q);
    }
    Ok(match rec.reindex {
        None => work,
        Some(Reindex { start, stride }) => {
            let skip = (start - rec.first_index) as usize;
            let mut out = vec![BigInt::zero(); total];
            out[..prefix.len()].clone_from_slice(prefix);
            for (m, v) in work.into_iter().enumerate() {
                let idx = skip + m * stride as usize;
                if idx < total {
                    out[idx] = v;
                }
            }
            out
        }
    })
}
