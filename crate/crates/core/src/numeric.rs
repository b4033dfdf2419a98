//! Exact binomial arithmetic, d-binomial representations and the Macaulay
//! bracket `a^<d>`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("the d-binomial representation is only defined for a >= 1")]
    ZeroRepresentation,
    #[error("degree d must be at least 1")]
    ZeroDegree,
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(n-k+i-1, i-1) here, so the division is exact.
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(n, k)` for an arbitrary-precision top argument and a small bottom one.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    if *n < BigUint::from(k) {
        return BigUint::zero();
    }
    let base = n - k;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= &base + i;
        acc /= i;
    }
    acc
}

/// Generalized binomial `C(x, k) = x(x-1)...(x-k+1)/k!` for any integer `x`.
pub fn binomial_signed(x: &BigInt, k: u64) -> BigInt {
    if !x.is_negative() {
        return BigInt::from(binomial_big(x.magnitude(), k));
    }
    // C(-y, k) = (-1)^k C(y+k-1, k)
    let y = x.magnitude();
    let v = BigInt::from(binomial_big(&(y + k - 1u32), k));
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The unique expansion `a = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_j, j)`
/// with `k_d > k_{d-1} > ... > k_j >= j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DBinomialRep {
    d: u64,
    /// `(i, k_i)` pairs, `i` running from `d` down to `j`.
    terms: Vec<(u64, BigUint)>,
}

impl DBinomialRep {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn terms(&self) -> &[(u64, BigUint)] {
        &self.terms
    }

    /// Sum of the terms; equals the represented integer.
    pub fn value(&self) -> BigUint {
        self.terms.iter().map(|(i, k)| binomial_big(k, *i)).sum()
    }
}

/// Largest `k` with `C(k, i) <= a`, assuming `a >= 1` so that `k >= i`.
fn largest_top(a: &BigUint, i: u64) -> BigUint {
    let mut lo = BigUint::from(i);
    let mut step = BigUint::one();
    // gallop until C(lo + step, i) > a
    while binomial_big(&(&lo + &step), i) <= *a {
        lo += &step;
        step <<= 1;
    }
    // invariant: C(lo, i) <= a < C(lo + step, i)
    let mut hi = &lo + &step;
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if binomial_big(&mid, i) <= *a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn d_binomial_rep(a: &BigUint, d: u64) -> Result<DBinomialRep, NumericError> {
    if d == 0 {
        return Err(NumericError::ZeroDegree);
    }
    if a.is_zero() {
        return Err(NumericError::ZeroRepresentation);
    }
    let mut rest = a.clone();
    let mut terms = Vec::new();
    let mut i = d;
    while !rest.is_zero() {
        debug_assert!(i >= 1, "greedy expansion ran past index 1");
        let k = largest_top(&rest, i);
        rest -= binomial_big(&k, i);
        terms.push((i, k));
        i -= 1;
    }
    Ok(DBinomialRep { d, terms })
}

/// Macaulay's function `a^<d>`; `0^<d> = 0`.
pub fn macaulay_bracket(a: &BigUint, d: u64) -> Result<BigUint, NumericError> {
    if d == 0 {
        return Err(NumericError::ZeroDegree);
    }
    if a.is_zero() {
        return Ok(BigUint::zero());
    }
    let rep = d_binomial_rep(a, d)?;
    Ok(rep
        .terms
        .iter()
        .map(|(i, k)| binomial_big(&(k + 1u32), i + 1))
        .sum())
}

/// Convenience wrapper for machine-size arguments.
pub fn bracket_u64(a: u64, d: u64) -> BigUint {
    macaulay_bracket(&BigUint::from(a), d.max(1)).expect("d >= 1")
}
