use crate::numeric::binomial_signed;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign};

/// A numerical polynomial `p(t) = sum_i a_i * C(t+i, i)` stored by its
/// standard coefficients `(a_0, ..., a_d)`. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NumericalPolynomial {
    coeffs: Vec<BigInt>,
}

impl NumericalPolynomial {
    pub fn zero() -> Self {
        NumericalPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = NumericalPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The basis element `C(t+i, i)`.
    pub fn basis(i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); i + 1];
        coeffs[i] = BigInt::one();
        NumericalPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the `-1` convention for zero.
    pub fn degree_signed(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Leading standard coefficient (typical differential dimension).
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, s: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| a * binomial_signed(&(s + i), i as u64))
            .sum()
    }

    pub fn eval_i64(&self, s: i64) -> BigInt {
        self.eval(&BigInt::from(s))
    }

    /// `q(t) = p(t-1)`, via `C(t-1+i, i) = C(t+i, i) - C(t+i-1, i-1)`.
    pub fn shift_back(&self) -> Self {
        let d = self.coeffs.len();
        let coeffs = (0..d)
            .map(|i| match self.coeffs.get(i + 1) {
                Some(next) => &self.coeffs[i] - next,
                None => self.coeffs[i].clone(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `p(t - k)`.
    pub fn shift_back_by(&self, k: u64) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            if p.degree().unwrap_or(0) == 0 {
                break;
            }
            p = p.shift_back();
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl AddAssign<&NumericalPolynomial> for NumericalPolynomial {
    fn add_assign(&mut self, rhs: &NumericalPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Add for &NumericalPolynomial {
    type Output = NumericalPolynomial;

    fn add(self, rhs: &NumericalPolynomial) -> NumericalPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::iter::Sum for NumericalPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(NumericalPolynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Human-readable expansion, highest basis element first, e.g.
/// `C(t+2,2) + 3*C(t+1,1) - 1`.
impl fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "C(t+{i},{i})")?;
            } else {
                write!(f, "{mag}*C(t+{i},{i})")?;
            }
        }
        Ok(())
    }
}
