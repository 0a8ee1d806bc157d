//! Poincare polynomials: degree-indexed vectors of nonnegative big integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The generating function `sum_d dim H_d z^d`. Coefficient `d` counts the
/// supersymmetric ground states at fermion number `d`.
///
/// Kept in canonical form (no trailing zero coefficients) so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PoincarePolynomial {
    coeffs: Vec<BigUint>,
}

impl PoincarePolynomial {
    pub fn zero() -> Self {
        PoincarePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PoincarePolynomial { coeffs: vec![BigUint::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PoincarePolynomial { coeffs }
    }

    pub fn from_dims(dims: &[u64]) -> Self {
        Self::from_coeffs(dims.iter().map(|&d| BigUint::from(d)).collect())
    }

    /// `(1+z)^n`, the generating function of the full Fock space.
    pub fn binomial_row(n: u32) -> Self {
        let coeffs = (0..=n)
            .map(|d| num_integer::binomial(BigUint::from(n), BigUint::from(d)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigUint {
        self.coeffs.get(d).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Total ground-state count: the value at `z = 1`.
    pub fn evaluate_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Signed value at `z = -1` (the Witten-index-style alternating sum).
    pub fn evaluate_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (d, c) in self.coeffs.iter().enumerate() {
            let c = BigInt::from(c.clone());
            if d % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Whether the coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigUint::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplies by a sparse pattern `sum_j scale_j z^{shift_j}`.
    pub fn mul_pattern(&self, pattern: &[(usize, u64)]) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let top = self.coeffs.len() - 1 + pattern.iter().map(|p| p.0).max().unwrap_or(0);
        let mut coeffs = vec![BigUint::zero(); top + 1];
        for &(shift, scale) in pattern {
            for (i, c) in self.coeffs.iter().enumerate() {
                coeffs[i + shift] += c * scale;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Shifts the grading by `k` (multiplication by `z^k`). Negative `k`
    /// is allowed only when no nonzero coefficient would drop below degree 0.
    pub fn shifted(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if k >= 0 {
            let mut coeffs = vec![BigUint::zero(); k as usize];
            coeffs.extend(self.coeffs.iter().cloned());
            return Ok(Self::from_coeffs(coeffs));
        }
        let drop = (-k) as usize;
        let min = self.min_degree().unwrap_or(0);
        if drop > min {
            return Err(Error::Domain(format!(
                "shift by {k} pushes the degree-{min} term below degree 0"
            )));
        }
        Ok(Self::from_coeffs(self.coeffs[drop..].to_vec()))
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}z")?,
                _ if c.is_one() => write!(f, "z^{d}")?,
                _ => write!(f, "{c}z^{d}")?,
            }
        }
        Ok(())
    }
}
