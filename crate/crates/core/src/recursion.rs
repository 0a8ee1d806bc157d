//! Closed-form route: the proven recursions for the ground-state generating
//! functions and counts, with big-integer coefficients.
//!
//! Nicolai chains (size `2m+1`):
//!
//! ```text
//! P_{2m+1} = (1 + z^2) P_{2m-1} + (z + 2z^2 + z^3) P_{2m-3}
//! P_3 = 1 + 2z + 2z^2 + z^3,   P_5 = 1 + 3z + 6z^2 + 6z^3 + 3z^4 + z^5
//! a_{2m+1} = 2 a_{2m-1} + 4 a_{2m-3},   a_3 = 6, a_5 = 20
//! ```
//!
//! Z2 Nicolai chains (size `n`):
//!
//! ```text
//! P_n = 2z P_{n-2} + (z + z^2) P_{n-3}
//! P_0 = 1,   P_1 = 1 + z,   P_2 = 1 + 2z + z^2
//! a_n = 2 a_{n-2} + 2 a_{n-3},   a_0 = 1, a_1 = 2, a_2 = 4
//! ```
//!
//! Counts grow like the dominant recurrence root and overflow 64 bits near
//! size 60, so everything here is big-integer.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poly::PoincarePolynomial;
use crate::Model;

fn nicolai_base(m: u32) -> PoincarePolynomial {
    match m {
        1 => PoincarePolynomial::from_dims(&[1, 2, 2, 1]),
        2 => PoincarePolynomial::from_dims(&[1, 3, 6, 6, 3, 1]),
        _ => unreachable!(),
    }
}

/// Generating function of the Nicolai chain on `2m+1` sites, `m >= 1`.
pub fn nicolai_poly(m: u32) -> Result<PoincarePolynomial> {
    if m < 1 {
        return Err(Error::Domain("nicolai recursion needs m >= 1".into()));
    }
    if m <= 2 {
        return Ok(nicolai_base(m));
    }
    let mut prev2 = nicolai_base(1);
    let mut prev = nicolai_base(2);
    for _ in 3..=m {
        let next = prev
            .mul_pattern(&[(0, 1), (2, 1)])
            .add(&prev2.mul_pattern(&[(1, 1), (2, 2), (3, 1)]));
        prev2 = prev;
        prev = next;
    }
    Ok(prev)
}

fn z2_base(n: u32) -> PoincarePolynomial {
    match n {
        0 => PoincarePolynomial::one(),
        1 => PoincarePolynomial::from_dims(&[1, 1]),
        2 => PoincarePolynomial::from_dims(&[1, 2, 1]),
        _ => unreachable!(),
    }
}

/// Generating function of the Z2 Nicolai chain on `n` sites.
pub fn z2_poly(n: u32) -> Result<PoincarePolynomial> {
    if n <= 2 {
        return Ok(z2_base(n));
    }
    let mut window = [z2_base(0), z2_base(1), z2_base(2)];
    for _ in 3..=n {
        let next = window[1]
            .mul_pattern(&[(1, 2)])
            .add(&window[0].mul_pattern(&[(1, 1), (2, 1)]));
        window = [window[1].clone(), window[2].clone(), next];
    }
    Ok(window[2].clone())
}

/// Total ground-state count of the Nicolai chain on `2m+1` sites, via the
/// count recursion directly (not through the polynomial).
pub fn nicolai_count(m: u32) -> Result<BigUint> {
    if m < 1 {
        return Err(Error::Domain("nicolai recursion needs m >= 1".into()));
    }
    let mut prev2 = BigUint::from(6u32);
    let mut prev = BigUint::from(20u32);
    if m == 1 {
        return Ok(prev2);
    }
    for _ in 3..=m {
        let next = 2u32 * &prev + 4u32 * &prev2;
        prev2 = prev;
        prev = next;
    }
    Ok(prev)
}

/// Total ground-state count of the Z2 Nicolai chain on `n` sites.
pub fn z2_count(n: u32) -> BigUint {
    let mut window = [
        BigUint::from(1u32),
        BigUint::from(2u32),
        BigUint::from(4u32),
    ];
    if n <= 2 {
        return window[n as usize].clone();
    }
    for _ in 3..=n {
        let next = 2u32 * &window[1] + 2u32 * &window[0];
        window = [window[1].clone(), window[2].clone(), next];
    }
    window[2].clone()
}

/// Memoized polynomials and counts for every size of one model up to a cap.
#[derive(Clone, Debug)]
pub struct RecursionTable {
    model: Model,
    polynomials: BTreeMap<u32, PoincarePolynomial>,
    counts: BTreeMap<u32, BigUint>,
}

impl RecursionTable {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.polynomials.keys().copied().collect()
    }

    pub fn polynomial(&self, size: u32) -> Option<&PoincarePolynomial> {
        self.polynomials.get(&size)
    }

    pub fn count(&self, size: u32) -> Option<&BigUint> {
        self.counts.get(&size)
    }
}

/// Builds the table for every size of `model` up to and including
/// `max_size`, advancing each recursion once per size (linear, memoized).
pub fn build_table(model: Model, max_size: u32) -> Result<RecursionTable> {
    let mut polynomials = BTreeMap::new();
    let mut counts = BTreeMap::new();
    match model {
        Model::Nicolai => {
            if max_size < 3 {
                return Err(Error::Domain(format!(
                    "nicolai table needs max_size >= 3, got {max_size}"
                )));
            }
            let mut poly_window = [nicolai_base(1), nicolai_base(2)];
            let mut count_window = [BigUint::from(6u32), BigUint::from(20u32)];
            for m in 1..=(max_size - 1) / 2 {
                if m >= 3 {
                    let next = poly_window[1]
                        .mul_pattern(&[(0, 1), (2, 1)])
                        .add(&poly_window[0].mul_pattern(&[(1, 1), (2, 2), (3, 1)]));
                    poly_window = [poly_window[1].clone(), next];
                    let next = 2u32 * &count_window[1] + 4u32 * &count_window[0];
                    count_window = [count_window[1].clone(), next];
                }
                let entry = if m == 1 { 0 } else { 1 };
                polynomials.insert(2 * m + 1, poly_window[entry].clone());
                counts.insert(2 * m + 1, count_window[entry].clone());
            }
        }
        Model::Z2 => {
            let mut poly_window = [z2_base(0), z2_base(1), z2_base(2)];
            let mut count_window =
                [BigUint::from(1u32), BigUint::from(2u32), BigUint::from(4u32)];
            for n in 0..=max_size {
                if n >= 3 {
                    let next = poly_window[1]
                        .mul_pattern(&[(1, 2)])
                        .add(&poly_window[0].mul_pattern(&[(1, 1), (2, 1)]));
                    poly_window =
                        [poly_window[1].clone(), poly_window[2].clone(), next];
                    let next = 2u32 * &count_window[1] + 2u32 * &count_window[0];
                    count_window =
                        [count_window[1].clone(), count_window[2].clone(), next];
                }
                let entry = (n as usize).min(2);
                polynomials.insert(n, poly_window[entry].clone());
                counts.insert(n, count_window[entry].clone());
            }
        }
    }
    Ok(RecursionTable { model, polynomials, counts })
}

/// Generating function of `model` at chain size `size`.
pub fn model_poly(model: Model, size: u32) -> Result<PoincarePolynomial> {
    match model {
        Model::Nicolai => {
            if size < 3 || size % 2 == 0 {
                return Err(Error::Domain(format!(
                    "nicolai chain size must be odd and >= 3, got {size}"
                )));
            }
            nicolai_poly((size - 1) / 2)
        }
        Model::Z2 => z2_poly(size),
    }
}

/// Ground-state count of `model` at chain size `size`.
pub fn model_count(model: Model, size: u32) -> Result<BigUint> {
    match model {
        Model::Nicolai => {
            if size < 3 || size % 2 == 0 {
                return Err(Error::Domain(format!(
                    "nicolai chain size must be odd and >= 3, got {size}"
                )));
            }
            nicolai_count((size - 1) / 2)
        }
        Model::Z2 => Ok(z2_count(size)),
    }
}
