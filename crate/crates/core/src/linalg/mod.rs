//! Exact sparse linear algebra: rank and kernel dimension over prime fields
//! and over the rationals (fraction-free), plus the two-prime agreement
//! protocol used as the fast "exact" mode at scale.

mod elim;
pub mod primes;

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Coefficient field for exact rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// GF(p). The modulus must be prime and small enough that residue
    /// products fit double-width arithmetic (p < 2^63).
    PrimeField(u64),
    /// Arbitrary-precision rationals; inputs are integer matrices, so the
    /// elimination stays fraction-free throughout.
    ExactRational,
}

impl FieldSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::PrimeField(p) => {
                if p >= 1 << 63 {
                    return Err(Error::Config(format!("modulus {p} too large")));
                }
                if !primes::is_prime(p) {
                    return Err(Error::Config(format!("modulus {p} is not prime")));
                }
                Ok(())
            }
            FieldSpec::ExactRational => Ok(()),
        }
    }
}

/// How to resolve ranks when assembling homology dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// A single field, taken at face value.
    Field(FieldSpec),
    /// Compute modulo two distinct random 31-bit primes drawn from `seed`;
    /// on disagreement recompute over the rationals. Disagreement is the
    /// signal, not an assumption: a prime can only undercount the rank.
    TwoPrime { seed: u64 },
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::TwoPrime { seed: 0x5eed_1e55_0dd5_eed5 }
    }
}

/// Outcome of a protocol-aware rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOutcome {
    pub rank: usize,
    /// Primes actually used (empty in pure rational mode).
    pub primes: Vec<u64>,
    /// True when the two primes disagreed and the rational path decided.
    pub used_rational_fallback: bool,
}

/// An immutable exact sparse matrix with integer entries.
///
/// Entries are kept in canonical column-major-then-row order with no
/// duplicates and no explicit zeros, so serializations are byte-for-byte
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: u32,
    cols: u32,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: u32, cols: u32, mut entries: Vec<(u32, u32, i64)>) -> Result<Self> {
        for &(r, c, v) in &entries {
            if r >= rows || c >= cols {
                return Err(Error::Domain(format!(
                    "entry ({r},{c}) outside a {rows}x{cols} matrix"
                )));
            }
            if v == 0 {
                return Err(Error::Domain(format!("explicit zero stored at ({r},{c})")));
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::Domain(format!(
                    "duplicate entry at ({},{})",
                    pair[0].0, pair[0].1
                )));
            }
        }
        Ok(SparseMatrix { rows, cols, entries })
    }

    pub fn zero(rows: u32, cols: u32) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: u32) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    /// Entries as (row, col, value), 0-indexed, in canonical order.
    pub fn entries(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<(u32, u32, i64)> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // Column starts of the left factor, to stream rhs columns through it.
        let left_cols = self.columns();
        let mut entries: Vec<(u32, u32, i64)> = Vec::new();
        let mut scratch: Vec<(u32, i128)> = Vec::new();
        for (c, col) in rhs.columns().iter().enumerate() {
            scratch.clear();
            for &(k, v) in col {
                for &(r, w) in &left_cols[k as usize] {
                    scratch.push((r, v as i128 * w as i128));
                }
            }
            scratch.sort_unstable_by_key(|&(r, _)| r);
            let mut i = 0;
            while i < scratch.len() {
                let r = scratch[i].0;
                let mut acc = 0i128;
                while i < scratch.len() && scratch[i].0 == r {
                    acc += scratch[i].1;
                    i += 1;
                }
                if acc != 0 {
                    let v = i64::try_from(acc).map_err(|_| {
                        Error::Arithmetic(format!("product entry at ({r},{c}) overflows i64"))
                    })?;
                    entries.push((r, c as u32, v));
                }
            }
        }
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    /// Exact entrywise sum.
    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Domain(format!(
                "cannot add {}x{} to {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + rhs.entries.len());
        let (mut i, mut j) = (0, 0);
        let key = |e: &(u32, u32, i64)| (e.1, e.0);
        while i < self.entries.len() || j < rhs.entries.len() {
            let take_left = match (self.entries.get(i), rhs.entries.get(j)) {
                (Some(a), Some(b)) => key(a) <= key(b),
                (Some(_), None) => true,
                _ => false,
            };
            if take_left && j < rhs.entries.len() && key(&self.entries[i]) == key(&rhs.entries[j])
            {
                let (r, c, a) = self.entries[i];
                let sum = a
                    .checked_add(rhs.entries[j].2)
                    .ok_or_else(|| Error::Arithmetic(format!("sum overflows at ({r},{c})")))?;
                if sum != 0 {
                    entries.push((r, c, sum));
                }
                i += 1;
                j += 1;
            } else if take_left {
                entries.push(self.entries[i]);
                i += 1;
            } else {
                entries.push(rhs.entries[j]);
                j += 1;
            }
        }
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Per-column entry lists (row, value), exploiting canonical order.
    fn columns(&self) -> Vec<Vec<(u32, i64)>> {
        let mut cols = vec![Vec::new(); self.cols as usize];
        for &(r, c, v) in &self.entries {
            cols[c as usize].push((r, v));
        }
        cols
    }

    /// Conventional triplet text form: header `rows cols nnz`, one
    /// 1-indexed `row col value` line per entry in canonical order, then a
    /// `0 0 0` terminator.
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.entries.len());
        for &(r, c, v) in &self.entries {
            let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
        }
        out.push_str("0 0 0\n");
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<SparseMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Domain("empty triplet text".into()))?;
        let dims: Vec<u64> = parse_ints(header)?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::Domain(format!("malformed header '{header}'")));
        };
        let mut entries = Vec::with_capacity(nnz as usize);
        for line in lines {
            let nums = parse_ints_signed(line)?;
            let [r, c, v] = nums[..] else {
                return Err(Error::Domain(format!("malformed entry line '{line}'")));
            };
            if (r, c, v) == (0, 0, 0) {
                break;
            }
            if r < 1 || c < 1 {
                return Err(Error::Domain(format!("entry indices must be 1-indexed: '{line}'")));
            }
            entries.push((r as u32 - 1, c as u32 - 1, v));
        }
        if entries.len() != nnz as usize {
            return Err(Error::Domain(format!(
                "header promises {nnz} entries, found {}",
                entries.len()
            )));
        }
        SparseMatrix::new(rows as u32, cols as u32, entries)
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Domain(format!("bad integer '{t}'")))
        })
        .collect()
}

fn parse_ints_signed(line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Domain(format!("bad integer '{t}'")))
        })
        .collect()
}

/// Rank of `m` over the given field.
pub fn rank(m: &SparseMatrix, field: &FieldSpec) -> Result<usize> {
    field.validate()?;
    Ok(match *field {
        FieldSpec::PrimeField(p) => elim::rank_mod_p(m.rows, m.cols, &m.entries, p),
        FieldSpec::ExactRational => elim::rank_fraction_free(m.rows, m.cols, &m.entries),
    })
}

/// Dimension of the kernel of `m` over the given field: cols - rank.
pub fn kernel_dim(m: &SparseMatrix, field: &FieldSpec) -> Result<usize> {
    Ok(m.cols as usize - rank(m, field)?)
}

/// Protocol-aware rank: single-field modes pass through; the two-prime mode
/// cross-checks two random 31-bit prime fields and falls back to exact
/// rationals when they disagree.
pub fn rank_with_mode(m: &SparseMatrix, mode: &RankMode) -> Result<RankOutcome> {
    match *mode {
        RankMode::Field(field) => Ok(RankOutcome {
            rank: rank(m, &field)?,
            primes: match field {
                FieldSpec::PrimeField(p) => vec![p],
                FieldSpec::ExactRational => vec![],
            },
            used_rational_fallback: matches!(field, FieldSpec::ExactRational),
        }),
        RankMode::TwoPrime { seed } => {
            let primes = primes::random_31bit_primes(seed, 2);
            let r1 = rank(m, &FieldSpec::PrimeField(primes[0]))?;
            let r2 = rank(m, &FieldSpec::PrimeField(primes[1]))?;
            if r1 == r2 {
                return Ok(RankOutcome { rank: r1, primes, used_rational_fallback: false });
            }
            let exact = rank(m, &FieldSpec::ExactRational)?;
            Ok(RankOutcome { rank: exact, primes, used_rational_fallback: true })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity_ranks() {
        let z = SparseMatrix::zero(5, 7);
        assert_eq!(rank(&z, &FieldSpec::PrimeField(65_537)).unwrap(), 0);
        assert_eq!(rank(&z, &FieldSpec::ExactRational).unwrap(), 0);
        assert_eq!(kernel_dim(&z, &FieldSpec::ExactRational).unwrap(), 7);

        let id = SparseMatrix::identity(3);
        assert_eq!(rank(&id, &FieldSpec::PrimeField(65_537)).unwrap(), 3);
        assert_eq!(kernel_dim(&id, &FieldSpec::ExactRational).unwrap(), 0);
    }

    #[test]
    fn nonprime_modulus_rejected() {
        let id = SparseMatrix::identity(2);
        assert!(matches!(
            rank(&id, &FieldSpec::PrimeField(65_536)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn construction_validates() {
        assert!(SparseMatrix::new(2, 2, vec![(2, 0, 1)]).is_err());
        assert!(SparseMatrix::new(2, 2, vec![(0, 0, 0)]).is_err());
        assert!(SparseMatrix::new(2, 2, vec![(0, 0, 1), (0, 0, 2)]).is_err());
    }

    #[test]
    fn canonical_entry_order_is_column_major() {
        let m = SparseMatrix::new(3, 3, vec![(2, 2, 9), (0, 1, 4), (1, 0, 5), (0, 0, 3)]).unwrap();
        assert_eq!(m.entries(), &[(0, 0, 3), (1, 0, 5), (0, 1, 4), (2, 2, 9)]);
    }

    #[test]
    fn triplet_round_trip() {
        let m = SparseMatrix::new(3, 4, vec![(0, 0, 1), (2, 1, -7), (1, 3, 2)]).unwrap();
        let text = m.to_triplet_text();
        assert_eq!(text, "3 4 3\n1 1 1\n3 2 -7\n2 4 2\n0 0 0\n");
        assert_eq!(SparseMatrix::from_triplet_text(&text).unwrap(), m);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::new(2, 3, vec![(0, 0, 1), (0, 2, 2), (1, 1, -1)]).unwrap();
        let b = SparseMatrix::new(3, 2, vec![(0, 0, 3), (2, 0, 1), (1, 1, 4)]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.entries(), &[(0, 0, 5), (1, 1, -4)]);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn two_prime_protocol_reports_primes() {
        let m = SparseMatrix::identity(4);
        let out = rank_with_mode(&m, &RankMode::TwoPrime { seed: 7 }).unwrap();
        assert_eq!(out.rank, 4);
        assert_eq!(out.primes.len(), 2);
        assert!(!out.used_rational_fallback);
        // Same seed, same primes.
        let again = rank_with_mode(&m, &RankMode::TwoPrime { seed: 7 }).unwrap();
        assert_eq!(out.primes, again.primes);
    }
}
