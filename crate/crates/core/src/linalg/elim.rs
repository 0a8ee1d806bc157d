//! Sparse elimination engines behind `rank`: one over GF(p), one
//! fraction-free over the integers.
//!
//! Both run column-oriented Gaussian elimination with Markowitz-style
//! pivoting: each step picks the entry minimizing (row count - 1) *
//! (col count - 1) among the sparsest live column and the sparsest live row,
//! which keeps fill-in low on the extremely sparse differential matrices this
//! crate produces. Rows and columns that become empty drop out; every pivot
//! contributes 1 to the rank.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::primes::powmod;

/// Column-major values plus the row-index and count-ordered pivot sets.
struct Work<V> {
    cols: Vec<BTreeMap<u32, V>>,
    rows: Vec<BTreeSet<u32>>,
    live_cols: BTreeSet<(u32, u32)>,
    live_rows: BTreeSet<(u32, u32)>,
}

impl<V> Work<V> {
    fn new(rows: u32, cols: u32) -> Self {
        Work {
            cols: (0..cols).map(|_| BTreeMap::new()).collect(),
            rows: (0..rows).map(|_| BTreeSet::new()).collect(),
            live_cols: BTreeSet::new(),
            live_rows: BTreeSet::new(),
        }
    }

    /// Bulk insert during construction; call `index()` once afterwards.
    fn seed(&mut self, r: u32, c: u32, v: V) {
        self.cols[c as usize].insert(r, v);
        self.rows[r as usize].insert(c);
    }

    fn index(&mut self) {
        for (c, col) in self.cols.iter().enumerate() {
            if !col.is_empty() {
                self.live_cols.insert((col.len() as u32, c as u32));
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            if !row.is_empty() {
                self.live_rows.insert((row.len() as u32, r as u32));
            }
        }
    }

    /// Inserts, replaces or removes one entry, keeping all indexes in step.
    fn set(&mut self, r: u32, c: u32, v: Option<V>) {
        let col = &mut self.cols[c as usize];
        let old_len = col.len();
        match v {
            Some(v) => {
                col.insert(r, v);
            }
            None => {
                col.remove(&r);
            }
        }
        let new_len = col.len();
        if new_len != old_len {
            self.live_cols.remove(&(old_len as u32, c));
            if new_len > 0 {
                self.live_cols.insert((new_len as u32, c));
            }
            let row = &mut self.rows[r as usize];
            let old_r = row.len();
            if new_len > old_len {
                row.insert(c);
            } else {
                row.remove(&c);
            }
            self.live_rows.remove(&(old_r as u32, r));
            if !row.is_empty() {
                self.live_rows.insert((row.len() as u32, r));
            }
        }
    }

    fn value(&self, r: u32, c: u32) -> Option<&V> {
        self.cols[c as usize].get(&r)
    }

    /// Drops a whole column from the live structure.
    fn remove_col(&mut self, c: u32) {
        let col = std::mem::take(&mut self.cols[c as usize]);
        self.live_cols.remove(&(col.len() as u32, c));
        for &r in col.keys() {
            let row = &mut self.rows[r as usize];
            let old = row.len();
            row.remove(&c);
            self.live_rows.remove(&(old as u32, r));
            if !row.is_empty() {
                self.live_rows.insert((row.len() as u32, r));
            }
        }
    }

    /// Markowitz-style choice: examine the sparsest live column and the
    /// sparsest live row, keep whichever entry has the smaller fill bound.
    /// Fully deterministic (ties break toward the column candidate, then
    /// smaller indices).
    fn select_pivot(&self) -> Option<(u32, u32)> {
        let &(cc, c) = self.live_cols.first()?;
        let mut col_choice = (u64::MAX, 0u32);
        for &r in self.cols[c as usize].keys() {
            let rc = self.rows[r as usize].len() as u64;
            let score = (rc - 1) * (cc as u64 - 1);
            if (score, r) < col_choice {
                col_choice = (score, r);
            }
        }
        let &(rc, r0) = self.live_rows.first()?;
        let mut row_choice = (u64::MAX, 0u32);
        for &c2 in &self.rows[r0 as usize] {
            let cc2 = self.cols[c2 as usize].len() as u64;
            let score = (cc2 - 1) * (rc as u64 - 1);
            if (score, c2) < row_choice {
                row_choice = (score, c2);
            }
        }
        if row_choice.0 < col_choice.0 {
            Some((r0, row_choice.1))
        } else {
            Some((col_choice.1, c))
        }
    }
}

fn modinv(v: u64, p: u64) -> u64 {
    powmod(v, p - 2, p)
}

/// Rank over GF(p). `p` must be prime (validated by the caller) and below
/// 2^63 so residue products fit in u128.
pub fn rank_mod_p(rows: u32, cols: u32, entries: &[(u32, u32, i64)], p: u64) -> usize {
    let mut w: Work<u64> = Work::new(rows, cols);
    for &(r, c, v) in entries {
        let res = v.rem_euclid(p as i64) as u64;
        if res != 0 {
            w.seed(r, c, res);
        }
    }
    w.index();

    let mut rank = 0usize;
    while let Some((r, c)) = w.select_pivot() {
        rank += 1;
        let piv = *w.value(r, c).expect("pivot entry exists");
        let inv = modinv(piv, p);
        let pivot_col: Vec<(u32, u64)> =
            w.cols[c as usize].iter().map(|(&i, &v)| (i, v)).collect();
        let affected: Vec<u32> = w.rows[r as usize]
            .iter()
            .copied()
            .filter(|&c2| c2 != c)
            .collect();
        for c2 in affected {
            let factor = mulmod(*w.value(r, c2).expect("row entry exists"), inv, p);
            for &(i, v) in &pivot_col {
                if i == r {
                    continue;
                }
                let delta = p - mulmod(factor, v, p);
                let cur = w.value(i, c2).copied().unwrap_or(0);
                let nv = (cur + delta) % p;
                w.set(i, c2, if nv == 0 { None } else { Some(nv) });
            }
            w.set(r, c2, None);
        }
        w.remove_col(c);
    }
    rank
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Rank over the rationals via fraction-free (integer-preserving)
/// elimination: every intermediate entry is a minor of the input matrix, and
/// each step divides exactly by the previous pivot. Exact for any pivot
/// order, so the Markowitz selection above applies unchanged.
pub fn rank_fraction_free(rows: u32, cols: u32, entries: &[(u32, u32, i64)]) -> usize {
    let mut w: Work<BigInt> = Work::new(rows, cols);
    for &(r, c, v) in entries {
        if v != 0 {
            w.seed(r, c, BigInt::from(v));
        }
    }
    w.index();

    let mut prev = BigInt::one();
    let mut rank = 0usize;
    while let Some((r, c)) = w.select_pivot() {
        rank += 1;
        let piv = w.value(r, c).expect("pivot entry exists").clone();
        let pivot_col: Vec<(u32, BigInt)> = w.cols[c as usize]
            .iter()
            .map(|(&i, v)| (i, v.clone()))
            .collect();
        let live: Vec<u32> = w
            .live_cols
            .iter()
            .map(|&(_, c2)| c2)
            .filter(|&c2| c2 != c)
            .collect();
        for c2 in live {
            match w.value(r, c2).cloned() {
                Some(rv) => {
                    // Column meets the pivot row: full Bareiss update on the
                    // union of both columns' supports.
                    let mut support: BTreeSet<u32> =
                        w.cols[c2 as usize].keys().copied().collect();
                    support.extend(pivot_col.iter().map(|&(i, _)| i));
                    for i in support {
                        if i == r {
                            continue;
                        }
                        let a = w.value(i, c2).cloned().unwrap_or_else(BigInt::zero);
                        let b = pivot_col
                            .iter()
                            .find(|&&(j, _)| j == i)
                            .map(|(_, v)| v.clone())
                            .unwrap_or_else(BigInt::zero);
                        let num = &a * &piv - &b * &rv;
                        debug_assert!((&num % &prev).is_zero());
                        let nv = num / &prev;
                        w.set(i, c2, if nv.is_zero() { None } else { Some(nv) });
                    }
                    w.set(r, c2, None);
                }
                None => {
                    // Untouched column: Bareiss still rescales the whole
                    // active submatrix by piv/prev. Nonzero values stay
                    // nonzero, so the sparsity indexes are unaffected.
                    for v in w.cols[c2 as usize].values_mut() {
                        let num = &*v * &piv;
                        debug_assert!((&num % &prev).is_zero());
                        *v = num / &prev;
                    }
                }
            }
        }
        w.remove_col(c);
        prev = piv;
    }
    rank
}
