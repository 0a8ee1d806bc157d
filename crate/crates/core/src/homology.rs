//! Brute-force route: assemble the supercharge's graded differential
//! matrices, take exact ranks, and read off homology dimensions.
//!
//! For a supercharge of degree `-k` the block `Q_d` maps the degree-`d`
//! component to degree `d-k`, and
//!
//! ```text
//! dim H_d = C(n,d) - rank(Q_d) - rank(Q_{d+k})
//! ```
//!
//! (out-of-range blocks have rank 0). Ranks are shared between adjacent
//! degrees and the per-degree jobs run in parallel, merged in degree order.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{self, FockState, SuperchargeSpec};
use crate::linalg::{self, RankMode, SparseMatrix};
use crate::poly::PoincarePolynomial;

/// Default guard for brute-force work: `2^24` basis monomials.
pub const DEFAULT_SIZE_CAP: u32 = 24;

/// Knobs for the brute-force route.
#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub mode: RankMode,
    /// Chains longer than this are refused with a resource error.
    pub size_cap: u32,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { mode: RankMode::default(), size_cap: DEFAULT_SIZE_CAP }
    }
}

impl HomologyOptions {
    pub fn with_mode(mode: RankMode) -> Self {
        HomologyOptions { mode, ..Default::default() }
    }
}

/// Everything the brute-force route learned about one chain.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub model: String,
    pub sites: u32,
    /// `C(n,d)` for `d = 0..=n`.
    pub chain_dims: Vec<u64>,
    /// Rank of the block leaving degree `d`, for `d = 0..=n`.
    pub ranks: Vec<u64>,
    pub homology_dims: Vec<u64>,
    pub poincare: PoincarePolynomial,
    pub mode: RankMode,
    /// Primes used by the field arithmetic (empty in pure rational mode).
    pub primes: Vec<u64>,
    /// True when any degree needed the exact-rational fallback.
    pub used_rational_fallback: bool,
    /// Per-degree rank time and the total, in milliseconds.
    pub rank_millis: Vec<u64>,
    pub total_millis: u64,
}

/// Binomial row `C(n, 0..=n)` by Pascal addition; exact for `n <= 63`.
pub fn chain_dims(n: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

/// The matrix of the supercharge restricted to the degree-`d` component:
/// columns indexed by `basis_states(n, d)`, rows by the target component
/// `basis_states(n, d + degree)`. When the target degree falls outside
/// `0..=n` the matrix has zero rows.
pub fn differential_matrix(q: &SuperchargeSpec, n: u32, d: u32) -> Result<SparseMatrix> {
    if n < q.sites() {
        return Err(Error::Domain(format!(
            "state space of {n} sites is smaller than the supercharge's {}",
            q.sites()
        )));
    }
    let columns = fock::basis_states(n, d)?;
    let target = i64::from(d) + i64::from(q.degree());
    if target < 0 || target > i64::from(n) {
        return Ok(SparseMatrix::zero(0, columns.len() as u32));
    }
    let rows = fock::basis_states(n, target as u32)?;
    let row_masks: Vec<u64> = rows.iter().map(|s| s.mask()).collect();

    let mut entries = Vec::new();
    for (col, state) in columns.iter().enumerate() {
        for (coeff, out) in fock::apply_supercharge(q, *state)? {
            let row = row_masks
                .binary_search(&out.mask())
                .expect("image state lies in the target basis");
            entries.push((row as u32, col as u32, coeff));
        }
    }
    SparseMatrix::new(rows.len() as u32, columns.len() as u32, entries)
}

struct GradedRanks {
    ranks: Vec<usize>,
    primes: Vec<u64>,
    used_rational_fallback: bool,
    rank_millis: Vec<u64>,
}

impl GradedRanks {
    fn rank_leaving(&self, d: i64) -> u64 {
        if d >= 0 && (d as usize) < self.ranks.len() {
            self.ranks[d as usize] as u64
        } else {
            0
        }
    }
}

fn graded_ranks(q: &SuperchargeSpec, n: u32, opts: &HomologyOptions) -> Result<GradedRanks> {
    if n > opts.size_cap {
        return Err(Error::Resource(format!(
            "chain of {n} sites exceeds the size cap {} (2^{n} basis monomials)",
            opts.size_cap
        )));
    }
    if q.degree() >= 0 {
        return Err(Error::Domain(format!(
            "homology expects a differential of negative degree, got {}",
            q.degree()
        )));
    }
    if !fock::check_nilpotent(q, n)? {
        return Err(Error::Model("supercharge is not nilpotent: Q^2 != 0".into()));
    }
    let per_degree: Vec<(linalg::RankOutcome, u64)> = (0..=n)
        .into_par_iter()
        .map(|d| -> Result<(linalg::RankOutcome, u64)> {
            let started = Instant::now();
            let matrix = differential_matrix(q, n, d)?;
            let outcome = linalg::rank_with_mode(&matrix, &opts.mode)?;
            Ok((outcome, started.elapsed().as_millis() as u64))
        })
        .collect::<Result<_>>()?;

    let mut primes = Vec::new();
    let mut used_rational_fallback = false;
    let mut ranks = Vec::with_capacity(per_degree.len());
    let mut rank_millis = Vec::with_capacity(per_degree.len());
    for (outcome, millis) in per_degree {
        for p in outcome.primes {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        used_rational_fallback |= outcome.used_rational_fallback;
        ranks.push(outcome.rank);
        rank_millis.push(millis);
    }
    Ok(GradedRanks { ranks, primes, used_rational_fallback, rank_millis })
}

/// Per-degree homology dimensions for `d = 0..=n`.
pub fn homology_dims(q: &SuperchargeSpec, n: u32, opts: &HomologyOptions) -> Result<Vec<u64>> {
    Ok(report(q, n, "", opts)?.homology_dims)
}

/// Full brute-force report; `model` is a free-form descriptor echoed back.
pub fn report(
    q: &SuperchargeSpec,
    n: u32,
    model: &str,
    opts: &HomologyOptions,
) -> Result<HomologyReport> {
    let started = Instant::now();
    let graded = graded_ranks(q, n, opts)?;
    let dims = chain_dims(n);
    let k = i64::from(-q.degree());
    let mut homology = Vec::with_capacity(dims.len());
    for d in 0..=i64::from(n) {
        let chain = dims[d as usize];
        let out = graded.rank_leaving(d);
        let into = graded.rank_leaving(d + k);
        if out + into > chain {
            return Err(Error::Arithmetic(format!(
                "negative Betti number at degree {d}: C={chain}, rank out={out}, rank in={into}"
            )));
        }
        homology.push(chain - out - into);
    }
    Ok(HomologyReport {
        model: model.to_string(),
        sites: n,
        poincare: PoincarePolynomial::from_dims(&homology),
        chain_dims: dims,
        ranks: graded.ranks.iter().map(|&r| r as u64).collect(),
        homology_dims: homology,
        mode: opts.mode,
        primes: graded.primes,
        used_rational_fallback: graded.used_rational_fallback,
        rank_millis: graded.rank_millis,
        total_millis: started.elapsed().as_millis() as u64,
    })
}

/// The ground-state generating function computed by brute force.
pub fn poincare_polynomial(
    q: &SuperchargeSpec,
    n: u32,
    opts: &HomologyOptions,
) -> Result<PoincarePolynomial> {
    Ok(report(q, n, "", opts)?.poincare)
}

/// Total number of supersymmetric ground states: the polynomial at `z = 1`.
pub fn ground_state_count(q: &SuperchargeSpec, n: u32, opts: &HomologyOptions) -> Result<BigUint> {
    Ok(poincare_polynomial(q, n, opts)?.evaluate_one())
}

/// Independent oracle: the dimension of `ker(Q Q+ + Q+ Q)` on the degree-`d`
/// component, over the rationals (positive semidefiniteness needs
/// characteristic 0). By Hodge theory this equals `dim H_d`.
pub fn hamiltonian_kernel_dim(
    q: &SuperchargeSpec,
    n: u32,
    d: u32,
    size_cap: u32,
) -> Result<u64> {
    if n > size_cap {
        return Err(Error::Resource(format!(
            "chain of {n} sites exceeds the size cap {size_cap}"
        )));
    }
    if d > n {
        return Err(Error::Domain(format!("degree {d} out of range 0..={n}")));
    }
    if q.degree() >= 0 {
        return Err(Error::Domain(format!(
            "hamiltonian oracle expects a supercharge of negative degree, got {}",
            q.degree()
        )));
    }
    let k = (-q.degree()) as u32;
    // Q+Q on degree d, via the block leaving degree d.
    let leaving = differential_matrix(q, n, d)?;
    let mut h = leaving.transpose().mul(&leaving)?;
    // QQ+ on degree d, via the block arriving from degree d+k.
    if d + k <= n {
        let arriving = differential_matrix(q, n, d + k)?;
        h = h.add(&arriving.mul(&arriving.transpose())?)?;
    }
    let dim = fock::basis_states(n, d)?.len() as u64;
    let rank = linalg::rank(&h, &linalg::FieldSpec::ExactRational)? as u64;
    Ok(dim - rank)
}

/// Witten-index-style check: the polynomial vanishes at `z = -1`. Expected
/// to hold for every chain with at least one site (the chain dimensions are
/// binomial coefficients); the empty chain is exempt.
pub fn euler_check(p: &PoincarePolynomial) -> bool {
    use num_traits::Zero;
    p.evaluate_minus_one().is_zero()
}

/// States of degree `d`, exposed for callers that want to label matrix
/// columns.
pub fn basis_of_degree(n: u32, d: u32) -> Result<Vec<FockState>> {
    fock::basis_states(n, d)
}
