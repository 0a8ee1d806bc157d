//! Homological-perturbation route: split the supercharge as `Q = d1 + d2`
//! with `d1` its last (highest-site) term, contract `d1` through an explicit
//! deformation retract, and transport `d2` onto the small complex of
//! `d1`-homology representatives.
//!
//! The retract data is an inclusion `i`, a basis projection `p` and a
//! homotopy `h` (the dagger-reversal of `d1`, sign-calibrated) satisfying
//!
//! ```text
//! p i = Id,    i p = Id + d1 h + h d1,    h^2 = 0,    p h = 0,    h i = 0.
//! ```
//!
//! The perturbed differential on the representatives is
//! `p (1 - d2 h)^{-1} d2 i`, expanded as the series `p sum_k (d2 h)^k d2 i`;
//! since `h d2 h = 0` for both built-in splits the series terminates after
//! at most the k = 1 term. Its homology equals the homology of `Q` degree by
//! degree, which gives the third independent route to the generating
//! function.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fock::{self, FockState, MonomialTerm, SuperchargeSpec};
use crate::homology::{self, HomologyOptions};
use crate::linalg::{self, SparseMatrix};
use crate::poly::PoincarePolynomial;
use crate::Model;

/// Sparse vector over the monomial basis: mask -> coefficient.
type SparseVec = BTreeMap<u64, i64>;

fn vec_insert(acc: &mut SparseVec, mask: u64, coeff: i64) {
    if coeff == 0 {
        return;
    }
    let slot = acc.entry(mask).or_insert(0);
    *slot += coeff;
    if *slot == 0 {
        acc.remove(&mask);
    }
}

fn apply_term_vec(term: &MonomialTerm, v: &SparseVec, sites: u32) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (&mask, &coeff) in v {
        let state = FockState::from_mask(mask, sites)?;
        if let Some((c, s)) = fock::apply_term(term, state)? {
            vec_insert(&mut out, s.mask(), c * coeff);
        }
    }
    Ok(out)
}

fn apply_terms_vec(terms: &[MonomialTerm], v: &SparseVec, sites: u32) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (&mask, &coeff) in v {
        let state = FockState::from_mask(mask, sites)?;
        for term in terms {
            if let Some((c, s)) = fock::apply_term(term, state)? {
                vec_insert(&mut out, s.mask(), c * coeff);
            }
        }
    }
    Ok(out)
}

/// Splits off the supercharge's last term: `d1` is the highest-index
/// summand, `d2` the rest, so `d1 + d2 = Q`.
pub fn split_last_term(q: &SuperchargeSpec) -> Result<(MonomialTerm, SuperchargeSpec)> {
    let Some(d1) = q.terms().last().cloned() else {
        return Err(Error::Domain("cannot split a supercharge with no terms".into()));
    };
    let rest = q.terms()[..q.terms().len() - 1].to_vec();
    let d2 = SuperchargeSpec::new(q.sites(), q.degree(), rest)?;
    Ok((d1, d2))
}

/// Deformation-retract data contracting a single cubic monomial
/// differential `d1` onto its homology representatives.
#[derive(Clone, Debug)]
pub struct Retract {
    d1: MonomialTerm,
    h: MonomialTerm,
    sites: u32,
    /// Basis monomials spanning the homology of `d1`: the joint kernel of
    /// `d1 h` and `h d1`, ascending by mask.
    representatives: Vec<FockState>,
    /// The complementary monomials: the kernel of the projection `p`.
    projection_kernel: Vec<FockState>,
    /// The sign `s` in `d1 h d1 = s d1` and `h d1 h = s h`. With `h`
    /// calibrated to the retract equation `ip = Id + d1 h + h d1` this
    /// comes out -1 for every supported `d1`.
    side_sign: i8,
}

impl Retract {
    pub fn d1(&self) -> &MonomialTerm {
        &self.d1
    }

    pub fn homotopy(&self) -> &MonomialTerm {
        &self.h
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn representatives(&self) -> &[FockState] {
        &self.representatives
    }

    pub fn projection_kernel(&self) -> &[FockState] {
        &self.projection_kernel
    }

    pub fn side_sign(&self) -> i8 {
        self.side_sign
    }

    /// Restriction-projection onto the representative span: keeps
    /// representative coordinates, kills the rest.
    fn project(&self, v: &SparseVec, rep_masks: &BTreeSet<u64>) -> SparseVec {
        v.iter()
            .filter(|(mask, _)| rep_masks.contains(mask))
            .map(|(&m, &c)| (m, c))
            .collect()
    }
}

fn compose_on_state(
    first: &MonomialTerm,
    then: &MonomialTerm,
    s: FockState,
) -> Result<Option<(i64, FockState)>> {
    match fock::apply_term(first, s)? {
        Some((c1, mid)) => match fock::apply_term(then, mid)? {
            Some((c2, out)) => Ok(Some((c1 * c2, out))),
            None => Ok(None),
        },
        None => Ok(None),
    }
}

/// Builds the retract for a single cubic monomial `d1` on `n` sites.
///
/// The homotopy starts from the dagger-reversal of `d1`; its sign is
/// calibrated so that `ip = Id + d1 h + h d1` holds with `p` the basis
/// projection onto the joint kernel of `d1 h` and `h d1`. All retract
/// identities are then verified exhaustively on the `2^n` basis monomials
/// before the data is returned.
pub fn build_retract(d1: &MonomialTerm, n: u32) -> Result<Retract> {
    if d1.letters().len() != 3 {
        return Err(Error::Model(format!(
            "retract supports cubic terms only, got {} letters",
            d1.letters().len()
        )));
    }
    let sites: BTreeSet<u32> = d1.letters().iter().map(|l| l.site).collect();
    if sites.len() != 3 {
        return Err(Error::Model("retract needs three distinct sites in d1".into()));
    }
    if d1.max_site() > n {
        return Err(Error::Domain(format!(
            "d1 references site {} beyond the {n}-site chain",
            d1.max_site()
        )));
    }
    if d1.coefficient().abs() != 1 {
        return Err(Error::Model(format!(
            "retract calibration needs a unit coefficient, got {}",
            d1.coefficient()
        )));
    }

    let candidates = [d1.adjoint(), d1.adjoint().negated()];
    'candidate: for h in candidates {
        let mut representatives = Vec::new();
        let mut projection_kernel = Vec::new();
        for mask in 0..(1u64 << n) {
            let s = FockState::from_mask(mask, n)?;
            let d1h = compose_on_state(&h, d1, s)?;
            let hd1 = compose_on_state(d1, &h, s)?;
            match (d1h, hd1) {
                (None, None) => representatives.push(s),
                (a, b) => {
                    // Retract equation on a non-representative monomial:
                    // (d1 h + h d1)(s) must be exactly -s.
                    let mut acc = SparseVec::new();
                    for part in [a, b].into_iter().flatten() {
                        vec_insert(&mut acc, part.1.mask(), part.0);
                    }
                    if acc != SparseVec::from([(mask, -1)]) {
                        continue 'candidate;
                    }
                    projection_kernel.push(s);
                }
            }
        }

        // Side conditions, exhaustively: h^2 = 0 and the sign-consistent
        // pair d1 h d1 = s d1, h d1 h = s h.
        let mut side_sign: Option<i8> = None;
        for mask in 0..(1u64 << n) {
            let s = FockState::from_mask(mask, n)?;
            if let Some((_, mid)) = fock::apply_term(&h, s)? {
                if fock::apply_term(&h, mid)?.is_some() {
                    return Err(Error::Model("homotopy does not square to zero".into()));
                }
            }
            let d1_s = fock::apply_term(d1, s)?;
            let d1hd1 = match d1_s {
                Some((c, mid)) => compose_on_state(&h, d1, mid)?.map(|(c2, out)| (c * c2, out)),
                None => None,
            };
            let want = check_scaled(d1_s, d1hd1, &mut side_sign);
            let h_s = fock::apply_term(&h, s)?;
            let hd1h = match h_s {
                Some((c, mid)) => compose_on_state(d1, &h, mid)?.map(|(c2, out)| (c * c2, out)),
                None => None,
            };
            let want2 = check_scaled(h_s, hd1h, &mut side_sign);
            if !(want && want2) {
                return Err(Error::Model(
                    "side conditions d1 h d1 = s d1 / h d1 h = s h failed".into(),
                ));
            }
        }

        return Ok(Retract {
            d1: d1.clone(),
            h,
            sites: n,
            representatives,
            projection_kernel,
            side_sign: side_sign.unwrap_or(-1),
        });
    }
    Err(Error::Model(
        "no homotopy sign satisfies the retract equation; d1 is outside the supported shape"
            .into(),
    ))
}

/// Compares `triple` against `sign * base`, learning the sign on first use.
fn check_scaled(
    base: Option<(i64, FockState)>,
    triple: Option<(i64, FockState)>,
    sign: &mut Option<i8>,
) -> bool {
    match (base, triple) {
        (None, None) => true,
        (Some((cb, sb)), Some((ct, st))) => {
            if sb != st || ct.abs() != cb.abs() {
                return false;
            }
            let observed = if ct == cb { 1 } else { -1 };
            match sign {
                Some(s) => *s == observed,
                None => {
                    *sign = Some(observed);
                    true
                }
            }
        }
        // d1 vanished but the triple did not (or vice versa).
        _ => false,
    }
}

/// The transported differential on the representative basis.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    /// Representatives grouped by degree, each list ascending by mask.
    by_degree: BTreeMap<u32, Vec<FockState>>,
    /// Differential block leaving each degree `d` (rows indexed by the
    /// degree `d + degree` representatives).
    blocks: BTreeMap<u32, SparseMatrix>,
    degree: i32,
    /// Grading shift carried by the homotopy (`-degree(d1)`).
    degree_shift_used: i32,
    /// First `k` for which `(d2 h)^k d2 i` vanished identically; the series
    /// summed the terms below it.
    truncation_order: u32,
    sites: u32,
}

impl ReducedComplex {
    pub fn basis_size(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn basis_of_degree(&self, d: u32) -> &[FockState] {
        self.by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The block leaving degree `d`, in the shared sparse triplet
    /// conventions (export with `SparseMatrix::to_triplet_text`).
    pub fn differential_block(&self, d: u32) -> Option<&SparseMatrix> {
        self.blocks.get(&d)
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn degree_shift_used(&self) -> i32 {
        self.degree_shift_used
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }

    fn rank_leaving(&self, d: i64, mode: &linalg::RankMode) -> Result<u64> {
        if d < 0 || d > i64::from(self.sites) {
            return Ok(0);
        }
        match self.blocks.get(&(d as u32)) {
            Some(block) => Ok(linalg::rank_with_mode(block, mode)?.rank as u64),
            None => Ok(0),
        }
    }

    /// Homology of the reduced complex, degree by degree.
    pub fn poincare_polynomial(&self, mode: &linalg::RankMode) -> Result<PoincarePolynomial> {
        let k = i64::from(-self.degree);
        let mut dims = Vec::new();
        for d in 0..=i64::from(self.sites) {
            let basis = self.basis_of_degree(d as u32).len() as u64;
            let out = self.rank_leaving(d, mode)?;
            let into = self.rank_leaving(d + k, mode)?;
            if out + into > basis {
                return Err(Error::Arithmetic(format!(
                    "negative reduced Betti number at degree {d}"
                )));
            }
            dims.push(basis - out - into);
        }
        Ok(PoincarePolynomial::from_dims(&dims))
    }
}

/// Transports `d2` onto the retract's representatives: the differential
/// `p (sum_k (d2 h)^k) d2 i`, truncated at the first power that vanishes
/// identically, then verified to square to zero.
pub fn reduced_differential(r: &Retract, d2: &SuperchargeSpec) -> Result<ReducedComplex> {
    let n = r.sites;
    if d2.sites() > n {
        return Err(Error::Domain(format!(
            "d2 lives on {} sites, retract on {n}",
            d2.sites()
        )));
    }
    if !d2.terms().is_empty() && d2.degree() != r.d1.degree() {
        return Err(Error::Domain(format!(
            "d2 degree {} does not match d1 degree {}",
            d2.degree(),
            r.d1.degree()
        )));
    }
    let degree = r.d1.degree();
    let rep_masks: BTreeSet<u64> = r.representatives.iter().map(|s| s.mask()).collect();

    let mut by_degree: BTreeMap<u32, Vec<FockState>> = BTreeMap::new();
    for &s in &r.representatives {
        by_degree.entry(s.degree()).or_default().push(s);
    }
    let index_of: BTreeMap<u64, u32> = by_degree
        .values()
        .flat_map(|list| list.iter().enumerate().map(|(i, s)| (s.mask(), i as u32)))
        .collect();

    let mut truncation_order = 0u32;
    let mut columns: BTreeMap<u64, SparseVec> = BTreeMap::new();
    for &s in &r.representatives {
        let mut total = SparseVec::new();
        let mut cur = apply_terms_vec(d2.terms(), &SparseVec::from([(s.mask(), 1)]), n)?;
        let mut k = 0u32;
        while !cur.is_empty() {
            if k > n {
                return Err(Error::Model(
                    "perturbation series did not terminate: 1 - d2 h is not invertible".into(),
                ));
            }
            for (&mask, &coeff) in &r.project(&cur, &rep_masks) {
                vec_insert(&mut total, mask, coeff);
            }
            cur = apply_terms_vec(d2.terms(), &apply_term_vec(&r.h, &cur, n)?, n)?;
            k += 1;
        }
        truncation_order = truncation_order.max(k);
        columns.insert(s.mask(), total);
    }

    let mut blocks = BTreeMap::new();
    for d in 0..=n {
        let source = by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[]);
        let target_deg = i64::from(d) + i64::from(degree);
        let target_len = if (0..=i64::from(n)).contains(&target_deg) {
            by_degree
                .get(&(target_deg as u32))
                .map(Vec::len)
                .unwrap_or(0)
        } else {
            0
        };
        let mut entries = Vec::new();
        for (col, s) in source.iter().enumerate() {
            for (&mask, &coeff) in &columns[&s.mask()] {
                let row = *index_of.get(&mask).expect("projected onto representatives");
                entries.push((row, col as u32, coeff));
            }
        }
        blocks.insert(d, SparseMatrix::new(target_len as u32, source.len() as u32, entries)?);
    }

    let complex = ReducedComplex {
        by_degree,
        blocks,
        degree,
        degree_shift_used: -degree,
        truncation_order,
        sites: n,
    };

    // The transported operator must itself be a differential.
    let k = (-degree) as u32;
    for d in k..=n {
        let inner = &complex.blocks[&d];
        let outer = &complex.blocks[&(d - k)];
        if outer.rows() > 0 && !outer.mul(inner)?.is_zero() {
            return Err(Error::Model(format!(
                "reduced differential does not square to zero at degree {d}"
            )));
        }
    }
    Ok(complex)
}

/// The generating function via one retract step on the last term followed
/// by brute-force homology of the reduced complex. For a supercharge with no
/// terms the retract step is skipped and the full space is its own homology.
pub fn homology_via_hpl(
    q: &SuperchargeSpec,
    n: u32,
    opts: &HomologyOptions,
) -> Result<PoincarePolynomial> {
    if n > opts.size_cap {
        return Err(Error::Resource(format!(
            "chain of {n} sites exceeds the size cap {}",
            opts.size_cap
        )));
    }
    if q.terms().is_empty() {
        return Ok(PoincarePolynomial::binomial_row(n));
    }
    if !fock::check_nilpotent(q, n)? {
        return Err(Error::Model("supercharge is not nilpotent: Q^2 != 0".into()));
    }
    let (d1, d2) = split_last_term(q)?;
    let retract = build_retract(&d1, n)?;
    let reduced = reduced_differential(&retract, &d2)?;
    reduced.poincare_polynomial(&opts.mode)
}

/// Grading shift: multiplies the generating function by `z^k`.
pub fn suspend(p: &PoincarePolynomial, k: i32) -> Result<PoincarePolynomial> {
    p.shifted(i64::from(k))
}

/// Checks the direct-sum decomposition behind each model's recursion with
/// every side brute-forced: the chain's generating function must equal the
/// suspended sum of the two smaller chains' functions.
///
/// Nicolai on `2m+1` sites (needs `size >= 7` so both sub-chains exist):
/// `P = P' + z^2 P' + z P'' + 2 z^2 P'' + z^3 P''` with `P' = P_{2m-1}`,
/// `P'' = P_{2m-3}`. Z2 on `n >= 3` sites:
/// `P = 2z P_{n-2} + z P_{n-3} + z^2 P_{n-3}`.
pub fn decomposition_check(model: Model, size: u32, opts: &HomologyOptions) -> Result<bool> {
    let brute = |s: u32| -> Result<PoincarePolynomial> {
        let q = match model {
            // Sub-chains can drop below the model's natural minimum size;
            // there the supercharge is the zero operator on s sites.
            Model::Nicolai if s >= 3 => model.supercharge(s)?,
            Model::Nicolai => SuperchargeSpec::new(s, -1, vec![])?,
            Model::Z2 => model.supercharge(s)?,
        };
        homology::poincare_polynomial(&q, s, opts)
    };
    let (lhs, rhs) = match model {
        Model::Nicolai => {
            if size < 7 || size % 2 == 0 {
                return Err(Error::Domain(format!(
                    "nicolai decomposition check needs an odd size >= 7, got {size}"
                )));
            }
            let lhs = brute(size)?;
            let p1 = brute(size - 2)?;
            let p2 = brute(size - 4)?;
            let rhs = p1
                .add(&suspend(&p1, 2)?)
                .add(&suspend(&p2, 1)?)
                .add(&suspend(&p2, 2)?)
                .add(&suspend(&p2, 2)?)
                .add(&suspend(&p2, 3)?);
            (lhs, rhs)
        }
        Model::Z2 => {
            if size < 3 {
                return Err(Error::Domain(format!(
                    "z2 decomposition check needs size >= 3, got {size}"
                )));
            }
            let lhs = brute(size)?;
            let p1 = brute(size - 2)?;
            let p2 = brute(size - 3)?;
            let rhs = suspend(&p1, 1)?
                .add(&suspend(&p1, 1)?)
                .add(&suspend(&p2, 1)?)
                .add(&suspend(&p2, 2)?);
            (lhs, rhs)
        }
    };
    Ok(lhs == rhs)
}
