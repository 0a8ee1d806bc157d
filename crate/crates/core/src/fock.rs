//! Fermionic Fock space over a 1D chain, encoded as occupation bitmasks.
//!
//! The state space on `n` sites is the exterior algebra on the creation
//! operators `c+_1 .. c+_n`; a basis monomial `c+_{i1} ^ .. ^ c+_{ik}`
//! (with `i1 < .. < ik`) is stored as the bitmask with those sites set.
//! Annihilation `c_j` acts as the odd derivation with respect to `c+_j`,
//! creation as left multiplication followed by reordering into ascending
//! site order; both pick up the Koszul sign `(-1)^{#occupied sites below j}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported chain; site occupations must fit one machine word.
pub const MAX_SITES: u32 = 63;

/// A basis monomial of the exterior algebra: bit `j-1` set means site `j`
/// is occupied (the monomial contains `c+_j`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FockState {
    mask: u64,
    sites: u32,
}

impl FockState {
    /// The empty monomial (no fermions) on `sites` sites.
    pub fn vacuum(sites: u32) -> Result<Self> {
        Self::from_mask(0, sites)
    }

    pub fn from_mask(mask: u64, sites: u32) -> Result<Self> {
        if sites > MAX_SITES {
            return Err(Error::Domain(format!(
                "chain of {sites} sites exceeds the {MAX_SITES}-site limit"
            )));
        }
        if sites < 64 && mask >> sites != 0 {
            return Err(Error::Domain(format!(
                "mask {mask:#x} sets bits beyond site {sites}"
            )));
        }
        Ok(FockState { mask, sites })
    }

    /// Builds a state from 1-indexed occupied sites.
    pub fn from_sites(occupied: &[u32], sites: u32) -> Result<Self> {
        let mut mask = 0u64;
        for &site in occupied {
            if site == 0 || site > sites {
                return Err(Error::Domain(format!(
                    "site {site} out of range 1..={sites}"
                )));
            }
            mask |= 1 << (site - 1);
        }
        Self::from_mask(mask, sites)
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn sites(self) -> u32 {
        self.sites
    }

    /// Fermion number: the number of creation operators in the monomial.
    pub fn degree(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_occupied(self, site: u32) -> bool {
        site >= 1 && site <= self.sites && self.mask & (1 << (site - 1)) != 0
    }

    /// Occupied sites in ascending order, 1-indexed.
    pub fn occupied_sites(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        let mut m = self.mask;
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, site) in self.occupied_sites().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{site}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LetterKind {
    Annihilate,
    Create,
}

/// One creation or annihilation operator at a 1-indexed site.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OperatorLetter {
    pub site: u32,
    pub kind: LetterKind,
}

impl OperatorLetter {
    pub fn annihilate(site: u32) -> Self {
        OperatorLetter { site, kind: LetterKind::Annihilate }
    }

    pub fn create(site: u32) -> Self {
        OperatorLetter { site, kind: LetterKind::Create }
    }

    /// Hermitian conjugate: swaps annihilation and creation.
    pub fn dagger(self) -> Self {
        let kind = match self.kind {
            LetterKind::Annihilate => LetterKind::Create,
            LetterKind::Create => LetterKind::Annihilate,
        };
        OperatorLetter { site: self.site, kind }
    }
}

impl fmt::Display for OperatorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::Annihilate => write!(f, "a{}", self.site),
            LetterKind::Create => write!(f, "c{}", self.site),
        }
    }
}

/// A state together with the Koszul sign picked up by one operator letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignedState {
    /// Always +1 or -1.
    pub sign: i8,
    pub state: FockState,
}

/// A signed ordered product of operator letters, applied rightmost first.
///
/// The letter sequence reads like the written operator product: the term
/// `c_1 c+_2 c_3` has letters `[a1, c2, a3]` and acts on a state by `a3`,
/// then `c2`, then `a1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialTerm {
    coefficient: i64,
    letters: Vec<OperatorLetter>,
}

impl MonomialTerm {
    pub fn new(coefficient: i64, letters: Vec<OperatorLetter>) -> Result<Self> {
        if coefficient == 0 {
            return Err(Error::Domain("term coefficient must be nonzero".into()));
        }
        for (i, a) in letters.iter().enumerate() {
            if a.site == 0 {
                return Err(Error::Domain("sites are 1-indexed; got site 0".into()));
            }
            for b in &letters[i + 1..] {
                if a.site == b.site && a.kind == b.kind {
                    return Err(Error::Domain(format!(
                        "duplicate letter {a} in term (the square of a fermionic operator vanishes)"
                    )));
                }
            }
        }
        Ok(MonomialTerm { coefficient, letters })
    }

    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    pub fn letters(&self) -> &[OperatorLetter] {
        &self.letters
    }

    /// Grading shift: number of creations minus number of annihilations.
    pub fn degree(&self) -> i32 {
        self.letters
            .iter()
            .map(|l| match l.kind {
                LetterKind::Create => 1,
                LetterKind::Annihilate => -1,
            })
            .sum()
    }

    pub fn max_site(&self) -> u32 {
        self.letters.iter().map(|l| l.site).max().unwrap_or(0)
    }

    /// Hermitian conjugate: letters reversed with daggers swapped,
    /// coefficient preserved.
    pub fn adjoint(&self) -> MonomialTerm {
        let letters = self.letters.iter().rev().map(|l| l.dagger()).collect();
        MonomialTerm { coefficient: self.coefficient, letters }
    }

    /// Same term with the coefficient negated.
    pub fn negated(&self) -> MonomialTerm {
        MonomialTerm { coefficient: -self.coefficient, letters: self.letters.clone() }
    }
}

impl fmt::Display for MonomialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient != 1 {
            write!(f, "{} ", self.coefficient)?;
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A formal sum of monomial terms of one common degree: a supercharge
/// candidate. Nilpotency is checkable, not assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperchargeSpec {
    sites: u32,
    degree: i32,
    terms: Vec<MonomialTerm>,
}

impl SuperchargeSpec {
    /// `degree` must match every term; it also pins the grading of the zero
    /// operator when `terms` is empty.
    pub fn new(sites: u32, degree: i32, terms: Vec<MonomialTerm>) -> Result<Self> {
        if sites > MAX_SITES {
            return Err(Error::Domain(format!(
                "chain of {sites} sites exceeds the {MAX_SITES}-site limit"
            )));
        }
        for term in &terms {
            if term.degree() != degree {
                return Err(Error::Domain(format!(
                    "term {term} has degree {}, expected {degree}",
                    term.degree()
                )));
            }
            if term.max_site() > sites {
                return Err(Error::Domain(format!(
                    "term {term} references site {} beyond the {sites}-site chain",
                    term.max_site()
                )));
            }
        }
        Ok(SuperchargeSpec { sites, degree, terms })
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }
}

/// All `C(n,d)` basis monomials of fermion number `d` on `n` sites, in
/// strictly increasing bitmask order. This order is the contract that makes
/// matrix exports reproducible.
pub fn basis_states(n: u32, d: u32) -> Result<Vec<FockState>> {
    if n > MAX_SITES {
        return Err(Error::Domain(format!(
            "chain of {n} sites exceeds the {MAX_SITES}-site limit"
        )));
    }
    if d > n {
        return Err(Error::Domain(format!("degree {d} out of range 0..={n}")));
    }
    if d == 0 {
        return Ok(vec![FockState { mask: 0, sites: n }]);
    }
    let mut out = Vec::new();
    let top = 1u64 << n;
    // Gosper's hack: next larger mask with the same popcount.
    let mut m = (1u64 << d) - 1;
    while m < top {
        out.push(FockState { mask: m, sites: n });
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Ok(out)
}

fn sign_below(mask: u64, site: u32) -> i8 {
    let below = mask & ((1u64 << (site - 1)) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Acts with one letter on a basis monomial. `None` means the result is the
/// zero vector (annihilating an empty site or creating an occupied one).
pub fn apply_letter(letter: OperatorLetter, s: FockState) -> Result<Option<SignedState>> {
    if letter.site == 0 || letter.site > s.sites {
        return Err(Error::Domain(format!(
            "site {} out of range 1..={}",
            letter.site, s.sites
        )));
    }
    let bit = 1u64 << (letter.site - 1);
    let occupied = s.mask & bit != 0;
    let mask = match letter.kind {
        LetterKind::Annihilate if occupied => s.mask & !bit,
        LetterKind::Create if !occupied => s.mask | bit,
        _ => return Ok(None),
    };
    Ok(Some(SignedState {
        sign: sign_below(s.mask, letter.site),
        state: FockState { mask, sites: s.sites },
    }))
}

/// Acts with a full term, rightmost letter first, accumulating Koszul signs
/// and the term coefficient.
pub fn apply_term(term: &MonomialTerm, s: FockState) -> Result<Option<(i64, FockState)>> {
    let mut state = s;
    let mut sign = 1i64;
    for letter in term.letters.iter().rev() {
        match apply_letter(*letter, state)? {
            Some(signed) => {
                sign *= i64::from(signed.sign);
                state = signed.state;
            }
            None => return Ok(None),
        }
    }
    Ok(Some((sign * term.coefficient, state)))
}

/// Acts with the whole supercharge: sums `apply_term` over all terms,
/// combining like states and dropping zero coefficients. Output is sorted by
/// bitmask.
pub fn apply_supercharge(q: &SuperchargeSpec, s: FockState) -> Result<Vec<(i64, FockState)>> {
    if s.sites < q.sites {
        return Err(Error::Domain(format!(
            "state lives on {} sites but the supercharge needs {}",
            s.sites, q.sites
        )));
    }
    let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
    for term in &q.terms {
        if let Some((coeff, out)) = apply_term(term, s)? {
            let slot = acc.entry(out.mask()).or_insert(0);
            *slot += coeff;
            if *slot == 0 {
                acc.remove(&out.mask());
            }
        }
    }
    Ok(acc
        .into_iter()
        .map(|(mask, coeff)| (coeff, FockState { mask, sites: s.sites }))
        .collect())
}

/// The Nicolai supercharge `sum_{i=1..m} c_{2i-1} c+_{2i} c_{2i+1}` on
/// `2m+1` sites; every term has degree -1.
pub fn nicolai_supercharge(m: u32) -> Result<SuperchargeSpec> {
    if m < 1 {
        return Err(Error::Domain("nicolai supercharge needs m >= 1".into()));
    }
    let sites = 2 * m + 1;
    if sites > MAX_SITES {
        return Err(Error::Domain(format!(
            "m={m} needs {sites} sites, beyond the {MAX_SITES}-site limit"
        )));
    }
    let terms = (1..=m)
        .map(|i| {
            MonomialTerm::new(
                1,
                vec![
                    OperatorLetter::annihilate(2 * i - 1),
                    OperatorLetter::create(2 * i),
                    OperatorLetter::annihilate(2 * i + 1),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SuperchargeSpec::new(sites, -1, terms)
}

/// The Z2 Nicolai supercharge `sum_{i=1..n-2} c_i c_{i+1} c_{i+2}` on `n`
/// sites; every term has degree -3. For `n < 3` the sum is empty and the
/// operator is zero.
pub fn z2_supercharge(n: u32) -> Result<SuperchargeSpec> {
    if n > MAX_SITES {
        return Err(Error::Domain(format!(
            "chain of {n} sites exceeds the {MAX_SITES}-site limit"
        )));
    }
    let terms = (1..=n.saturating_sub(2))
        .map(|i| {
            MonomialTerm::new(
                1,
                vec![
                    OperatorLetter::annihilate(i),
                    OperatorLetter::annihilate(i + 1),
                    OperatorLetter::annihilate(i + 2),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SuperchargeSpec::new(n, -3, terms)
}

/// Hermitian conjugate of a supercharge: each term reversed with daggers
/// swapped. With respect to the orthonormal monomial basis this is the
/// matrix transpose degree by degree.
pub fn adjoint(q: &SuperchargeSpec) -> SuperchargeSpec {
    SuperchargeSpec {
        sites: q.sites,
        degree: -q.degree,
        terms: q.terms.iter().map(MonomialTerm::adjoint).collect(),
    }
}

/// True iff `Q^2 = 0` on the whole `2^n`-dimensional space, decided by
/// applying the operator twice to every basis monomial and cancelling.
pub fn check_nilpotent(q: &SuperchargeSpec, n: u32) -> Result<bool> {
    if n > MAX_SITES {
        return Err(Error::Domain(format!(
            "chain of {n} sites exceeds the {MAX_SITES}-site limit"
        )));
    }
    if n < q.sites {
        return Err(Error::Domain(format!(
            "state space of {n} sites is smaller than the supercharge's {}",
            q.sites
        )));
    }
    for mask in 0..(1u64 << n) {
        let s = FockState { mask, sites: n };
        let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
        for (c1, s1) in apply_supercharge(q, s)? {
            for (c2, s2) in apply_supercharge(q, s1)? {
                let slot = acc.entry(s2.mask()).or_insert(0);
                *slot += c1 * c2;
                if *slot == 0 {
                    acc.remove(&s2.mask());
                }
            }
        }
        if !acc.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(occ: &[u32], n: u32) -> FockState {
        FockState::from_sites(occ, n).unwrap()
    }

    fn term(coeff: i64, letters: &[OperatorLetter]) -> MonomialTerm {
        MonomialTerm::new(coeff, letters.to_vec()).unwrap()
    }

    #[test]
    fn basis_states_smallest_cases() {
        let empty = basis_states(3, 0).unwrap();
        assert_eq!(empty, vec![st(&[], 3)]);

        let pairs = basis_states(3, 2).unwrap();
        assert_eq!(pairs, vec![st(&[1, 2], 3), st(&[1, 3], 3), st(&[2, 3], 3)]);
    }

    #[test]
    fn basis_states_rejects_degree_out_of_range() {
        assert!(matches!(basis_states(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn annihilate_past_one_generator_flips_sign() {
        let out = apply_letter(OperatorLetter::annihilate(2), st(&[1, 2], 3))
            .unwrap()
            .unwrap();
        assert_eq!(out.sign, -1);
        assert_eq!(out.state, st(&[1], 3));
    }

    #[test]
    fn annihilate_empty_site_vanishes() {
        assert_eq!(
            apply_letter(OperatorLetter::annihilate(2), st(&[1, 3], 3)).unwrap(),
            None
        );
    }

    #[test]
    fn create_reorders_past_lower_generators() {
        let out = apply_letter(OperatorLetter::create(2), st(&[1, 3], 3))
            .unwrap()
            .unwrap();
        assert_eq!(out.sign, -1);
        assert_eq!(out.state, st(&[1, 2, 3], 3));
    }

    #[test]
    fn letter_site_out_of_range_is_rejected() {
        assert!(apply_letter(OperatorLetter::create(4), st(&[], 3)).is_err());
    }

    #[test]
    fn nicolai_term_on_end_states() {
        let t = term(
            1,
            &[
                OperatorLetter::annihilate(1),
                OperatorLetter::create(2),
                OperatorLetter::annihilate(3),
            ],
        );
        assert_eq!(apply_term(&t, st(&[1, 3], 3)).unwrap(), Some((1, st(&[2], 3))));
        assert_eq!(apply_term(&t, st(&[1, 2], 3)).unwrap(), None);
    }

    #[test]
    fn triple_annihilation_sign() {
        let t = term(
            1,
            &[
                OperatorLetter::annihilate(1),
                OperatorLetter::annihilate(2),
                OperatorLetter::annihilate(3),
            ],
        );
        assert_eq!(apply_term(&t, st(&[1, 2, 3], 3)).unwrap(), Some((-1, st(&[], 3))));
    }

    #[test]
    fn supercharge_application_combines_terms() {
        let q = nicolai_supercharge(1).unwrap();
        assert_eq!(
            apply_supercharge(&q, st(&[1, 3], 3)).unwrap(),
            vec![(1, st(&[2], 3))]
        );
        assert_eq!(apply_supercharge(&q, st(&[1, 2, 3], 3)).unwrap(), vec![]);

        let z = z2_supercharge(4).unwrap();
        assert_eq!(
            apply_supercharge(&z, st(&[1, 2, 3], 4)).unwrap(),
            vec![(-1, st(&[], 4))]
        );
    }

    #[test]
    fn builtin_supercharge_shapes() {
        let q1 = nicolai_supercharge(1).unwrap();
        assert_eq!(q1.sites(), 3);
        assert_eq!(q1.degree(), -1);
        assert_eq!(q1.terms().len(), 1);
        assert_eq!(q1.terms()[0].to_string(), "a1 c2 a3");

        let q2 = nicolai_supercharge(2).unwrap();
        assert_eq!(q2.sites(), 5);
        assert_eq!(q2.terms().len(), 2);
        assert_eq!(q2.terms()[1].to_string(), "a3 c4 a5");

        let q3 = nicolai_supercharge(3).unwrap();
        assert_eq!((q3.sites(), q3.degree(), q3.terms().len()), (7, -1, 3));

        assert!(nicolai_supercharge(0).is_err());

        let z3 = z2_supercharge(3).unwrap();
        assert_eq!(z3.terms().len(), 1);
        assert_eq!(z3.terms()[0].to_string(), "a1 a2 a3");
        assert_eq!(z2_supercharge(5).unwrap().terms().len(), 3);
        let z2 = z2_supercharge(2).unwrap();
        assert_eq!(z2.terms().len(), 0);
        assert_eq!(z2.degree(), -3);
    }

    #[test]
    fn adjoint_reverses_and_daggers() {
        let t = term(
            1,
            &[
                OperatorLetter::annihilate(1),
                OperatorLetter::create(2),
                OperatorLetter::annihilate(3),
            ],
        );
        assert_eq!(t.adjoint().to_string(), "c3 a2 c1");

        let u = term(
            1,
            &[
                OperatorLetter::annihilate(1),
                OperatorLetter::annihilate(2),
                OperatorLetter::annihilate(3),
            ],
        );
        assert_eq!(u.adjoint().to_string(), "c3 c2 c1");

        let q = nicolai_supercharge(2).unwrap();
        assert_eq!(adjoint(&adjoint(&q)), q);
    }

    #[test]
    fn builtin_supercharges_are_nilpotent() {
        let q = nicolai_supercharge(3).unwrap();
        assert!(check_nilpotent(&q, 7).unwrap());
        let z = z2_supercharge(8).unwrap();
        assert!(check_nilpotent(&z, 8).unwrap());
    }

    #[test]
    fn overlapping_mixed_terms_need_not_be_nilpotent() {
        // a1 c2 a3 + a2 c3 a4 squares to something nonzero: on {1,3,4} the
        // first term gives +{2,4} and the second then gives +{3}.
        let q = SuperchargeSpec::new(
            4,
            -1,
            vec![
                term(
                    1,
                    &[
                        OperatorLetter::annihilate(1),
                        OperatorLetter::create(2),
                        OperatorLetter::annihilate(3),
                    ],
                ),
                term(
                    1,
                    &[
                        OperatorLetter::annihilate(2),
                        OperatorLetter::create(3),
                        OperatorLetter::annihilate(4),
                    ],
                ),
            ],
        )
        .unwrap();
        assert!(!check_nilpotent(&q, 4).unwrap());
    }

    #[test]
    fn duplicate_letter_rejected() {
        let dup = MonomialTerm::new(
            1,
            vec![OperatorLetter::annihilate(1), OperatorLetter::annihilate(1)],
        );
        assert!(matches!(dup, Err(Error::Domain(_))));
    }

    #[test]
    fn mixed_degree_terms_rejected() {
        let t1 = term(1, &[OperatorLetter::annihilate(1)]);
        let t2 = term(1, &[OperatorLetter::create(1), OperatorLetter::create(2)]);
        assert!(SuperchargeSpec::new(2, -1, vec![t1, t2]).is_err());
    }

    #[test]
    fn same_letter_twice_vanishes() {
        for n in 1..=5u32 {
            for mask in 0..(1u64 << n) {
                let s = FockState::from_mask(mask, n).unwrap();
                for site in 1..=n {
                    for letter in [OperatorLetter::annihilate(site), OperatorLetter::create(site)] {
                        if let Some(mid) = apply_letter(letter, s).unwrap() {
                            assert_eq!(apply_letter(letter, mid.state).unwrap(), None);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_anticommutators() {
        // {c_i, c+_j} = delta_ij on every basis state for small chains.
        for n in 1..=6u32 {
            for i in 1..=n {
                for j in 1..=n {
                    for mask in 0..(1u64 << n) {
                        let s = FockState::from_mask(mask, n).unwrap();
                        let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
                        for (first, second) in [
                            (OperatorLetter::create(j), OperatorLetter::annihilate(i)),
                            (OperatorLetter::annihilate(i), OperatorLetter::create(j)),
                        ] {
                            if let Some(a) = apply_letter(first, s).unwrap() {
                                if let Some(b) = apply_letter(second, a.state).unwrap() {
                                    *acc.entry(b.state.mask()).or_insert(0) +=
                                        i64::from(a.sign) * i64::from(b.sign);
                                }
                            }
                        }
                        acc.retain(|_, v| *v != 0);
                        if i == j {
                            assert_eq!(acc, BTreeMap::from([(mask, 1)]));
                        } else {
                            assert!(acc.is_empty(), "{{c_{i}, c+_{j}}} != 0 on {s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn supercharge_shifts_degree_exactly() {
        for (q, n) in [(nicolai_supercharge(2).unwrap(), 5), (z2_supercharge(6).unwrap(), 6)] {
            for mask in 0..(1u64 << n) {
                let s = FockState::from_mask(mask, n).unwrap();
                for (_, out) in apply_supercharge(&q, s).unwrap() {
                    assert_eq!(
                        i64::from(out.degree()),
                        i64::from(s.degree()) + i64::from(q.degree())
                    );
                }
            }
        }
    }

    #[test]
    fn basis_sizes_sum_to_dimension() {
        for n in 0..=12u32 {
            let mut total = 0u64;
            for d in 0..=n {
                let states = basis_states(n, d).unwrap();
                for pair in states.windows(2) {
                    assert!(pair[0].mask() < pair[1].mask());
                }
                total += states.len() as u64;
            }
            assert_eq!(total, 1 << n);
        }
    }
}
