//! Independent oracles for the operator algebra and cross-route agreement
//! on published or hand-derived values.
//!
//! The oracles here deliberately avoid the library's bitmask code paths: the
//! exterior-algebra oracle works on sorted site lists, the binomial oracle on
//! a Pascal triangle, and the nilpotency oracle squares the operator over the
//! list-monomial basis.

use std::collections::BTreeMap;

use nicolai::fock::{
    self, apply_letter, apply_term, basis_states, check_nilpotent, nicolai_supercharge,
    z2_supercharge, FockState, LetterKind, MonomialTerm, OperatorLetter, SuperchargeSpec,
};
use nicolai::homology::{self, HomologyOptions};
use nicolai::hpl;
use nicolai::linalg::{FieldSpec, RankMode};
use nicolai::recursion;
use nicolai::{Model, PoincarePolynomial};
use num_bigint::BigUint;

fn rational() -> HomologyOptions {
    HomologyOptions::with_mode(RankMode::Field(FieldSpec::ExactRational))
}

fn st(occ: &[u32], n: u32) -> FockState {
    FockState::from_sites(occ, n).unwrap()
}

// ---------------------------------------------------------------------------
// Exterior-algebra oracle: monomials as sorted site lists, signs from list
// positions instead of popcounts.

fn oracle_letter(letter: OperatorLetter, monomial: &[u32]) -> Option<(i64, Vec<u32>)> {
    let pos = monomial.binary_search(&letter.site);
    match (letter.kind, pos) {
        (LetterKind::Annihilate, Ok(p)) => {
            let mut out = monomial.to_vec();
            out.remove(p);
            Some((if p % 2 == 0 { 1 } else { -1 }, out))
        }
        (LetterKind::Create, Err(p)) => {
            let mut out = monomial.to_vec();
            out.insert(p, letter.site);
            Some((if p % 2 == 0 { 1 } else { -1 }, out))
        }
        _ => None,
    }
}

fn oracle_term(term: &MonomialTerm, monomial: &[u32]) -> Option<(i64, Vec<u32>)> {
    let mut coeff = term.coefficient();
    let mut sites = monomial.to_vec();
    for letter in term.letters().iter().rev() {
        let (sign, next) = oracle_letter(*letter, &sites)?;
        coeff *= sign;
        sites = next;
    }
    Some((coeff, sites))
}

#[test]
fn letters_agree_with_the_list_oracle_exhaustively() {
    for n in 1..=6u32 {
        for d in 0..=n {
            for state in basis_states(n, d).unwrap() {
                let monomial = state.occupied_sites();
                for site in 1..=n {
                    for letter in [OperatorLetter::annihilate(site), OperatorLetter::create(site)] {
                        let got = apply_letter(letter, state).unwrap();
                        let want = oracle_letter(letter, &monomial);
                        match (got, want) {
                            (None, None) => {}
                            (Some(signed), Some((sign, sites))) => {
                                assert_eq!(i64::from(signed.sign), sign);
                                assert_eq!(signed.state.occupied_sites(), sites);
                            }
                            (got, want) => {
                                panic!("{letter} on {state}: impl {got:?} vs oracle {want:?}")
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn term_application_matches_the_oracle_and_hand_values() {
    let nicolai_term = MonomialTerm::new(
        1,
        vec![
            OperatorLetter::annihilate(1),
            OperatorLetter::create(2),
            OperatorLetter::annihilate(3),
        ],
    )
    .unwrap();
    let cube_term = MonomialTerm::new(
        1,
        vec![
            OperatorLetter::annihilate(1),
            OperatorLetter::annihilate(2),
            OperatorLetter::annihilate(3),
        ],
    )
    .unwrap();

    // Hand-evaluated Koszul signs, confirmed by the oracle.
    assert_eq!(oracle_term(&nicolai_term, &[1, 3]), Some((1, vec![2])));
    assert_eq!(apply_term(&nicolai_term, st(&[1, 3], 3)).unwrap(), Some((1, st(&[2], 3))));

    assert_eq!(oracle_term(&cube_term, &[1, 2, 3]), Some((-1, vec![])));
    assert_eq!(apply_term(&cube_term, st(&[1, 2, 3], 3)).unwrap(), Some((-1, st(&[], 3))));

    assert_eq!(oracle_term(&nicolai_term, &[1, 2]), None);
    assert_eq!(apply_term(&nicolai_term, st(&[1, 2], 3)).unwrap(), None);

    // Exhaustive agreement for both built-in shapes on n = 6.
    for q in [nicolai_supercharge(2).unwrap(), z2_supercharge(6).unwrap()] {
        for mask in 0..(1u64 << 6) {
            let state = FockState::from_mask(mask, 6).unwrap();
            for term in q.terms() {
                let got = apply_term(term, state).unwrap();
                let want = oracle_term(term, &state.occupied_sites());
                assert_eq!(
                    got.map(|(c, s)| (c, s.occupied_sites())),
                    want,
                    "term {term} on {state}"
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Pascal-triangle oracle for basis sizes.

fn pascal(n: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64];
        for j in 1..i {
            row.push(prev[j - 1] + prev[j]);
        }
        row.push(1);
        rows.push(row);
    }
    rows
}

#[test]
fn basis_count_matches_pascal() {
    let triangle = pascal(17);
    assert_eq!(triangle[17][8], 24_310);
    assert_eq!(basis_states(17, 8).unwrap().len() as u64, triangle[17][8]);
    for n in 0..=12usize {
        for d in 0..=n {
            assert_eq!(
                basis_states(n as u32, d as u32).unwrap().len() as u64,
                triangle[n][d],
                "C({n},{d})"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Independent nilpotency oracle over list monomials.

fn oracle_is_nilpotent(q: &SuperchargeSpec, n: u32) -> bool {
    for d in 0..=n {
        for state in basis_states(n, d).unwrap() {
            let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
            for t1 in q.terms() {
                if let Some((c1, mid)) = oracle_term(t1, &state.occupied_sites()) {
                    for t2 in q.terms() {
                        if let Some((c2, out)) = oracle_term(t2, &mid) {
                            *acc.entry(out).or_insert(0) += c1 * c2;
                        }
                    }
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
    }
    true
}

#[test]
fn nilpotency_agrees_with_the_oracle() {
    for m in 1..=4 {
        let q = nicolai_supercharge(m).unwrap();
        let n = 2 * m + 1;
        assert!(oracle_is_nilpotent(&q, n));
        assert!(check_nilpotent(&q, n).unwrap());
    }
    for n in 0..=10 {
        let q = z2_supercharge(n).unwrap();
        assert!(oracle_is_nilpotent(&q, n));
        assert!(check_nilpotent(&q, n).unwrap());
    }

    let bad = SuperchargeSpec::new(
        4,
        -1,
        vec![
            MonomialTerm::new(
                1,
                vec![
                    OperatorLetter::annihilate(1),
                    OperatorLetter::create(2),
                    OperatorLetter::annihilate(3),
                ],
            )
            .unwrap(),
            MonomialTerm::new(
                1,
                vec![
                    OperatorLetter::annihilate(2),
                    OperatorLetter::create(3),
                    OperatorLetter::annihilate(4),
                ],
            )
            .unwrap(),
        ],
    )
    .unwrap();
    assert!(!oracle_is_nilpotent(&bad, 4));
    assert!(!check_nilpotent(&bad, 4).unwrap());
}

// ---------------------------------------------------------------------------
// Adjoint = transpose, degree block by degree block.

#[test]
fn adjoint_blocks_are_transposes() {
    for (q, n) in [
        (nicolai_supercharge(2).unwrap(), 5u32),
        (z2_supercharge(6).unwrap(), 6u32),
    ] {
        let qd = fock::adjoint(&q);
        let k = (-q.degree()) as u32;
        for d in k..=n {
            let forward = homology::differential_matrix(&q, n, d).unwrap();
            let backward = homology::differential_matrix(&qd, n, d - k).unwrap();
            assert_eq!(backward, forward.transpose(), "degree {d}");
        }
    }
}

// ---------------------------------------------------------------------------
// Route agreement on published initial values and their continuations.

#[test]
fn nicolai_routes_agree_on_small_chains() {
    let expected = [
        (1u32, vec![1u64, 2, 2, 1]),
        (2, vec![1, 3, 6, 6, 3, 1]),
        (3, vec![1, 4, 11, 16, 16, 11, 4, 1]),
    ];
    for (m, dims) in expected {
        let n = 2 * m + 1;
        let q = nicolai_supercharge(m).unwrap();
        let want = PoincarePolynomial::from_dims(&dims);
        assert_eq!(homology::poincare_polynomial(&q, n, &rational()).unwrap(), want);
        assert_eq!(recursion::nicolai_poly(m).unwrap(), want);
        assert_eq!(hpl::homology_via_hpl(&q, n, &rational()).unwrap(), want);
    }
    let counts: Vec<BigUint> = (1..=4).map(|m| recursion::nicolai_count(m).unwrap()).collect();
    assert_eq!(counts, [6u32, 20, 64, 208].map(BigUint::from).to_vec());
}

#[test]
fn z2_routes_agree_on_small_chains() {
    for n in 0..=8u32 {
        let q = z2_supercharge(n).unwrap();
        let brute = homology::poincare_polynomial(&q, n, &rational()).unwrap();
        let rec = recursion::z2_poly(n).unwrap();
        let via_hpl = hpl::homology_via_hpl(&q, n, &rational()).unwrap();
        assert_eq!(brute, rec, "brute vs recursion at n={n}");
        assert_eq!(via_hpl, rec, "hpl vs recursion at n={n}");
        assert_eq!(brute.evaluate_one(), recursion::z2_count(n));
    }
}

#[test]
fn hamiltonian_oracle_matches_homology_on_small_chains() {
    for (model, sizes) in [
        (Model::Nicolai, vec![3u32, 5]),
        (Model::Z2, (0..=6).collect()),
    ] {
        for n in sizes {
            let q = model.supercharge(n).unwrap();
            let dims = homology::homology_dims(&q, n, &rational()).unwrap();
            for d in 0..=n {
                assert_eq!(
                    homology::hamiltonian_kernel_dim(&q, n, d, 24).unwrap(),
                    dims[d as usize],
                    "{model} n={n} d={d}"
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The structural facts the perturbation route relies on, checked with the
// fock primitives rather than the hpl internals.

fn apply_sum(q: &SuperchargeSpec, v: &BTreeMap<u64, i64>, n: u32) -> BTreeMap<u64, i64> {
    let mut out = BTreeMap::new();
    for (&mask, &coeff) in v {
        let s = FockState::from_mask(mask, n).unwrap();
        for (c, t) in fock::apply_supercharge(q, s).unwrap() {
            let slot = out.entry(t.mask()).or_insert(0);
            *slot += c * coeff;
            if *slot == 0 {
                out.remove(&t.mask());
            }
        }
    }
    out
}

fn apply_one(t: &MonomialTerm, v: &BTreeMap<u64, i64>, n: u32) -> BTreeMap<u64, i64> {
    let mut out = BTreeMap::new();
    for (&mask, &coeff) in v {
        let s = FockState::from_mask(mask, n).unwrap();
        if let Some((c, u)) = apply_term(t, s).unwrap() {
            let slot = out.entry(u.mask()).or_insert(0);
            *slot += c * coeff;
            if *slot == 0 {
                out.remove(&u.mask());
            }
        }
    }
    out
}

#[test]
fn homotopy_sandwich_vanishes_for_builtin_splits() {
    // h d2 h = 0: the witness that truncates the perturbation series.
    for (model, sizes) in [
        (Model::Nicolai, vec![5u32, 7, 9, 11]),
        (Model::Z2, (3..=12).collect()),
    ] {
        for n in sizes {
            let q = model.supercharge(n).unwrap();
            let (d1, d2) = hpl::split_last_term(&q).unwrap();
            let r = hpl::build_retract(&d1, n).unwrap();
            let h = r.homotopy();
            for mask in 0..(1u64 << n) {
                let v = BTreeMap::from([(mask, 1i64)]);
                let hdh = apply_one(h, &apply_sum(&d2, &apply_one(h, &v, n), n), n);
                assert!(hdh.is_empty(), "{model} n={n} mask={mask:#b}");
            }
        }
    }
}

#[test]
fn perturbation_tail_misses_the_representatives() {
    // p d2 h d2 i = 0: the reduced differential is p d2 i alone for the
    // built-in splits.
    for (model, sizes) in [
        (Model::Nicolai, vec![5u32, 7, 9],),
        (Model::Z2, (3..=10).collect()),
    ] {
        for n in sizes {
            let q = model.supercharge(n).unwrap();
            let (d1, d2) = hpl::split_last_term(&q).unwrap();
            let r = hpl::build_retract(&d1, n).unwrap();
            let reps: std::collections::BTreeSet<u64> =
                r.representatives().iter().map(|s| s.mask()).collect();
            for &rep in r.representatives() {
                let v = BTreeMap::from([(rep.mask(), 1i64)]);
                let tail =
                    apply_sum(&d2, &apply_one(r.homotopy(), &apply_sum(&d2, &v, n), n), n);
                for (mask, coeff) in tail {
                    assert!(
                        !reps.contains(&mask) || coeff == 0,
                        "{model} n={n}: tail hits representative {mask:#b}"
                    );
                }
            }
        }
    }
}

#[test]
fn representative_counts_follow_the_local_pattern() {
    // Six of the eight local states survive, tensored with the rest of the
    // chain: 6 * 2^(n-3) representatives.
    for (model, sizes) in [(Model::Nicolai, vec![3u32, 5, 7]), (Model::Z2, vec![3, 4, 5, 6])] {
        for n in sizes {
            let q = model.supercharge(n).unwrap();
            let (d1, _) = hpl::split_last_term(&q).unwrap();
            let r = hpl::build_retract(&d1, n).unwrap();
            assert_eq!(r.representatives().len() as u64, 6 << (n - 3), "{model} n={n}");
            assert_eq!(r.projection_kernel().len() as u64, 2 << (n - 3), "{model} n={n}");
        }
    }
}

#[test]
fn decomposition_checks_brute_forced() {
    assert!(hpl::decomposition_check(Model::Nicolai, 7, &rational()).unwrap());
    assert!(hpl::decomposition_check(Model::Nicolai, 9, &rational()).unwrap());
    assert!(hpl::decomposition_check(Model::Z2, 3, &rational()).unwrap());
    assert!(hpl::decomposition_check(Model::Z2, 5, &rational()).unwrap());
    assert!(hpl::decomposition_check(Model::Z2, 8, &rational()).unwrap());
}
