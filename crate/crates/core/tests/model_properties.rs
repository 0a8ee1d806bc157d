//! Property tests for the rank engines and polynomial algebra.

use nicolai::linalg::{self, FieldSpec, RankMode, SparseMatrix};
use nicolai::PoincarePolynomial;
use proptest::prelude::*;

fn sparse_matrix() -> impl Strategy<Value = SparseMatrix> {
    (0u32..=8, 0u32..=8).prop_flat_map(|(rows, cols)| {
        if rows == 0 || cols == 0 {
            Just(SparseMatrix::zero(rows, cols)).boxed()
        } else {
            proptest::collection::btree_map(
                (0..rows, 0..cols),
                (-4i64..=4).prop_filter("nonzero", |v| *v != 0),
                0..=20,
            )
            .prop_map(move |entries| {
                SparseMatrix::new(
                    rows,
                    cols,
                    entries.into_iter().map(|((r, c), v)| (r, c, v)).collect(),
                )
                .unwrap()
            })
            .boxed()
        }
    })
}

fn poly() -> impl Strategy<Value = PoincarePolynomial> {
    proptest::collection::vec(0u64..=6, 0..=8).prop_map(|dims| PoincarePolynomial::from_dims(&dims))
}

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose(m in sparse_matrix()) {
        let t = m.transpose();
        for field in [FieldSpec::PrimeField(2_147_483_647), FieldSpec::ExactRational] {
            prop_assert_eq!(
                linalg::rank(&m, &field).unwrap(),
                linalg::rank(&t, &field).unwrap()
            );
        }
    }

    #[test]
    fn rank_is_bounded(m in sparse_matrix()) {
        let r = linalg::rank(&m, &FieldSpec::ExactRational).unwrap();
        prop_assert!(r <= m.rows().min(m.cols()) as usize);
        prop_assert_eq!(
            linalg::kernel_dim(&m, &FieldSpec::ExactRational).unwrap(),
            m.cols() as usize - r
        );
    }

    #[test]
    fn rank_survives_permutations(
        (m, rp, cp) in sparse_matrix().prop_flat_map(|m| {
            let rp = Just((0..m.rows()).collect::<Vec<u32>>()).prop_shuffle();
            let cp = Just((0..m.cols()).collect::<Vec<u32>>()).prop_shuffle();
            (Just(m), rp, cp)
        })
    ) {
        let permuted = SparseMatrix::new(
            m.rows(),
            m.cols(),
            m.entries()
                .iter()
                .map(|&(r, c, v)| (rp[r as usize], cp[c as usize], v))
                .collect(),
        )
        .unwrap();
        for field in [FieldSpec::PrimeField(65_537), FieldSpec::ExactRational] {
            prop_assert_eq!(
                linalg::rank(&m, &field).unwrap(),
                linalg::rank(&permuted, &field).unwrap()
            );
        }
    }

    #[test]
    fn two_prime_protocol_matches_exact_rank(m in sparse_matrix(), seed in any::<u64>()) {
        let protocol = linalg::rank_with_mode(&m, &RankMode::TwoPrime { seed }).unwrap();
        let exact = linalg::rank(&m, &FieldSpec::ExactRational).unwrap();
        prop_assert_eq!(protocol.rank, exact);
    }

    #[test]
    fn triplet_text_round_trips(m in sparse_matrix()) {
        let parsed = SparseMatrix::from_triplet_text(&m.to_triplet_text()).unwrap();
        prop_assert_eq!(parsed, m);
    }

    #[test]
    fn suspension_is_additive(p in poly(), j in 0i32..5, k in 0i32..5) {
        let two_step = nicolai::hpl::suspend(&nicolai::hpl::suspend(&p, j).unwrap(), k).unwrap();
        let one_step = nicolai::hpl::suspend(&p, j + k).unwrap();
        prop_assert_eq!(two_step, one_step);
        prop_assert_eq!(nicolai::hpl::suspend(&p, 0).unwrap(), p);
    }

    #[test]
    fn polynomial_addition_commutes(p in poly(), q in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        use num_traits::Zero;
        let sum = p.add(&q);
        prop_assert_eq!(sum.evaluate_one(), p.evaluate_one() + q.evaluate_one());
        prop_assert!((sum.evaluate_minus_one()
            - p.evaluate_minus_one()
            - q.evaluate_minus_one())
        .is_zero());
    }
}
