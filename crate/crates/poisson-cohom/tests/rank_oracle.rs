//! The sparse rank/kernel routines agree with a dense rational Gaussian
//! elimination on random integer matrices.

use poisson_cohom::algebra::int;
use poisson_cohom::linalg::{rank, SparseMatrix};
use proptest::prelude::*;

mod support;

use support::{checks, dense_rank};

#[test]
fn sparse_rank_matches_dense_oracle() {
    checks::rank_oracle(200).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn large_entries_fall_back_to_big_integers(seed in proptest::collection::vec(1i64..=9, 12)) {
        // Products of many entries overflow 64 bits during elimination.
        let rows: Vec<Vec<i64>> = (0..12)
            .map(|i| (0..12).map(|j| seed[(i * 5 + j * 7) % 12].pow(((i + j) % 9) as u32 + 10) % 1_000_000_007).collect())
            .collect();
        let dense: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        prop_assert_eq!(rank(&SparseMatrix::from_dense(&dense)), dense_rank(&rows));
    }
}

#[test]
fn degenerate_shapes() {
    assert_eq!(rank(&SparseMatrix::zeros(0, 5)), 0);
    assert_eq!(rank(&SparseMatrix::zeros(4, 0)), 0);
    assert_eq!(rank(&SparseMatrix::identity(7)), 7);
}
