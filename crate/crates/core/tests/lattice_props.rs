mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pinchlink_core::zlattice::{cokernel, kernel_rank, smith_normal_form};
use pinchlink_core::{AbelianGroup, IntMatrix};
use proptest::prelude::*;

fn small_matrix(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(lo..=hi, c), r))
}

fn permute_rows(m: &[Vec<i64>], perm: &[usize]) -> Vec<Vec<i64>> {
    perm.iter().map(|&i| m[i].clone()).collect()
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in small_matrix(5, -9, 9)) {
        let m = to_matrix(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.s.clone());
        prop_assert!(snf.u.determinant().unwrap().abs().is_one());
        prop_assert!(snf.v.determinant().unwrap().abs().is_one());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.diagonal();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn invariant_factors_match_minor_gcds(rows in small_matrix(4, -3, 3)) {
        let snf = smith_normal_form(&to_matrix(&rows));
        let expected: Vec<BigInt> = minor_gcd_invariant_factors(&rows).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(snf.invariant_factors(), expected);
    }

    #[test]
    fn kernel_rank_matches_rational_elimination(rows in small_matrix(6, -4, 4)) {
        let m = to_matrix(&rows);
        prop_assert_eq!(kernel_rank(&m), m.cols() - rational_rank(&rows));
        prop_assert_eq!(m.rank(), rational_rank(&rows));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..6, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rows = random_matrix(&mut rng, n, n, -5, 5);
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        prop_assert_eq!(to_matrix(&rows).determinant(), Some(BigInt::from(laplace_det(&wide))));
    }

    #[test]
    fn cokernel_invariant_under_permutation_and_zero_columns(
        rows in small_matrix(5, -6, 6),
        seed in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = cokernel(&to_matrix(&rows));

        let mut rperm: Vec<usize> = (0..rows.len()).collect();
        rperm.shuffle(&mut rng);
        prop_assert_eq!(cokernel(&to_matrix(&permute_rows(&rows, &rperm))), g.clone());

        let t: Vec<Vec<i64>> = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        let mut cperm: Vec<usize> = (0..t.len()).collect();
        cperm.shuffle(&mut rng);
        let permuted_t = permute_rows(&t, &cperm);
        let back: Vec<Vec<i64>> = (0..rows.len()).map(|i| permuted_t.iter().map(|c| c[i]).collect()).collect();
        prop_assert_eq!(cokernel(&to_matrix(&back)), g.clone());

        let mut wider = to_matrix(&rows);
        wider.push_column(&vec![BigInt::zero(); rows.len()]);
        prop_assert_eq!(cokernel(&wider), g);
    }

    #[test]
    fn group_text_round_trips(rank in 0usize..4, orders in prop::collection::vec(0i64..30, 0..4)) {
        let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
        let g = AbelianGroup::from_cyclic_orders(&orders).direct_sum(&AbelianGroup::free(rank));
        prop_assert_eq!(g.to_string().parse::<AbelianGroup>().unwrap(), g);
    }
}

#[test]
fn cokernel_of_square_matrix_has_order_det() {
    let m = IntMatrix::from_rows([[3, 1, 0], [1, 2, 1], [0, 1, 4]]).unwrap();
    let det = m.determinant().unwrap();
    assert_eq!(cokernel(&m).order(), Some(det.abs()));
}
