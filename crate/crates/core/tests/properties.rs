//! Property tests for the algebraic invariants.

use euctower_core::euclid_partitions::{
    claimed_partition, orbit_dim, slow_euclid_pairs, transpose, DivisionChain, Partition,
};
use euctower_core::exact_linalg::{random_invertible, ExactMatrix, Scalar, ScalarDomain};
use proptest::prelude::*;

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |entries| {
        ExactMatrix::from_fn(rows, cols, ScalarDomain::Rational, |r, c| {
            Scalar::from_i64(ScalarDomain::Rational, entries[r * cols + c])
        })
    })
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1usize..=6, 1..6).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    })
}

proptest! {
    #[test]
    fn rank_is_invariant_under_invertible_translation(
        m in rational_matrix(3, 4),
        seed_g in 0u64..50,
        seed_h in 50u64..100,
    ) {
        let g = random_invertible(3, seed_g);
        let h = random_invertible(4, seed_h);
        let moved = g.matmul(&m).unwrap().matmul(&h).unwrap();
        prop_assert_eq!(moved.rank().unwrap(), m.rank().unwrap());
    }

    #[test]
    fn kernel_dimension_complements_rank(m in rational_matrix(3, 5)) {
        let rank = m.rank().unwrap();
        let kernel = m.kernel_basis().unwrap();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            let col = ExactMatrix::from_fn(5, 1, ScalarDomain::Rational, |r, _| v[r].clone());
            prop_assert!(m.matmul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn transpose_is_an_involution(p in partition_strategy()) {
        prop_assert_eq!(transpose(&transpose(&p)), p);
    }

    #[test]
    fn orbit_dimension_is_even(p in partition_strategy()) {
        prop_assert_eq!(orbit_dim(&p) % 2, 0);
    }

    #[test]
    fn chain_invariants_for_random_pairs(n1 in 2usize..40, n2 in 1usize..39) {
        prop_assume!(n2 < n1);
        match DivisionChain::new(n1, n2) {
            Err(_) => {
                // non-coprime pairs must be the only rejection here
                prop_assert!(gcd(n1, n2) != 1);
            }
            Ok(chain) => {
                prop_assert_eq!(gcd(n1, n2), 1);
                // the divisions replay to the input
                let (r, k) = (chain.remainders(), chain.quotients());
                for i in 0..chain.s() {
                    prop_assert_eq!(r[i], r[i + 1] * k[i] + r[i + 2]);
                }
                // the claimed partition has total n1 + n2
                prop_assert_eq!(claimed_partition(&chain).n(), n1 + n2);
                // dimension identity against the subtraction chain
                let dim_df: usize = slow_euclid_pairs(&chain).iter().map(|&(a, b)| a * b).sum();
                prop_assert_eq!(orbit_dim(&claimed_partition(&chain)), 2 * dim_df);
            }
        }
    }

    #[test]
    fn cyclotomic_arithmetic_distributes(
        a in proptest::collection::vec(-3i64..=3, 2),
        b in proptest::collection::vec(-3i64..=3, 2),
        c in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let mk = |v: &[i64]| {
            Scalar::from_i64(ScalarDomain::Cyclotomic(3), v[0])
                .add(&Scalar::zeta_pow(3, 1).mul(&Scalar::from_i64(ScalarDomain::Cyclotomic(3), v[1])))
        };
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert!(x.sub(&x).is_zero());
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
