//! Exhaustive finite-model invariants at the smallest size, plus
//! orthogonality instances with hand-computable values.

use euctower_core::exact_linalg::{Scalar, ScalarDomain};
use euctower_core::finite_model::{
    coefficient_equivariance_exhaustive, f_sum, fourier_coefficient, prop1_orbit_identity,
    random_automorphic, v1_character_coefficient, AutFunction, BaseSpace, EnumLimits,
    FiniteContext,
};

fn ctx(q: u64) -> FiniteContext {
    FiniteContext::new(2, 1, q, &EnumLimits::default()).unwrap()
}

#[test]
fn coefficient_equivariance_is_exhaustive_at_q2() {
    let c = ctx(2);
    for seed in 0..3 {
        let phi = random_automorphic(&c, BaseSpace::Parabolic, seed);
        assert!(coefficient_equivariance_exhaustive(&c, &phi).unwrap(), "seed {seed}");
    }
}

#[test]
fn single_character_function_is_picked_up_once() {
    // phi restricting to one full-rank character of V_1: the open-orbit sum
    // sees exactly that term, and the coset sum matches it.
    for q in [2u64, 3] {
        let c = ctx(q);
        let s: Vec<u64> = vec![1, 0]; // reads the (1,3) coordinate; rank 1
        let mut values = vec![Scalar::zero(ScalarDomain::Cyclotomic(q)); c.p1.len()];
        for (pos, &m) in c.v1.elems.iter().enumerate() {
            let sv: u64 = s
                .iter()
                .zip(&c.v1.coords[pos])
                .fold(0, |acc, (&sj, &tj)| (acc + sj * tj) % q);
            values[m as usize] = Scalar::zeta_pow(q, (q - sv) % q);
        }
        let phi = AutFunction { base: BaseSpace::Parabolic, q, values, central_invariant: false };

        let e = c.p1.identity();
        let one = Scalar::one(ScalarDomain::Cyclotomic(q));
        // the S-coefficient itself is one at the identity, any other
        // character's coefficient vanishes (orthogonality)
        assert_eq!(v1_character_coefficient(&c, &s, &phi, (e, e)).unwrap(), one);
        let other = vec![0, 1];
        assert!(v1_character_coefficient(&c, &other, &phi, (e, e)).unwrap().is_zero());

        let out = prop1_orbit_identity(&c, &phi, 0, Some(6)).unwrap();
        assert!(out.pass);
        assert_eq!(out.lhs_identity, one);
        assert_eq!(out.rhs_identity, one);
    }
}

#[test]
fn support_off_the_unipotent_cone_contributes_nothing() {
    // phi concentrated on an element of order three: over F_2 such an
    // element is never unipotent, so no translate m * gamma * g lands in the
    // support and every coefficient in the expansion sum vanishes.
    let c = ctx(2);
    let q = c.q();
    // block diag([0 1; 1 1], 1), the companion of x^2 + x + 1
    let mut w = euctower_core::finite_model::FqMat::zero(3, q);
    w.set(0, 1, 1);
    w.set(1, 0, 1);
    w.set(1, 1, 1);
    w.set(2, 2, 1);
    let idx = c.p1.index_of(&w).unwrap() as usize;
    let mut values = vec![Scalar::zero(ScalarDomain::Cyclotomic(q)); c.p1.len()];
    values[idx] = Scalar::one(ScalarDomain::Cyclotomic(q));
    let phi = AutFunction { base: BaseSpace::Parabolic, q, values, central_invariant: false };

    let e = c.p1.identity();
    assert!(fourier_coefficient(&c, &phi, (e, e)).unwrap().is_zero());
    assert!(f_sum(&c, &phi, (e, e)).unwrap().is_zero());
}

#[test]
fn equivariance_constants_match_psi() {
    // spot instance of the equivariance factor: translating by
    // v = (unipotent with F = 1, identity) multiplies the coefficient by
    // zeta^1
    let c = ctx(3);
    let phi = random_automorphic(&c, BaseSpace::Parabolic, 42);
    let e = c.p1.identity();
    let base = fourier_coefficient(&c, &phi, (e, e)).unwrap();
    let (pos, &m1) =
        c.df.elems.iter().enumerate().find(|&(pos, _)| c.df.f_vals[pos] == 1).unwrap();
    assert_eq!(c.df.f_vals[pos], 1);
    let shifted = fourier_coefficient(&c, &phi, (m1, e)).unwrap();
    assert_eq!(shifted, base.mul_zeta_pow(1));
}
