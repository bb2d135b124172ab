//! Automorphic functions of the doubled-field model.
//!
//! A left-`k`-invariant function on `B(A) = B(E) x B(E)` is determined by its
//! restriction `phi_0` to the second coordinate of the coset representatives
//! `(x, y) ~ x^{-1} y`, so a function is stored as one cyclotomic value per
//! element of `B(E)`; evaluation is `phi(x, y) = phi_0(x^{-1} y)`.  Left
//! invariance under the diagonal `k`-points holds by construction and is
//! still spot-checked, since it exercises the table indexing.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::context::FiniteContext;
use super::group::GroupTable;
use super::FiniteError;
use crate::exact_linalg::Scalar;

/// The base group of an automorphic function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSpace {
    /// The block parabolic `P_1` of `GL_{n1+n2}`.
    Parabolic,
    /// The `GL_{n1}` factor (the base of the second unfolding function).
    GeneralLinear,
}

/// A left-`k`-invariant function on the `A`-points of its base group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutFunction {
    pub base: BaseSpace,
    pub q: u64,
    /// One value per base-table element.
    pub values: Vec<Scalar>,
    /// Set by [`central_projector`]; consumers requiring central invariance
    /// check the flag and re-verify.
    pub central_invariant: bool,
}

impl FiniteContext {
    pub(super) fn table_of(&self, base: BaseSpace) -> &GroupTable {
        match base {
            BaseSpace::Parabolic => &self.p1,
            BaseSpace::GeneralLinear => &self.gl1,
        }
    }

    pub(super) fn scalars_of(&self, base: BaseSpace) -> &[u32] {
        match base {
            BaseSpace::Parabolic => &self.z_elems,
            BaseSpace::GeneralLinear => &self.gl1_z,
        }
    }

    /// `phi(x, y)` by table lookup.
    #[inline]
    pub fn eval_pair<'a>(&self, phi: &'a AutFunction, x: u32, y: u32) -> &'a Scalar {
        let t = self.table_of(phi.base);
        &phi.values[t.mul(t.invert(x), y) as usize]
    }

    pub(super) fn check_base(&self, phi: &AutFunction, base: BaseSpace) -> Result<(), FiniteError> {
        let t = self.table_of(base);
        if phi.base != base || phi.q != t.q || phi.values.len() != t.len() {
            return Err(FiniteError::DomainMismatch {
                detail: format!(
                    "function on {:?} with {} values does not match the {:?} table of size {}",
                    phi.base,
                    phi.values.len(),
                    base,
                    t.len()
                ),
            });
        }
        Ok(())
    }
}

/// A deterministic-from-seed function: independent small-integer cyclotomic
/// values on the coset representatives, extended by left invariance.
pub fn random_automorphic(ctx: &FiniteContext, base: BaseSpace, seed: u64) -> AutFunction {
    let table = ctx.table_of(base);
    let q = table.q;
    let deg = (q - 1) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..table.len())
        .map(|_| {
            let coeffs: Vec<BigRational> = (0..deg)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2))))
                .collect();
            Scalar::Cyclotomic { p: q, coeffs }
        })
        .collect();
    AutFunction { base, q, values, central_invariant: false }
}

/// Average over the scalar subgroup of the base group; the result is exactly
/// invariant under the `A`-points of that subgroup, and the projector is
/// idempotent.
pub fn central_projector(ctx: &FiniteContext, phi: &AutFunction) -> AutFunction {
    let table = ctx.table_of(phi.base);
    let scalars = ctx.scalars_of(phi.base);
    let values: Vec<Scalar> = (0..table.len() as u32)
        .map(|i| {
            let mut acc = Scalar::zero(phi.values[0].domain());
            for &z in scalars {
                acc = acc.add(&phi.values[table.mul(z, i) as usize]);
            }
            acc.div_nat(scalars.len() as u64)
        })
        .collect();
    AutFunction { base: phi.base, q: phi.q, values, central_invariant: true }
}

/// Exhaustive central-invariance check of the stored values: `phi_0(z m) =
/// phi_0(m)` for every scalar `z` and every element.
pub fn is_centrally_invariant(ctx: &FiniteContext, phi: &AutFunction) -> bool {
    let table = ctx.table_of(phi.base);
    let scalars = ctx.scalars_of(phi.base);
    (0..table.len() as u32).all(|i| {
        scalars.iter().all(|&z| phi.values[table.mul(z, i) as usize] == phi.values[i as usize])
    })
}

/// Spot-check of left invariance under diagonal `k`-points on random
/// `(gamma, g)` samples.
pub fn spot_check_left_invariance(
    ctx: &FiniteContext,
    phi: &AutFunction,
    seed: u64,
    samples: usize,
) -> bool {
    let table = ctx.table_of(phi.base);
    let len = table.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let gamma = rng.gen_range(0..len);
        let x = rng.gen_range(0..len);
        let y = rng.gen_range(0..len);
        ctx.eval_pair(phi, table.mul(gamma, x), table.mul(gamma, y)) == ctx.eval_pair(phi, x, y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_model::EnumLimits;

    fn ctx21(q: u64) -> FiniteContext {
        FiniteContext::new(2, 1, q, &EnumLimits::default()).unwrap()
    }

    #[test]
    fn random_function_is_seed_deterministic() {
        let ctx = ctx21(2);
        let a = random_automorphic(&ctx, BaseSpace::Parabolic, 5);
        let b = random_automorphic(&ctx, BaseSpace::Parabolic, 5);
        let c = random_automorphic(&ctx, BaseSpace::Parabolic, 6);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn left_invariance_spot_checks() {
        let ctx = ctx21(3);
        let phi = random_automorphic(&ctx, BaseSpace::Parabolic, 0);
        assert!(spot_check_left_invariance(&ctx, &phi, 17, 50));
        let phip = random_automorphic(&ctx, BaseSpace::GeneralLinear, 0);
        assert!(spot_check_left_invariance(&ctx, &phip, 17, 50));
    }

    #[test]
    fn projector_is_idempotent_and_invariant() {
        for q in [2u64, 3] {
            let ctx = ctx21(q);
            let phi = random_automorphic(&ctx, BaseSpace::Parabolic, 9);
            let p = central_projector(&ctx, &phi);
            assert!(is_centrally_invariant(&ctx, &p));
            assert_eq!(central_projector(&ctx, &p), p);
            let pp = central_projector(&ctx, &random_automorphic(&ctx, BaseSpace::GeneralLinear, 9));
            assert!(is_centrally_invariant(&ctx, &pp));
        }
    }
}
