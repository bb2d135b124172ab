//! Exact-arithmetic verification kernel for a descent tower of parabolic
//! subgroups indexed by the Euclidean algorithm.
//!
//! Given a coprime pair `n1 > n2 >= 1`, the crate builds an explicit chain of
//! unipotent subgroups `V_1, V_2, ...` of `GL_{n1+n2}` together with a
//! character of their product, verifies the defining open-orbit and stabilizer
//! properties of the chain by exact Lie-algebra computations over the
//! rationals, and checks that the nilpotent matrix distilled from the
//! character lands in the orbit predicted by two closed-form partition
//! computations.  A finite "doubled-field" model (a finite field embedded
//! diagonally in its square) turns the adelic Fourier-expansion and unfolding
//! identities of the same construction into exact finite sums over cyclotomic
//! numbers, checked by brute force.
//!
//! The crate is `no_std` (with `alloc`); all input/output, JSON formats and
//! the command-line front end live in the companion `euctower-cli` crate.
//!
//! Module map:
//! - [`exact_linalg`]: dense matrices over exact scalars (rationals, prime
//!   fields, cyclotomic rationals) with elimination-based rank and kernel.
//! - [`euclid_partitions`]: the division chain, its slow (subtraction-only)
//!   refinement, and the two closed-form orbit partitions.
//! - [`tower`]: the inductive construction of the subgroup chain and its
//!   per-step verification.
//! - [`orbit_lemma`]: Jordan types by rank-of-powers and the per-pair orbit
//!   report assembling all three partition computations.
//! - [`finite_model`]: the doubled-field model, finite Fourier analysis on
//!   unipotent groups, and the expansion/unfolding checks.

#![no_std]

extern crate alloc;

pub mod euclid_partitions;
pub mod exact_linalg;
pub mod finite_model;
pub mod orbit_lemma;
pub mod tower;
