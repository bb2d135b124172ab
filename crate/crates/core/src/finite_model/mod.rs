//! The doubled-field finite model.
//!
//! The global field is replaced by `E = F_q` embedded diagonally in
//! `A = E x E`.  Every quotient appearing in the expansion and unfolding
//! identities becomes a finite set, every "integral" an exact average valued
//! in `Q(zeta_q)`, and the additive character of `k \ A` is
//! `psi_k(x, y) = zeta^(x - y)`.  The absolute-value factor is modeled by a
//! multiplicative character `eta(x, y) = chi(x / y)` of `A^* / k^*`.
//!
//! Conventions fixed here (and verified at runtime):
//! - quotient integrals are averages (sum divided by the set size), and the
//!   rational-coset sum of [`checks::f_sum`] is averaged too, which makes the
//!   expected ratio of the two unfolding integrals exactly one;
//! - the undefined quotient group of the expansion sum is `Z * V^1` with
//!   `V^1 = prod_{i >= 2} V_i`, the choice whose summand is verified
//!   coset-independent at runtime;
//! - the second factor of the unfolding pairing carries the inverse
//!   character (the companion tower is negated), the unique open-orbit
//!   normalization under which the two sides pair invariantly.

mod autfn;
mod checks;
mod context;
mod group;

pub use autfn::{
    central_projector, is_centrally_invariant, random_automorphic, spot_check_left_invariance,
    AutFunction, BaseSpace,
};
pub use checks::{
    coefficient_equivariance_exhaustive, coefficient_equivariance_sampled, f_sum,
    f_sum_p1_invariant_exhaustive, f_sum_well_defined_exhaustive, fourier_coefficient,
    fourier_inversion_check, prop1_orbit_identity, unfolding_battery, unfolding_check,
    v1_character_coefficient, Prop1Outcome, UnfoldBattery, UnfoldPoint,
};
pub use context::{CoordSet, FiniteContext};
pub use group::{enumerate_gl, FqMat, GroupTable};

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::exact_linalg::Scalar;
use crate::tower::TowerError;

/// Enumeration bounds.  Full runs are configured for `n <= 3, q <= 3`;
/// anything larger must raise the limits explicitly.
#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    /// Cap on brute-force candidate counts (`q^(n^2)` for `GL_n(F_q)`).
    pub max_enumeration: usize,
    /// Cap on materialized multiplication-table side length.
    pub max_table: usize,
}

impl Default for EnumLimits {
    fn default() -> EnumLimits {
        EnumLimits { max_enumeration: 200_000, max_table: 2_048 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteError {
    SizeLimit { what: String, needed: usize, limit: usize },
    NotAGroup { detail: String },
    NotPrime { q: u64 },
    BadCharacter { detail: String },
    DomainMismatch { detail: String },
    /// The character degenerates after reduction mod `q`.
    ModularDegeneration { detail: String },
    /// A coset summand depended on the representative.
    WellDefinednessFailure { detail: String },
    /// The unfolding integrand failed a quotient-invariance precondition.
    IntegrandNotInvariant { detail: String },
    /// The pair is outside the regime where the unfolding quotient is
    /// meaningful (`V^1` must lie inside the leading diagonal block).
    UnsupportedPair { detail: String },
    Tower(TowerError),
}

impl fmt::Display for FiniteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteError::SizeLimit { what, needed, limit } => {
                write!(f, "size limit exceeded for {what}: {needed} > {limit}")
            }
            FiniteError::NotAGroup { detail } => write!(f, "not a group: {detail}"),
            FiniteError::NotPrime { q } => write!(f, "{q} is not prime"),
            FiniteError::BadCharacter { detail } => write!(f, "bad character: {detail}"),
            FiniteError::DomainMismatch { detail } => write!(f, "domain mismatch: {detail}"),
            FiniteError::ModularDegeneration { detail } => {
                write!(f, "character degenerates mod q: {detail}")
            }
            FiniteError::WellDefinednessFailure { detail } => {
                write!(f, "well-definedness failure: {detail}")
            }
            FiniteError::IntegrandNotInvariant { detail } => {
                write!(f, "integrand not invariant: {detail}")
            }
            FiniteError::UnsupportedPair { detail } => write!(f, "unsupported pair: {detail}"),
            FiniteError::Tower(e) => write!(f, "{e}"),
        }
    }
}

impl From<TowerError> for FiniteError {
    fn from(e: TowerError) -> FiniteError {
        FiniteError::Tower(e)
    }
}

/// The doubled field `k = E` diagonal in `A = E x E`, with its additive
/// character valued in `Q(zeta_q)`.
#[derive(Clone, Copy, Debug)]
pub struct ToyAdeleRing {
    pub q: u64,
}

impl ToyAdeleRing {
    pub fn new(q: u64) -> Result<ToyAdeleRing, FiniteError> {
        if q < 2 || (2..q).any(|d| d * d <= q && q % d == 0) {
            return Err(FiniteError::NotPrime { q });
        }
        Ok(ToyAdeleRing { q })
    }

    /// `psi_0(u) = zeta^u`, the fixed nontrivial character of `E`.
    pub fn psi0(&self, u: u64) -> Scalar {
        Scalar::zeta_pow(self.q, u % self.q)
    }

    /// `psi_k(x, y) = psi_0(x) / psi_0(y)`, trivial exactly on the diagonal.
    pub fn psi_k(&self, x: u64, y: u64) -> Scalar {
        self.psi0((x + self.q - y % self.q) % self.q)
    }

    /// The exponent of `psi_k(x, y)^sign`, reduced to `[0, q)`.
    pub fn psi_exponent(&self, x: u64, y: u64, sign: i64) -> u64 {
        let d = (x + self.q - y % self.q) % self.q;
        if sign >= 0 {
            d
        } else {
            (self.q - d) % self.q
        }
    }
}

/// Multiplicative characters of `E^*` with values `+-1`; `eta(x, y) =
/// chi(x / y)` is the finite stand-in for the modulus factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultChar {
    Trivial,
    /// The quadratic residue character; requires odd `q`.
    Quadratic,
}

impl MultChar {
    pub fn from_index(idx: usize, q: u64) -> Result<MultChar, FiniteError> {
        match idx {
            0 => Ok(MultChar::Trivial),
            1 if q > 2 => Ok(MultChar::Quadratic),
            1 => Err(FiniteError::BadCharacter {
                detail: String::from("chi index 1 (quadratic) needs an odd field"),
            }),
            _ => Err(FiniteError::BadCharacter { detail: format!("chi index {idx} out of range") }),
        }
    }

    /// `chi(u)` for `u` in `E^*`, as `+1` or `-1`.
    pub fn value(&self, u: u64, q: u64) -> i64 {
        match self {
            MultChar::Trivial => 1,
            MultChar::Quadratic => {
                let mut r = 1u64;
                let mut base = u % q;
                let mut e = (q - 1) / 2;
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * base % q;
                    }
                    base = base * base % q;
                    e >>= 1;
                }
                if r == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// `eta(x, y)^exponent = chi(x / y)^exponent` as a sign.
    pub fn eta_pow(&self, x: u64, y: u64, exponent: i64, q: u64) -> i64 {
        if exponent.rem_euclid(2) == 0 {
            return match self {
                MultChar::Trivial => 1,
                MultChar::Quadratic => 1,
            };
        }
        let yinv = {
            // y in E^*, q small prime
            let mut r = 1u64;
            let mut base = y % q;
            let mut e = q - 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * base % q;
                }
                base = base * base % q;
                e >>= 1;
            }
            r
        };
        self.value(x % q * yinv % q, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_rejects_composite_sizes() {
        assert!(ToyAdeleRing::new(4).is_err());
        assert!(ToyAdeleRing::new(9).is_err());
        assert!(ToyAdeleRing::new(2).is_ok());
        assert!(ToyAdeleRing::new(3).is_ok());
        assert!(ToyAdeleRing::new(5).is_ok());
    }

    #[test]
    fn psi_k_is_trivial_exactly_on_the_diagonal() {
        for q in [2u64, 3, 5] {
            let ring = ToyAdeleRing::new(q).unwrap();
            let one = Scalar::one(crate::exact_linalg::ScalarDomain::Cyclotomic(q));
            let mut nontrivial = false;
            for x in 0..q {
                for y in 0..q {
                    let v = ring.psi_k(x, y);
                    if x == y {
                        assert_eq!(v, one);
                    } else if v != one {
                        nontrivial = true;
                    }
                }
            }
            assert!(nontrivial);
        }
    }

    #[test]
    fn quadratic_character_is_multiplicative_and_trivial_on_squares() {
        let q = 3;
        let chi = MultChar::Quadratic;
        for u in 1..q {
            for v in 1..q {
                assert_eq!(chi.value(u * v % q, q), chi.value(u, q) * chi.value(v, q));
            }
            assert_eq!(chi.value(u * u % q, q), 1);
        }
        assert!(MultChar::from_index(1, 2).is_err());
    }

    #[test]
    fn eta_is_trivial_on_the_diagonal() {
        let chi = MultChar::Quadratic;
        for u in 1..3u64 {
            assert_eq!(chi.eta_pow(u, u, 1, 3), 1);
        }
        assert_eq!(chi.eta_pow(2, 1, 1, 3), -1);
        assert_eq!(chi.eta_pow(2, 1, 2, 3), 1);
    }
}
