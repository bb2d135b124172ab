//! Tagged exact scalars.
//!
//! A [`Scalar`] is a rational number, a residue in a prime field `F_p`, or an
//! element of `Q(zeta_p)` stored on the power basis `{1, zeta, ...,
//! zeta^{p-2}}` with the relation `zeta^{p-1} = -(1 + zeta + ... +
//! zeta^{p-2})`.  The power-basis representation is canonical, so equality is
//! coefficient-wise and every identity checked downstream is exact.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The domain tag shared by all entries of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarDomain {
    Rational,
    PrimeField(u64),
    Cyclotomic(u64),
}

impl ScalarDomain {
    /// Elimination is supported over the rationals and prime fields.
    /// Cyclotomic values are used for character sums only.
    pub fn is_field(self) -> bool {
        !matches!(self, ScalarDomain::Cyclotomic(_))
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rational => write!(f, "Q"),
            ScalarDomain::PrimeField(p) => write!(f, "F_{p}"),
            ScalarDomain::Cyclotomic(p) => write!(f, "Q(zeta_{p})"),
        }
    }
}

/// One exact scalar.  All arithmetic panics on mixed domains; domain checks
/// for fallible public operations happen once at the matrix level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    PrimeField { p: u64, value: u64 },
    /// Coefficients of `1, zeta, ..., zeta^{p-2}`, always of length `p - 1`.
    Cyclotomic { p: u64, coeffs: Vec<BigRational> },
}

impl Scalar {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rational(_) => ScalarDomain::Rational,
            Scalar::PrimeField { p, .. } => ScalarDomain::PrimeField(*p),
            Scalar::Cyclotomic { p, .. } => ScalarDomain::Cyclotomic(*p),
        }
    }

    pub fn zero(domain: ScalarDomain) -> Scalar {
        match domain {
            ScalarDomain::Rational => Scalar::Rational(BigRational::zero()),
            ScalarDomain::PrimeField(p) => Scalar::PrimeField { p, value: 0 },
            ScalarDomain::Cyclotomic(p) => Scalar::Cyclotomic {
                p,
                coeffs: vec![BigRational::zero(); (p - 1) as usize],
            },
        }
    }

    pub fn one(domain: ScalarDomain) -> Scalar {
        Scalar::from_i64(domain, 1)
    }

    pub fn from_i64(domain: ScalarDomain, v: i64) -> Scalar {
        match domain {
            ScalarDomain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            ScalarDomain::PrimeField(p) => Scalar::PrimeField { p, value: v.rem_euclid(p as i64) as u64 },
            ScalarDomain::Cyclotomic(p) => {
                let mut coeffs = vec![BigRational::zero(); (p - 1) as usize];
                coeffs[0] = BigRational::from_integer(BigInt::from(v));
                Scalar::Cyclotomic { p, coeffs }
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }

    /// `zeta_p^k`, reduced to the power basis.  `k` is taken mod `p`.
    pub fn zeta_pow(p: u64, k: u64) -> Scalar {
        let k = k % p;
        let deg = (p - 1) as usize;
        let mut coeffs = vec![BigRational::zero(); deg];
        if (k as usize) < deg {
            coeffs[k as usize] = BigRational::one();
        } else {
            // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
            for c in coeffs.iter_mut() {
                *c = -BigRational::one();
            }
        }
        Scalar::Cyclotomic { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::PrimeField { value, .. } => *value == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::PrimeField { p, value: a }, Scalar::PrimeField { p: q, value: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::PrimeField { p: *p, value: (a + b) % p }
            }
            (Scalar::Cyclotomic { p, coeffs: a }, Scalar::Cyclotomic { p: q, coeffs: b }) => {
                assert_eq!(p, q, "mixed cyclotomic fields");
                Scalar::Cyclotomic {
                    p: *p,
                    coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                }
            }
            _ => panic!("scalar domain mismatch in add: {} vs {}", self.domain(), other.domain()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::PrimeField { p, value } => {
                Scalar::PrimeField { p: *p, value: (p - value) % p }
            }
            Scalar::Cyclotomic { p, coeffs } => Scalar::Cyclotomic {
                p: *p,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::PrimeField { p, value: a }, Scalar::PrimeField { p: q, value: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::PrimeField { p: *p, value: (a * b) % p }
            }
            (Scalar::Cyclotomic { p, coeffs: a }, Scalar::Cyclotomic { p: q, coeffs: b }) => {
                assert_eq!(p, q, "mixed cyclotomic fields");
                let deg = (*p - 1) as usize;
                let mut raw = vec![BigRational::zero(); 2 * deg - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            raw[i + j] += x * y;
                        }
                    }
                }
                Scalar::Cyclotomic { p: *p, coeffs: reduce_cyclotomic(*p, raw) }
            }
            _ => panic!("scalar domain mismatch in mul: {} vs {}", self.domain(), other.domain()),
        }
    }

    /// Multiplicative inverse.  Panics on zero.  The cyclotomic case solves
    /// the (p-1)-dimensional linear system `self * y = 1` over the
    /// rationals.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rational(a.recip())
            }
            Scalar::PrimeField { p, value } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::PrimeField { p: *p, value: mod_inverse(*value, *p) }
            }
            Scalar::Cyclotomic { p, .. } => {
                assert!(!self.is_zero(), "inverse of zero");
                let deg = (*p - 1) as usize;
                // column j of the system is self * zeta^j on the power basis
                let mut rows = vec![vec![BigRational::zero(); deg + 1]; deg];
                for j in 0..deg {
                    let col = self.mul(&Scalar::zeta_pow(*p, j as u64));
                    let Scalar::Cyclotomic { coeffs, .. } = col else { unreachable!() };
                    for (i, c) in coeffs.into_iter().enumerate() {
                        rows[i][j] = c;
                    }
                }
                rows[0][deg] = BigRational::one();
                solve_square(&mut rows, deg);
                Scalar::Cyclotomic {
                    p: *p,
                    coeffs: rows.iter().map(|r| r[deg].clone()).collect(),
                }
            }
        }
    }

    /// Exact division by a positive integer (rational or cyclotomic domains).
    pub fn div_nat(&self, k: u64) -> Scalar {
        assert!(k > 0);
        let d = BigRational::from_integer(BigInt::from(k));
        match self {
            Scalar::Rational(a) => Scalar::Rational(a / &d),
            Scalar::Cyclotomic { p, coeffs } => Scalar::Cyclotomic {
                p: *p,
                coeffs: coeffs.iter().map(|c| c / &d).collect(),
            },
            Scalar::PrimeField { .. } => self.mul(&Scalar::PrimeField { p: self_p(self), value: mod_inverse(k % self_p(self), self_p(self)) }),
        }
    }

    /// Multiply a cyclotomic scalar by `zeta_p^k` in place-free form.
    pub fn mul_zeta_pow(&self, k: u64) -> Scalar {
        match self {
            Scalar::Cyclotomic { p, .. } => self.mul(&Scalar::zeta_pow(*p, k)),
            _ => panic!("mul_zeta_pow on non-cyclotomic scalar"),
        }
    }

    /// Canonical display string: plain rational, residue, or a polynomial in
    /// `z` with rational coefficients and ascending powers.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self {
            Scalar::Rational(r) => {
                let _ = write!(out, "{}", render_rational(r));
            }
            Scalar::PrimeField { value, .. } => {
                let _ = write!(out, "{value}");
            }
            Scalar::Cyclotomic { coeffs, .. } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        out.push_str(" + ");
                    }
                    first = false;
                    let _ = match k {
                        0 => write!(out, "{}", render_rational(c)),
                        1 => write!(out, "{}*z", render_rational(c)),
                        _ => write!(out, "{}*z^{k}", render_rational(c)),
                    };
                }
                if first {
                    out.push('0');
                }
            }
        }
        out
    }
}

fn self_p(s: &Scalar) -> u64 {
    match s {
        Scalar::PrimeField { p, .. } => *p,
        _ => unreachable!(),
    }
}

fn render_rational(r: &BigRational) -> String {
    let mut out = String::new();
    if r.denom().is_one() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
    out
}

/// Reduce a raw coefficient vector (degree up to `2p-4`) modulo
/// `Phi_p(zeta) = 0`, i.e. `zeta^{p-1} = -(1 + ... + zeta^{p-2})`.
fn reduce_cyclotomic(p: u64, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    let deg = (p - 1) as usize;
    for k in (deg..raw.len()).rev() {
        let c = core::mem::replace(&mut raw[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        // zeta^k = -sum_{i=0}^{p-2} zeta^{k-(p-1)+i}
        for i in 0..deg {
            let t = k - deg + i;
            let v = -&c;
            raw[t] += v;
        }
    }
    raw.truncate(deg);
    raw
}

/// Gauss-Jordan on an augmented `deg x (deg+1)` rational system, solution
/// left in the last column.  Panics when singular (callers pass invertible
/// systems only).
fn solve_square(rows: &mut [Vec<BigRational>], deg: usize) {
    for col in 0..deg {
        let pivot = (col..deg).find(|&r| !rows[r][col].is_zero()).expect("invertible system");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for c in col..=deg {
            let v = &rows[col][c] * &inv;
            rows[col][c] = v;
        }
        for r in 0..deg {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..=deg {
                let delta = &rows[col][c] * &f;
                rows[r][c] -= delta;
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on i128, p prime
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_powers_sum_to_zero() {
        for p in [2u64, 3, 5, 7] {
            let mut acc = Scalar::zero(ScalarDomain::Cyclotomic(p));
            for k in 0..p {
                acc = acc.add(&Scalar::zeta_pow(p, k));
            }
            assert!(acc.is_zero(), "1 + zeta + ... + zeta^{} should vanish for p = {p}", p - 1);
        }
    }

    #[test]
    fn zeta_multiplication_matches_exponent_addition() {
        for p in [3u64, 5] {
            for a in 0..p {
                for b in 0..p {
                    let lhs = Scalar::zeta_pow(p, a).mul(&Scalar::zeta_pow(p, b));
                    let rhs = Scalar::zeta_pow(p, (a + b) % p);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn cyclotomic_inverse_solves_the_field_equation() {
        for p in [2u64, 3, 5] {
            for k in 0..p {
                let x = Scalar::zeta_pow(p, k).add(&Scalar::from_i64(ScalarDomain::Cyclotomic(p), 2));
                let prod = x.mul(&x.inv());
                assert_eq!(prod, Scalar::one(ScalarDomain::Cyclotomic(p)));
            }
        }
    }

    #[test]
    fn prime_field_inverse() {
        for p in [2u64, 3, 5, 11] {
            for a in 1..p {
                let x = Scalar::PrimeField { p, value: a };
                assert_eq!(x.mul(&x.inv()), Scalar::one(ScalarDomain::PrimeField(p)));
            }
        }
    }

    #[test]
    fn zeta2_is_minus_one() {
        assert_eq!(Scalar::zeta_pow(2, 1), Scalar::from_i64(ScalarDomain::Cyclotomic(2), -1));
    }

    #[test]
    fn render_is_canonical() {
        let x = Scalar::zeta_pow(3, 2); // -1 - z
        assert_eq!(x.render(), "-1 + -1*z");
        assert_eq!(Scalar::zero(ScalarDomain::Cyclotomic(3)).render(), "0");
    }
}
