//! Dense exact matrices and elimination.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{LinalgError, Scalar, ScalarDomain};

/// A dense `rows x cols` matrix whose entries all share one scalar domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    domain: ScalarDomain,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, domain: ScalarDomain) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            domain,
            entries: vec![Scalar::zero(domain); rows * cols],
        }
    }

    pub fn identity(n: usize, domain: ScalarDomain) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n, domain);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        domain: ScalarDomain,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.domain(), domain, "entry domain mismatch at ({r},{c})");
                entries.push(v);
            }
        }
        ExactMatrix { rows, cols, domain, entries }
    }

    /// Integer-entry convenience constructor over the rationals.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> ExactMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        ExactMatrix::from_fn(r, c, ScalarDomain::Rational, |i, j| {
            Scalar::from_i64(ScalarDomain::Rational, rows[i][j])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.domain(), self.domain, "entry domain mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, self.domain, |r, c| self.get(c, r).clone())
    }

    /// Exact matrix product.
    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.domain != other.domain {
            return Err(LinalgError::DomainMismatch { left: self.domain, right: other.domain });
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                detail: format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols, self.domain);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated multiplication; `k = 0` gives the identity.
    pub fn matrix_power(&self, k: usize) -> Result<ExactMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                detail: format!("power of a {}x{} matrix", self.rows, self.cols),
            });
        }
        let mut acc = ExactMatrix::identity(self.rows, self.domain);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Rank by exact Gaussian elimination.  Requires a field domain.
    pub fn rank(&self) -> Result<usize, LinalgError> {
        if !self.domain.is_field() {
            return Err(LinalgError::NotAField { domain: self.domain });
        }
        let mut rows = self.to_row_vecs();
        Ok(rref(&mut rows).len())
    }

    /// A basis of the right null space `{x : self * x = 0}`.
    /// Always has `cols - rank` elements.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        if !self.domain.is_field() {
            return Err(LinalgError::NotAField { domain: self.domain });
        }
        let mut rows = self.to_row_vecs();
        let pivots = rref(&mut rows);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row_idx, &col) in pivots.iter().enumerate() {
                v[col] = Some(row_idx);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![Scalar::zero(self.domain); self.cols];
            x[free] = Scalar::one(self.domain);
            for (row_idx, &col) in pivots.iter().enumerate() {
                // pivot entry is 1 after rref, so x[col] = -row[free]
                x[col] = rows[row_idx][free].neg();
            }
            basis.push(x);
        }
        Ok(basis)
    }

    fn to_row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect()
    }
}

/// Reduced row echelon form in place.  Returns the pivot column of each
/// surviving row, in order; the number of pivots is the rank.
pub(crate) fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        if pivot_row >= nrows {
            break;
        }
        let found = (pivot_row..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(src) = found else { continue };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].inv();
        for c in col..ncols {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for r in 0..nrows {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = rows[pivot_row][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// A deterministic-from-seed invertible rational matrix with entries drawn
/// from `{-2, ..., 2}`; retries until the draw is invertible.
pub fn random_invertible(n: usize, seed: u64) -> ExactMatrix {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = ExactMatrix::from_fn(n, n, ScalarDomain::Rational, |_, _| {
            Scalar::Rational(BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2))))
        });
        if m.rank().expect("rational rank") == n {
            return m;
        }
    }
}
