//! Small matrices over `F_q` and complete group tables.
//!
//! Everything in the finite model happens inside groups of at most a couple
//! of thousand elements, so groups are materialized as element lists with
//! full multiplication and inverse tables; all hot loops are index lookups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{EnumLimits, FiniteError};

/// A square matrix over `F_q`, row-major, entries in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FqMat {
    pub n: usize,
    pub q: u64,
    pub entries: Vec<u8>,
}

impl FqMat {
    pub fn zero(n: usize, q: u64) -> FqMat {
        FqMat { n, q, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize, q: u64) -> FqMat {
        let mut m = FqMat::zero(n, q);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, q: u64, u: u64) -> FqMat {
        let mut m = FqMat::zero(n, q);
        for i in 0..n {
            m.entries[i * n + i] = (u % q) as u8;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        u64::from(self.entries[r * self.n + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.n + c] = (v % self.q) as u8;
    }

    pub fn mul(&self, other: &FqMat) -> FqMat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = FqMat::zero(n, self.q);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = (out.get(r, c) + a * other.get(k, c)) % self.q;
                    out.entries[r * n + c] = v as u8;
                }
            }
        }
        out
    }

    /// Determinant by elimination mod `q`.
    pub fn det(&self) -> u64 {
        let n = self.n;
        let q = self.q;
        let mut w: Vec<u64> = self.entries.iter().map(|&x| u64::from(x)).collect();
        let mut det: u64 = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| w[r * n + col] % q != 0) else { return 0 };
            if pivot != col {
                for c in 0..n {
                    w.swap(pivot * n + c, col * n + c);
                }
                det = (q - det % q) % q;
            }
            let p = w[col * n + col] % q;
            det = det * p % q;
            let pinv = mod_inv(p, q);
            for r in col + 1..n {
                let f = w[r * n + col] % q * pinv % q;
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = f * w[col * n + c] % q;
                    w[r * n + c] = (w[r * n + c] + q * q - sub) % q;
                }
            }
        }
        det % q
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<FqMat> {
        let n = self.n;
        let q = self.q;
        let mut w: Vec<u64> = Vec::with_capacity(n * 2 * n);
        for r in 0..n {
            for c in 0..n {
                w.push(self.get(r, c));
            }
            for c in 0..n {
                w.push(u64::from(c == r));
            }
        }
        let stride = 2 * n;
        for col in 0..n {
            let pivot = (col..n).find(|&r| w[r * stride + col] % q != 0)?;
            if pivot != col {
                for c in 0..stride {
                    w.swap(pivot * stride + c, col * stride + c);
                }
            }
            let pinv = mod_inv(w[col * stride + col] % q, q);
            for c in 0..stride {
                w[col * stride + c] = w[col * stride + c] * pinv % q;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = w[r * stride + col] % q;
                if f == 0 {
                    continue;
                }
                for c in 0..stride {
                    let sub = f * w[col * stride + c] % q;
                    w[r * stride + c] = (w[r * stride + c] + q * q - sub) % q;
                }
            }
        }
        let mut out = FqMat::zero(n, q);
        for r in 0..n {
            for c in 0..n {
                out.entries[r * n + c] = (w[r * stride + n + c] % q) as u8;
            }
        }
        Some(out)
    }

    /// Base-`q` digit encoding; injective for fixed `(n, q)`.
    pub fn code(&self) -> usize {
        let mut code = 0usize;
        for &e in self.entries.iter().rev() {
            code = code * self.q as usize + e as usize;
        }
        code
    }

    /// The `size x size` sub-block with upper-left corner `(at, at)`.
    pub fn block(&self, at: usize, size: usize) -> FqMat {
        let mut out = FqMat::zero(size, self.q);
        for r in 0..size {
            for c in 0..size {
                out.entries[r * size + c] = self.entries[(at + r) * self.n + at + c];
            }
        }
        out
    }

    /// True iff all entries outside the two diagonal blocks of sizes
    /// `(n1, n - n1)` vanish.
    pub fn is_block_diagonal(&self, n1: usize) -> bool {
        for r in 0..self.n {
            for c in 0..self.n {
                let same = (r < n1) == (c < n1);
                if !same && self.entries[r * self.n + c] != 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q is a small prime
    let mut result = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

/// Complete duplicate-free enumeration of `GL_n(F_q)`, ordered by matrix
/// code.  Errors with `SizeLimit` when `q^(n^2)` exceeds the configured
/// enumeration bound.
pub fn enumerate_gl(n: usize, q: u64, limits: &EnumLimits) -> Result<Vec<FqMat>, FiniteError> {
    let candidates = (q as usize).checked_pow((n * n) as u32).unwrap_or(usize::MAX);
    if candidates > limits.max_enumeration {
        return Err(FiniteError::SizeLimit {
            what: format!("enumeration of GL_{n}(F_{q})"),
            needed: candidates,
            limit: limits.max_enumeration,
        });
    }
    let mut out = Vec::new();
    let mut m = FqMat::zero(n, q);
    'outer: loop {
        if m.det() != 0 {
            out.push(m.clone());
        }
        // odometer over entries
        for i in 0..n * n {
            m.entries[i] += 1;
            if u64::from(m.entries[i]) < q {
                continue 'outer;
            }
            m.entries[i] = 0;
        }
        break;
    }
    Ok(out)
}

/// A finite group materialized as an element list with full multiplication,
/// inverse and determinant tables.
pub struct GroupTable {
    pub n: usize,
    pub q: u64,
    pub elements: Vec<FqMat>,
    code_to_idx: BTreeMap<usize, u32>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    pub dets: Vec<u64>,
}

impl GroupTable {
    /// Build the tables, verifying closure under products and inverses.
    pub fn new(mut elements: Vec<FqMat>, limits: &EnumLimits) -> Result<GroupTable, FiniteError> {
        elements.sort_by_key(FqMat::code);
        elements.dedup();
        let len = elements.len();
        if len == 0 || len > limits.max_table {
            return Err(FiniteError::SizeLimit {
                what: format!("group table over F_{}", elements.first().map_or(0, |m| m.q)),
                needed: len,
                limit: limits.max_table,
            });
        }
        let n = elements[0].n;
        let q = elements[0].q;
        let mut code_to_idx = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            code_to_idx.insert(e.code(), i as u32);
        }
        let lookup = |m: &FqMat, code_to_idx: &BTreeMap<usize, u32>| -> Result<u32, FiniteError> {
            code_to_idx.get(&m.code()).copied().ok_or_else(|| FiniteError::NotAGroup {
                detail: format!("product or inverse escapes the element list ({} elements)", len),
            })
        };
        let mut mult = vec![0u32; len * len];
        for i in 0..len {
            for j in 0..len {
                let prod = elements[i].mul(&elements[j]);
                mult[i * len + j] = lookup(&prod, &code_to_idx)?;
            }
        }
        let mut inv = vec![0u32; len];
        let mut dets = vec![0u64; len];
        for (i, e) in elements.iter().enumerate() {
            let einv = e.inverse().ok_or_else(|| FiniteError::NotAGroup {
                detail: format!("singular element at index {i}"),
            })?;
            inv[i] = lookup(&einv, &code_to_idx)?;
            dets[i] = e.det();
        }
        Ok(GroupTable { n, q, elements, code_to_idx, mult, inv, dets })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, m: &FqMat) -> Option<u32> {
        self.code_to_idx.get(&m.code()).copied()
    }

    pub fn identity(&self) -> u32 {
        self.index_of(&FqMat::identity(self.n, self.q)).expect("identity in table")
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mult[i as usize * self.elements.len() + j as usize]
    }

    #[inline]
    pub fn invert(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// Left-coset representatives of `subgroup \ group`, both given as index
    /// lists into this table.  Exactness is enforced: the sweep marks each
    /// element exactly once, so representatives are duplicate-free and cover.
    pub fn coset_reps(&self, subgroup: &[u32], group: &[u32]) -> Result<Vec<u32>, FiniteError> {
        let mut visited: BTreeMap<u32, ()> = BTreeMap::new();
        let mut reps = Vec::new();
        for &g in group {
            if visited.contains_key(&g) {
                continue;
            }
            reps.push(g);
            for &s in subgroup {
                let sg = self.mul(s, g);
                if visited.insert(sg, ()).is_some() {
                    return Err(FiniteError::NotAGroup {
                        detail: format!(
                            "coset sweep revisited an element; {} is not closed inside the group",
                            subgroup.len()
                        ),
                    });
                }
            }
        }
        if visited.len() != group.len() {
            return Err(FiniteError::NotAGroup {
                detail: format!(
                    "coset sweep covered {} of {} elements",
                    visited.len(),
                    group.len()
                ),
            });
        }
        Ok(reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> EnumLimits {
        EnumLimits::default()
    }

    #[test]
    fn gl_orders_match_the_product_formula() {
        // |GL_n(F_q)| = prod (q^n - q^i)
        let order = |n: u32, q: u64| -> usize {
            let qn = (q as usize).pow(n);
            (0..n).map(|i| qn - (q as usize).pow(i)).product()
        };
        assert_eq!(enumerate_gl(1, 2, &limits()).unwrap().len(), 1);
        assert_eq!(enumerate_gl(2, 2, &limits()).unwrap().len(), 6);
        assert_eq!(enumerate_gl(3, 2, &limits()).unwrap().len(), 168);
        assert_eq!(enumerate_gl(3, 2, &limits()).unwrap().len(), order(3, 2));
        assert_eq!(enumerate_gl(2, 3, &limits()).unwrap().len(), order(2, 3));
    }

    #[test]
    fn enumeration_respects_the_size_limit() {
        let small = EnumLimits { max_enumeration: 100, max_table: 100 };
        assert!(matches!(enumerate_gl(3, 3, &small), Err(FiniteError::SizeLimit { .. })));
    }

    #[test]
    fn table_round_trips_products_and_inverses() {
        let gl2 = enumerate_gl(2, 3, &limits()).unwrap();
        let t = GroupTable::new(gl2, &limits()).unwrap();
        let e = t.identity();
        for i in 0..t.len() as u32 {
            assert_eq!(t.mul(i, t.invert(i)), e);
            let m = &t.elements[i as usize];
            assert_eq!(t.dets[i as usize], m.det());
        }
    }

    #[test]
    fn coset_reps_partition_the_group() {
        let gl2 = enumerate_gl(2, 2, &limits()).unwrap();
        let t = GroupTable::new(gl2, &limits()).unwrap();
        let all: Vec<u32> = (0..t.len() as u32).collect();
        // subgroup: upper triangular invertible matrices
        let sub: Vec<u32> = all
            .iter()
            .copied()
            .filter(|&i| t.elements[i as usize].get(1, 0) == 0)
            .collect();
        let reps = t.coset_reps(&sub, &all).unwrap();
        assert_eq!(reps.len() * sub.len(), t.len());
    }

    #[test]
    fn det_and_inverse_agree_mod_3() {
        let gl2 = enumerate_gl(2, 3, &limits()).unwrap();
        for m in gl2.iter().take(20) {
            let mi = m.inverse().unwrap();
            assert_eq!(m.mul(&mi), FqMat::identity(2, 3));
            assert_eq!(m.det() * mi.det() % 3, 1);
        }
    }
}
