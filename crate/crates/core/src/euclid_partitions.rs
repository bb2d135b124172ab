//! The Euclidean division chain of a coprime pair and the two closed-form
//! orbit computations attached to it.
//!
//! For `n1 > n2 >= 1` coprime, the chain records the divisions
//! `n_i = n_{i+1} k_i + n_{i+2}` down to `n_{s+1} = 1, n_{s+2} = 0`.  Two
//! partitions of `n1 + n2` are derived from it:
//!
//! - [`claimed_partition`]: part `k_1 + ... + k_j` (plus one when `j = s`)
//!   with multiplicity `n_{j+1} - n_{j+2}`;
//! - [`richardson_partition`] of [`levi_blocks`]: the transpose of the sorted
//!   block sizes `(n_{s+1}^{k_s+1}, n_s^{k_{s-1}}, ..., n_2^{k_1})`.
//!
//! That these agree for every coprime pair is checked exhaustively in the
//! test suite; the subtraction-only refinement [`slow_euclid_pairs`] supplies
//! the dimension bookkeeping (`orbit_dim = 2 * sum of pair products`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Remainders and quotients of the Euclidean algorithm for a coprime pair.
///
/// `remainders = [n_1, ..., n_{s+2}]` with `n_{s+1} = 1`, `n_{s+2} = 0`, and
/// `quotients = [k_1, ..., k_s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionChain {
    n1: usize,
    n2: usize,
    remainders: Vec<usize>,
    quotients: Vec<usize>,
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

/// An ordered list of positive block sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EuclidError {
    /// `n1 <= n2` or a zero entry (the unit pair `(1,1)` is only admitted
    /// through [`DivisionChain::new_allowing_unit_pair`]).
    InvalidPair { n1: usize, n2: usize },
    /// The chain bottomed out at a remainder bigger than one.
    NotCoprime { n1: usize, n2: usize, gcd: usize },
}

impl fmt::Display for EuclidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EuclidError::InvalidPair { n1, n2 } => {
                write!(f, "invalid pair ({n1}, {n2}): need n1 > n2 >= 1")
            }
            EuclidError::NotCoprime { n1, n2, gcd } => {
                write!(f, "pair ({n1}, {n2}) is not coprime (gcd {gcd})")
            }
        }
    }
}

impl DivisionChain {
    /// The chain for `n1 > n2 >= 1` coprime.
    pub fn new(n1: usize, n2: usize) -> Result<DivisionChain, EuclidError> {
        if n1 <= n2 || n2 == 0 {
            return Err(EuclidError::InvalidPair { n1, n2 });
        }
        Self::run(n1, n2)
    }

    /// As [`DivisionChain::new`], but also admits the degenerate pair `(1,1)`
    /// (chain `1 = 1*1 + 0`, `s = 1`, `k_1 = 1`), which the companion
    /// construction of the unfolding harness needs.
    pub fn new_allowing_unit_pair(n1: usize, n2: usize) -> Result<DivisionChain, EuclidError> {
        if n1 == 1 && n2 == 1 {
            return Self::run(1, 1);
        }
        Self::new(n1, n2)
    }

    fn run(n1: usize, n2: usize) -> Result<DivisionChain, EuclidError> {
        let mut remainders = vec![n1, n2];
        let mut quotients = Vec::new();
        let (mut a, mut b) = (n1, n2);
        while b != 0 {
            quotients.push(a / b);
            let r = a % b;
            remainders.push(r);
            (a, b) = (b, r);
        }
        // a is now gcd(n1, n2); the chain ends ... , n_{s+1} = a, n_{s+2} = 0
        if a != 1 {
            return Err(EuclidError::NotCoprime { n1, n2, gcd: a });
        }
        Ok(DivisionChain { n1, n2, remainders, quotients })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Number of divisions `s`.
    pub fn s(&self) -> usize {
        self.quotients.len()
    }

    /// `[n_1, ..., n_{s+2}]`.
    pub fn remainders(&self) -> &[usize] {
        &self.remainders
    }

    /// `[k_1, ..., k_s]`.
    pub fn quotients(&self) -> &[usize] {
        &self.quotients
    }

    /// `k_1 + ... + k_s`, the number of subtraction steps.
    pub fn total_quotients(&self) -> usize {
        self.quotients.iter().sum()
    }
}

/// The subtraction-only refinement of the chain: starting from
/// `(a_1, b_1) = (n1, n2)`, each step replaces the larger coordinate by the
/// difference.  Returns the `k_1 + ... + k_s` pairs seen before each
/// subtraction; the last one is `(1, 1)`.
pub fn slow_euclid_pairs(chain: &DivisionChain) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(chain.total_quotients());
    let (mut a, mut b) = (chain.n1, chain.n2);
    while !(a == 1 && b == 1) {
        pairs.push((a, b));
        if a > b {
            a -= b;
        } else {
            b -= a;
        }
    }
    pairs.push((1, 1));
    debug_assert_eq!(pairs.len(), chain.total_quotients());
    pairs
}

impl Partition {
    /// Build from parts, which must be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Partition {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "partition parts must be weakly decreasing");
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Composition {
        assert!(blocks.iter().all(|&b| b > 0), "composition blocks must be positive");
        Composition { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }
}

/// The partition of `n1 + n2` read off the chain: for `j = s` down to `1`,
/// part `k_1 + ... + k_j` (plus one when `j = s`) with multiplicity
/// `n_{j+1} - n_{j+2}`.
pub fn claimed_partition(chain: &DivisionChain) -> Partition {
    let s = chain.s();
    let n = chain.remainders();
    let k = chain.quotients();
    let mut parts = Vec::new();
    let mut prefix: usize = k.iter().sum();
    for j in (1..=s).rev() {
        let value = if j == s { prefix + 1 } else { prefix };
        let mult = n[j] - n[j + 1]; // n_{j+1} - n_{j+2} (zero-based indexing)
        for _ in 0..mult {
            parts.push(value);
        }
        prefix -= k[j - 1];
    }
    let p = Partition::new(parts);
    debug_assert_eq!(p.n(), chain.n1 + chain.n2);
    p
}

/// Block sizes of the Levi used by the orbit computation: `n_{s+1}` repeated
/// `k_s + 1` times, then `n_j` repeated `k_{j-1}` times for `j = s` down to 2.
pub fn levi_blocks(chain: &DivisionChain) -> Composition {
    let s = chain.s();
    let n = chain.remainders();
    let k = chain.quotients();
    let mut blocks = Vec::new();
    for _ in 0..k[s - 1] + 1 {
        blocks.push(n[s]); // n_{s+1} = 1
    }
    for j in (2..=s).rev() {
        for _ in 0..k[j - 2] {
            blocks.push(n[j - 1]); // n_j
        }
    }
    let c = Composition::new(blocks);
    debug_assert_eq!(c.n(), chain.n1 + chain.n2);
    c
}

/// The Richardson (induced-orbit) partition of a block parabolic in `GL_n`:
/// transpose of the sorted block sizes.
pub fn richardson_partition(blocks: &Composition) -> Partition {
    assert!(!blocks.blocks().is_empty(), "empty composition");
    let mut sorted = blocks.blocks().to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    transpose(&Partition::new(sorted))
}

/// The conjugate partition.
pub fn transpose(p: &Partition) -> Partition {
    let parts = p.parts();
    if parts.is_empty() {
        return Partition::new(Vec::new());
    }
    let mut out = Vec::with_capacity(parts[0]);
    for i in 1..=parts[0] {
        out.push(parts.iter().filter(|&&x| x >= i).count());
    }
    Partition::new(out)
}

/// Dimension of the nilpotent orbit with Jordan type `p` in `gl_n`,
/// `n^2 - sum (p'_i)^2`.
pub fn orbit_dim(p: &Partition) -> usize {
    let n = p.n();
    let t = transpose(p);
    n * n - t.parts().iter().map(|&x| x * x).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n1: usize, n2: usize) -> DivisionChain {
        DivisionChain::new(n1, n2).unwrap()
    }

    #[test]
    fn chain_5_3() {
        let c = chain(5, 3);
        assert_eq!(c.s(), 3);
        assert_eq!(c.quotients(), &[1, 1, 2]);
        assert_eq!(c.remainders(), &[5, 3, 2, 1, 0]);
    }

    #[test]
    fn chain_by_one() {
        let c = chain(7, 1);
        assert_eq!(c.s(), 1);
        assert_eq!(c.quotients(), &[7]);
        assert_eq!(c.remainders(), &[7, 1, 0]);
    }

    #[test]
    fn chain_rejects_bad_pairs() {
        assert!(matches!(DivisionChain::new(6, 4), Err(EuclidError::NotCoprime { gcd: 2, .. })));
        assert!(matches!(DivisionChain::new(3, 3), Err(EuclidError::InvalidPair { .. })));
        assert!(matches!(DivisionChain::new(2, 5), Err(EuclidError::InvalidPair { .. })));
        assert!(matches!(DivisionChain::new(1, 1), Err(EuclidError::InvalidPair { .. })));
    }

    #[test]
    fn unit_pair_behind_flag() {
        let c = DivisionChain::new_allowing_unit_pair(1, 1).unwrap();
        assert_eq!(c.s(), 1);
        assert_eq!(c.quotients(), &[1]);
        assert_eq!(c.remainders(), &[1, 1, 0]);
        assert_eq!(claimed_partition(&c).parts(), &[2]);
    }

    #[test]
    fn slow_pairs_examples() {
        // (3,2): subtract 3-2, then 2-1.
        assert_eq!(slow_euclid_pairs(&chain(3, 2)), vec![(3, 2), (1, 2), (1, 1)]);
        assert_eq!(slow_euclid_pairs(&chain(2, 1)), vec![(2, 1), (1, 1)]);
        assert_eq!(
            slow_euclid_pairs(&chain(5, 1)),
            vec![(5, 1), (4, 1), (3, 1), (2, 1), (1, 1)]
        );
        assert_eq!(slow_euclid_pairs(&chain(5, 3)), vec![(5, 3), (2, 3), (2, 1), (1, 1)]);
    }

    #[test]
    fn claimed_partition_examples() {
        assert_eq!(claimed_partition(&chain(3, 2)).parts(), &[4, 1]);
        assert_eq!(claimed_partition(&chain(5, 3)).parts(), &[5, 2, 1]);
        assert_eq!(claimed_partition(&chain(8, 5)).parts(), &[6, 3, 2, 1, 1]);
        // (n1, 1): the regular orbit of GL_{n1+1}
        assert_eq!(claimed_partition(&chain(6, 1)).parts(), &[7]);
    }

    #[test]
    fn levi_blocks_examples() {
        assert_eq!(levi_blocks(&chain(5, 3)).blocks(), &[1, 1, 1, 2, 3]);
        assert_eq!(levi_blocks(&chain(3, 2)).blocks(), &[1, 1, 1, 2]);
        assert_eq!(levi_blocks(&chain(2, 1)).blocks(), &[1, 1, 1]);
    }

    #[test]
    fn richardson_examples() {
        // whole-group parabolic: zero orbit
        assert_eq!(richardson_partition(&Composition::new(vec![5])).parts(), &[1, 1, 1, 1, 1]);
        // Borel: regular orbit
        assert_eq!(richardson_partition(&Composition::new(vec![1; 4])).parts(), &[4]);
        // sorted (3,2,1,1,1), transposed
        assert_eq!(
            richardson_partition(&Composition::new(vec![1, 1, 1, 2, 3])).parts(),
            &[5, 2, 1]
        );
    }

    #[test]
    fn transpose_and_orbit_dim_examples() {
        let p = Partition::new(vec![4, 1]);
        assert_eq!(transpose(&p).parts(), &[2, 1, 1, 1]);
        assert_eq!(orbit_dim(&p), 25 - (4 + 1 + 1 + 1));
        assert_eq!(orbit_dim(&Partition::new(vec![1; 6])), 0);
        let n = 7;
        assert_eq!(orbit_dim(&Partition::new(vec![n])), n * n - n);
    }

    #[test]
    fn claimed_equals_richardson_exhaustively_up_to_14() {
        // This equality is the combinatorial heart of the orbit computation;
        // check it for every admissible pair with n1 + n2 <= 14.
        for n1 in 2..14usize {
            for n2 in 1..n1 {
                if n1 + n2 > 14 {
                    continue;
                }
                let Ok(c) = DivisionChain::new(n1, n2) else { continue };
                assert_eq!(
                    claimed_partition(&c),
                    richardson_partition(&levi_blocks(&c)),
                    "mismatch at ({n1},{n2})"
                );
            }
        }
    }

    #[test]
    fn dimension_identity_against_slow_pairs() {
        for n1 in 2..14usize {
            for n2 in 1..n1 {
                let Ok(c) = DivisionChain::new(n1, n2) else { continue };
                let dim_df: usize = slow_euclid_pairs(&c).iter().map(|&(a, b)| a * b).sum();
                assert_eq!(orbit_dim(&claimed_partition(&c)), 2 * dim_df, "({n1},{n2})");
            }
        }
    }

    #[test]
    fn chain_reconstructs_input() {
        for n1 in 2..20usize {
            for n2 in 1..n1 {
                let Ok(c) = DivisionChain::new(n1, n2) else { continue };
                // replay the divisions from the recorded quotients
                let r = c.remainders();
                let k = c.quotients();
                for i in 0..c.s() {
                    assert_eq!(r[i], r[i + 1] * k[i] + r[i + 2]);
                }
                assert_eq!((r[0], r[1]), (n1, n2));
            }
        }
    }
}
