//! Per-pair orbit verification: the Jordan type of the distilled matrix must
//! agree with both closed-form partition computations, and the orbit
//! dimension must be twice the domain dimension.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::euclid_partitions::{
    claimed_partition, levi_blocks, orbit_dim, richardson_partition, DivisionChain, Partition,
};
use crate::exact_linalg::ExactMatrix;
use crate::tower::{
    build_tower, dim_df, lemma_j_matrix, verify_open_orbit, verify_stabilizer_bullet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitLemmaError {
    /// `m^n` did not vanish.
    NotNilpotent,
    /// Rank computation needs a field domain and a square matrix.
    BadMatrix(String),
}

impl fmt::Display for OrbitLemmaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLemmaError::NotNilpotent => write!(f, "matrix is not nilpotent"),
            OrbitLemmaError::BadMatrix(s) => write!(f, "bad matrix: {s}"),
        }
    }
}

/// Jordan type of a nilpotent matrix over a field, by rank of powers:
/// the number of blocks of size `>= j` is `rank(m^{j-1}) - rank(m^j)`.
pub fn jordan_type(m: &ExactMatrix) -> Result<Partition, OrbitLemmaError> {
    if m.rows() != m.cols() {
        return Err(OrbitLemmaError::BadMatrix(format!(
            "{}x{} is not square",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut ranks = Vec::with_capacity(n + 1);
    ranks.push(n); // rank of m^0
    let mut power = m.clone();
    for _ in 1..=n {
        let r = power.rank().map_err(|e| OrbitLemmaError::BadMatrix(e.to_string()))?;
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = power.matmul(m).map_err(|e| OrbitLemmaError::BadMatrix(e.to_string()))?;
    }
    if *ranks.last().unwrap() != 0 {
        return Err(OrbitLemmaError::NotNilpotent);
    }
    // number of parts >= j is ranks[j-1] - ranks[j]; convert to part sizes
    let mut sizes = Vec::new();
    for j in (1..ranks.len()).rev() {
        let count = ranks[j - 1] - ranks[j];
        while sizes.len() < count {
            sizes.push(j);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition::new(sizes))
}

/// Everything the per-pair verification produces.  Reports are total: a
/// failed tower construction yields `verdict = false` with a diagnostic,
/// never a panic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub pair: (usize, usize),
    pub jordan_type_of_j: Option<Partition>,
    pub claimed: Option<Partition>,
    pub richardson: Option<Partition>,
    pub dim_orbit: Option<usize>,
    pub dim_df: Option<usize>,
    pub all_bullets_ok: bool,
    pub verdict: bool,
    pub diagnostic: Option<String>,
}

impl LemmaReport {
    fn failed(pair: (usize, usize), diagnostic: String) -> LemmaReport {
        LemmaReport {
            pair,
            jordan_type_of_j: None,
            claimed: None,
            richardson: None,
            dim_orbit: None,
            dim_df: None,
            all_bullets_ok: false,
            verdict: false,
            diagnostic: Some(diagnostic),
        }
    }
}

/// Run the three orbit computations for one coprime pair and compare.
pub fn verify_lemma(n1: usize, n2: usize) -> LemmaReport {
    let chain = match DivisionChain::new(n1, n2) {
        Ok(c) => c,
        Err(e) => return LemmaReport::failed((n1, n2), e.to_string()),
    };
    let claimed = claimed_partition(&chain);
    let richardson = richardson_partition(&levi_blocks(&chain));
    let with_partitions = |mut r: LemmaReport| {
        r.claimed = Some(claimed.clone());
        r.richardson = Some(richardson.clone());
        r
    };

    let tower = match build_tower(n1, n2) {
        Ok(t) => t,
        Err(e) => return with_partitions(LemmaReport::failed((n1, n2), e.to_string())),
    };
    let j = match lemma_j_matrix(&tower) {
        Ok(j) => j,
        Err(e) => return with_partitions(LemmaReport::failed((n1, n2), e.to_string())),
    };
    let jt = match jordan_type(&j) {
        Ok(p) => p,
        Err(e) => return with_partitions(LemmaReport::failed((n1, n2), e.to_string())),
    };

    let all_bullets_ok = (1..=tower.len()).all(|i| {
        verify_open_orbit(&tower, i).open && verify_stabilizer_bullet(&tower, i).spans_equal
    });
    let dims_df = dim_df(&tower);
    let dim_o = orbit_dim(&claimed);
    let verdict = jt == claimed && claimed == richardson && dim_o == 2 * dims_df && all_bullets_ok;
    LemmaReport {
        pair: (n1, n2),
        jordan_type_of_j: Some(jt),
        claimed: Some(claimed),
        richardson: Some(richardson),
        dim_orbit: Some(dim_o),
        dim_df: Some(dims_df),
        all_bullets_ok,
        verdict,
        diagnostic: None,
    }
}

/// Reports for every coprime pair with `n1 > n2 >= 1` and `n1 + n2 <= max_n`,
/// in lexicographic order.
pub fn scan_verify(max_n: usize) -> Vec<LemmaReport> {
    coprime_pairs(max_n).into_iter().map(|(a, b)| verify_lemma(a, b)).collect()
}

/// The scanned pair list itself, lexicographic.
pub fn coprime_pairs(max_n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for n1 in 2..max_n {
        for n2 in 1..n1 {
            if n1 + n2 <= max_n && gcd(n1, n2) == 1 {
                pairs.push((n1, n2));
            }
        }
    }
    pairs
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
