//! The descent tower: an explicit matrix realization of the subgroup chain
//! `V_1, V_2, ...` inside `GL_{n1+n2}` and of the additive character carried
//! by their product.
//!
//! Step 1 starts from the standard `(n1, n2)` block parabolic: `V_1` is its
//! unipotent radical (the full `n1 x n2` upper-right block) and the character
//! reads an identity sub-block placed in the lowest rows.  Each later step
//! works inside the stabilizer of the previous character.  The stabilizer
//! ties the small `GL` factor diagonally across several blocks, so from the
//! third step on a basis vector of `Lie(V_i)` is in general a *sum* of
//! elementary matrices, one per realization copy; a basis vector is stored as
//! the list of its matrix positions.  Distinct basis vectors never share a
//! position, every position group is verified to sit strictly above the
//! diagonal, and the per-step character support is verified to be a partial
//! permutation (a Weyl-conjugated Jordan shape).
//!
//! The construction is not trusted: every step is re-derived by exact linear
//! algebra over the rationals.  The infinitesimal stabilizer of the step
//! character is computed as the kernel of `X -> (v -> F([X, v]))` on
//! `Lie(P_i)` via [`crate::exact_linalg::ExactMatrix::kernel_basis`], and the
//! build fails unless it has the predicted codimension (the open-orbit
//! criterion) and equals `Lie(P_{i+1}) + Lie(V_i)` as an exact span.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::euclid_partitions::{slow_euclid_pairs, DivisionChain, EuclidError};
use crate::exact_linalg::{ExactMatrix, Scalar, ScalarDomain};

/// A matrix position, 0-based `(row, col)`.
pub type Position = (usize, usize);

/// One basis vector of a Lie subspace: the sum of elementary matrices at the
/// listed positions (all with coefficient one).
pub type PositionGroup = Vec<Position>;

/// An additive character of a unipotent group, presented by its dual support:
/// `F(X) = sum coef * X_{r,c}` over the support triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveFunction {
    /// Ambient size `n1 + n2`.
    pub ambient: usize,
    /// `(row, col, coefficient)` triples, 0-based.
    pub support: Vec<(usize, usize, i64)>,
    /// Basis of the Lie algebra of the domain group, one position group per
    /// basis vector.
    pub domain_basis: Vec<PositionGroup>,
}

/// One step of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    /// 1-based step index.
    pub index: usize,
    /// The slow-Euclid pair `(a_i, b_i)`; `dim V_i = a_i * b_i`.
    pub pair: (usize, usize),
    /// Basis of `Lie(V_i)`, one position group per basis vector, in
    /// row-major `(u, w)` order of the virtual `a x b` block.
    pub v_basis: Vec<PositionGroup>,
    /// The character edges: one position group per identity sub-block entry
    /// (`min(a_i, b_i)` of them), each a subset of `v_basis`.
    pub f_edges: Vec<PositionGroup>,
    /// Flattened support triples of the step character.
    pub f_support: Vec<(usize, usize, i64)>,
    /// Basis of `Lie(P_i)`.
    pub p_lie_basis: Vec<PositionGroup>,
    /// Basis of `Lie(P_{i+1})` (for the last step: the tied scalar line).
    pub p_next_basis: Vec<PositionGroup>,
}

/// The full tower for a coprime pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub n1: usize,
    pub n2: usize,
    pub chain: DivisionChain,
    pub steps: Vec<TowerStep>,
    pub af: AdditiveFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerError {
    Euclid(EuclidError),
    /// A bullet verification failed; signals a wrong normalization choice.
    ConstructionFailure { step: usize, detail: String },
    /// The character support violates the Weyl-Jordan normalization.
    NormalizationFailure { step: usize, detail: String },
}

impl fmt::Display for TowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerError::Euclid(e) => write!(f, "{e}"),
            TowerError::ConstructionFailure { step, detail } => {
                write!(f, "construction failure at step {step}: {detail}")
            }
            TowerError::NormalizationFailure { step, detail } => {
                write!(f, "normalization failure at step {step}: {detail}")
            }
        }
    }
}

impl From<EuclidError> for TowerError {
    fn from(e: EuclidError) -> TowerError {
        TowerError::Euclid(e)
    }
}

/// Openness report for one step: the character orbit is open iff the
/// stabilizer codimension in `Lie(P_i)` equals the character-space dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenOrbitReport {
    pub step: usize,
    pub p_dim: usize,
    pub stabilizer_dim: usize,
    pub character_space_dim: usize,
    pub open: bool,
}

/// Span-equality report for one step: the computed stabilizer kernel must
/// coincide with `Lie(P_{i+1}) + Lie(V_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    pub step: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub spans_equal: bool,
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

/// One side of the current pair: `dim` virtual indices, each realized at the
/// same offset inside every copy.
#[derive(Clone, Debug)]
struct Side {
    dim: usize,
    copies: Vec<Vec<usize>>,
}

struct State {
    a: Side,
    b: Side,
    /// Which `(a_copy, b_copy)` pairs are co-realized; `V_i` has one
    /// elementary component per pair.
    pairing: Vec<(usize, usize)>,
}

impl State {
    fn v_basis(&self) -> Vec<PositionGroup> {
        let (a, b) = (self.a.dim, self.b.dim);
        let mut basis = Vec::with_capacity(a * b);
        for u in 0..a {
            for w in 0..b {
                basis.push(
                    self.pairing
                        .iter()
                        .map(|&(p, q)| (self.a.copies[p][u], self.b.copies[q][w]))
                        .collect(),
                );
            }
        }
        basis
    }

    fn lie_p_basis(&self, v_basis: &[PositionGroup]) -> Vec<PositionGroup> {
        let mut basis = Vec::new();
        for u in 0..self.a.dim {
            for v in 0..self.a.dim {
                basis.push(self.a.copies.iter().map(|c| (c[u], c[v])).collect());
            }
        }
        for u in 0..self.b.dim {
            for v in 0..self.b.dim {
                basis.push(self.b.copies.iter().map(|c| (c[u], c[v])).collect());
            }
        }
        basis.extend_from_slice(v_basis);
        basis
    }

    /// All diagonal positions over both sides; spans the tied scalar line
    /// that stabilizes the final character.
    fn scalar_line(&self) -> PositionGroup {
        let mut diag = Vec::new();
        for c in self.a.copies.iter().chain(&self.b.copies) {
            for &s in c {
                diag.push((s, s));
            }
        }
        diag.sort_unstable();
        diag
    }

    /// Descend into the stabilizer of the current step character.
    fn transition(&self) -> State {
        let (a, b) = (self.a.dim, self.b.dim);
        if a > b {
            let mut b_copies = self.b.copies.clone();
            let lb = b_copies.len();
            for copy in &self.a.copies {
                b_copies.push(copy[a - b..].to_vec());
            }
            State {
                a: Side {
                    dim: a - b,
                    copies: self.a.copies.iter().map(|c| c[..a - b].to_vec()).collect(),
                },
                b: Side { dim: b, copies: b_copies },
                pairing: (0..self.a.copies.len()).map(|p| (p, lb + p)).collect(),
            }
        } else {
            let mut a_copies = self.a.copies.clone();
            let la = a_copies.len();
            for copy in &self.b.copies {
                a_copies.push(copy[..a].to_vec());
            }
            State {
                a: Side { dim: a, copies: a_copies },
                b: Side {
                    dim: b - a,
                    copies: self.b.copies.iter().map(|c| c[a..].to_vec()).collect(),
                },
                pairing: (0..self.b.copies.len()).map(|q| (la + q, q)).collect(),
            }
        }
    }
}

/// Build and fully verify the tower for a coprime pair `n1 > n2 >= 1`.
pub fn build_tower(n1: usize, n2: usize) -> Result<Tower, TowerError> {
    let chain = DivisionChain::new(n1, n2)?;
    build_from_chain(chain)
}

/// As [`build_tower`], but also admits the degenerate pair `(1, 1)` needed
/// by the unfolding harness (the Whittaker tower of `GL_2`).
pub fn build_tower_allowing_unit_pair(n1: usize, n2: usize) -> Result<Tower, TowerError> {
    let chain = DivisionChain::new_allowing_unit_pair(n1, n2)?;
    build_from_chain(chain)
}

fn build_from_chain(chain: DivisionChain) -> Result<Tower, TowerError> {
    let (n1, n2) = (chain.n1(), chain.n2());
    let n = n1 + n2;
    let total = chain.total_quotients();
    let mut state = State {
        a: Side { dim: n1, copies: vec![(0..n1).collect()] },
        b: Side { dim: n2, copies: vec![(n1..n).collect()] },
        pairing: vec![(0, 0)],
    };

    let mut steps = Vec::with_capacity(total);
    for index in 1..=total {
        let (a, b) = (state.a.dim, state.b.dim);
        let v_basis = state.v_basis();
        // identity sub-block: lowest rows when a >= b, leftmost columns when
        // a < b (both read the virtual entries (u_j, w_j) below)
        let edge_indices: Vec<(usize, usize)> = if a >= b {
            (0..b).map(|j| (a - b + j, j)).collect()
        } else {
            (0..a).map(|j| (j, j)).collect()
        };
        let f_edges: Vec<PositionGroup> =
            edge_indices.iter().map(|&(u, w)| v_basis[u * b + w].clone()).collect();
        let f_support: Vec<(usize, usize, i64)> =
            f_edges.iter().flatten().map(|&(r, c)| (r, c, 1)).collect();
        let p_lie_basis = state.lie_p_basis(&v_basis);

        let p_next_basis = if index < total {
            let next = state.transition();
            let next_v = next.v_basis();
            next.lie_p_basis(&next_v)
        } else {
            vec![state.scalar_line()]
        };

        steps.push(TowerStep {
            index,
            pair: (a, b),
            v_basis,
            f_edges,
            f_support,
            p_lie_basis,
            p_next_basis,
        });

        if index < total {
            state = state.transition();
        }
    }

    let af = AdditiveFunction {
        ambient: n,
        support: steps.iter().flat_map(|s| s.f_support.iter().copied()).collect(),
        domain_basis: steps.iter().flat_map(|s| s.v_basis.iter().cloned()).collect(),
    };
    let tower = Tower { n1, n2, chain, steps, af };
    verify_structure(&tower)?;
    for i in 1..=tower.steps.len() {
        let open = verify_open_orbit(&tower, i);
        if !open.open {
            return Err(TowerError::ConstructionFailure {
                step: i,
                detail: format!(
                    "orbit not open: stabilizer dim {} in P of dim {}, character space {}",
                    open.stabilizer_dim, open.p_dim, open.character_space_dim
                ),
            });
        }
        let stab = verify_stabilizer_bullet(&tower, i);
        if !stab.spans_equal {
            return Err(TowerError::ConstructionFailure {
                step: i,
                detail: format!(
                    "stabilizer is not P_next + V: kernel dim {}, expected {}",
                    stab.kernel_dim, stab.expected_dim
                ),
            });
        }
    }
    verify_normalization(&tower)?;
    Ok(tower)
}

impl Tower {
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// Total number of steps, `k_1 + ... + k_s`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same tower with every matrix index renamed through `perm`
    /// (`new = perm[old]`).  Dimensional data is untouched; the
    /// conjugation-invariant verifications still apply to the result.
    pub fn relabel(&self, perm: &[usize]) -> Tower {
        assert_eq!(perm.len(), self.n());
        let map_group = |g: &PositionGroup| -> PositionGroup {
            g.iter().map(|&(r, c)| (perm[r], perm[c])).collect()
        };
        let map_support = |s: &[(usize, usize, i64)]| -> Vec<(usize, usize, i64)> {
            s.iter().map(|&(r, c, k)| (perm[r], perm[c], k)).collect()
        };
        Tower {
            n1: self.n1,
            n2: self.n2,
            chain: self.chain.clone(),
            steps: self
                .steps
                .iter()
                .map(|st| TowerStep {
                    index: st.index,
                    pair: st.pair,
                    v_basis: st.v_basis.iter().map(map_group).collect(),
                    f_edges: st.f_edges.iter().map(map_group).collect(),
                    f_support: map_support(&st.f_support),
                    p_lie_basis: st.p_lie_basis.iter().map(map_group).collect(),
                    p_next_basis: st.p_next_basis.iter().map(map_group).collect(),
                })
                .collect(),
            af: AdditiveFunction {
                ambient: self.af.ambient,
                support: map_support(&self.af.support),
                domain_basis: self.af.domain_basis.iter().map(map_group).collect(),
            },
        }
    }

    /// The corner-swapped realization: index reversal puts the leading `GL`
    /// factor in the lower-right corner.  Used by the unfolding harness for
    /// the `k_1 = 1` replacement rule.
    pub fn mirrored(&self) -> Tower {
        let n = self.n();
        let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        self.relabel(&perm)
    }

    /// The tower carrying the inverse character (all support coefficients
    /// negated).  This is the open-orbit representative the second factor of
    /// the unfolding pairing uses.
    pub fn negated(&self) -> Tower {
        let neg = |s: &[(usize, usize, i64)]| -> Vec<(usize, usize, i64)> {
            s.iter().map(|&(r, c, k)| (r, c, -k)).collect()
        };
        let mut t = self.clone();
        for st in &mut t.steps {
            st.f_support = neg(&st.f_support);
        }
        t.af.support = neg(&t.af.support);
        t
    }
}

// ---------------------------------------------------------------------------
// sparse helpers
// ---------------------------------------------------------------------------

/// `[X, Y]` for sums of elementary matrices with unit coefficients.
fn bracket(x: &[Position], y: &[Position]) -> BTreeMap<Position, i64> {
    let mut out = BTreeMap::new();
    for &(r, m) in x {
        for &(m2, c) in y {
            if m == m2 {
                *out.entry((r, c)).or_insert(0) += 1;
            }
        }
    }
    for &(r, m) in y {
        for &(m2, c) in x {
            if m == m2 {
                *out.entry((r, c)).or_insert(0) -= 1;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn apply_support(support: &[(usize, usize, i64)], m: &BTreeMap<Position, i64>) -> i64 {
    support.iter().map(|&(r, c, k)| k * m.get(&(r, c)).copied().unwrap_or(0)).sum()
}

/// Membership testing in the span of basis vectors with pairwise disjoint
/// position supports (each vector: unit coefficients on its positions).
struct DisjointSpan {
    pos_to_gen: BTreeMap<Position, usize>,
    gen_sizes: Vec<usize>,
}

impl DisjointSpan {
    fn new(gens: &[PositionGroup]) -> Result<DisjointSpan, Position> {
        let mut pos_to_gen = BTreeMap::new();
        let mut gen_sizes = Vec::with_capacity(gens.len());
        for (idx, g) in gens.iter().enumerate() {
            for &p in g {
                if pos_to_gen.insert(p, idx).is_some() {
                    return Err(p);
                }
            }
            gen_sizes.push(g.len());
        }
        Ok(DisjointSpan { pos_to_gen, gen_sizes })
    }

    /// True iff the sparse rational vector lies in the span.
    fn contains(&self, v: &BTreeMap<Position, BigRational>) -> bool {
        let mut seen: BTreeMap<usize, (usize, BigRational)> = BTreeMap::new();
        for (pos, val) in v {
            if val.is_zero() {
                continue;
            }
            let Some(&g) = self.pos_to_gen.get(pos) else { return false };
            match seen.get_mut(&g) {
                None => {
                    seen.insert(g, (1, val.clone()));
                }
                Some((count, common)) => {
                    if common != val {
                        return false;
                    }
                    *count += 1;
                }
            }
        }
        seen.iter().all(|(&g, (count, _))| *count == self.gen_sizes[g])
    }
}

fn sparse_from_i64(m: &BTreeMap<Position, i64>) -> BTreeMap<Position, BigRational> {
    m.iter().map(|(&p, &v)| (p, BigRational::from_integer(v.into()))).collect()
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// The constraint matrix of the infinitesimal stabilizer: row per `V_i`
/// basis vector `v_j`, column per `Lie(P_i)` basis vector `X_m`, entry
/// `F([X_m, v_j])`.
fn stabilizer_matrix(step: &TowerStep, support: &[(usize, usize, i64)]) -> ExactMatrix {
    ExactMatrix::from_fn(
        step.v_basis.len(),
        step.p_lie_basis.len(),
        ScalarDomain::Rational,
        |j, m| {
            let br = bracket(&step.p_lie_basis[m], &step.v_basis[j]);
            Scalar::from_i64(ScalarDomain::Rational, apply_support(support, &br))
        },
    )
}

/// Openness of the step-`i` character orbit (`i` is 1-based), for an
/// arbitrary character support.  Exposed so degenerate characters (e.g. the
/// zero functional) can be probed directly.
pub fn open_orbit_report_with_support(
    tower: &Tower,
    i: usize,
    support: &[(usize, usize, i64)],
) -> OpenOrbitReport {
    let step = &tower.steps[i - 1];
    let m = stabilizer_matrix(step, support);
    let rank = m.rank().expect("rational rank");
    let p_dim = step.p_lie_basis.len();
    OpenOrbitReport {
        step: i,
        p_dim,
        stabilizer_dim: p_dim - rank,
        character_space_dim: step.v_basis.len(),
        open: rank == step.v_basis.len(),
    }
}

/// Openness of the built step character.
pub fn verify_open_orbit(tower: &Tower, i: usize) -> OpenOrbitReport {
    open_orbit_report_with_support(tower, i, &tower.steps[i - 1].f_support)
}

/// Span equality of the computed stabilizer with `Lie(P_{i+1}) + Lie(V_i)`,
/// for an arbitrary character support.
pub fn stabilizer_report_with_support(
    tower: &Tower,
    i: usize,
    support: &[(usize, usize, i64)],
) -> StabilizerReport {
    let step = &tower.steps[i - 1];
    let m = stabilizer_matrix(step, support);
    let kernel = m.kernel_basis().expect("rational kernel");

    let mut expected: Vec<PositionGroup> = step.p_next_basis.clone();
    expected.extend_from_slice(&step.v_basis);
    let expected_dim = expected.len();
    let Ok(span) = DisjointSpan::new(&expected) else {
        return StabilizerReport {
            step: i,
            kernel_dim: kernel.len(),
            expected_dim,
            spans_equal: false,
        };
    };

    let mut spans_equal = kernel.len() == expected_dim;
    if spans_equal {
        for coeffs in &kernel {
            // expand the kernel vector through the (disjoint) P_i basis
            let mut v: BTreeMap<Position, BigRational> = BTreeMap::new();
            for (m_idx, coeff) in coeffs.iter().enumerate() {
                let Scalar::Rational(r) = coeff else { unreachable!() };
                if r.is_zero() {
                    continue;
                }
                for &p in &step.p_lie_basis[m_idx] {
                    v.insert(p, r.clone());
                }
            }
            if !span.contains(&v) {
                spans_equal = false;
                break;
            }
        }
    }
    StabilizerReport { step: i, kernel_dim: kernel.len(), expected_dim, spans_equal }
}

/// Span equality for the built step character.
pub fn verify_stabilizer_bullet(tower: &Tower, i: usize) -> StabilizerReport {
    stabilizer_report_with_support(tower, i, &tower.steps[i - 1].f_support)
}

/// Structural invariants: dimensions, entry-disjointness, commutativity of
/// each `V_i`, and bracket closure of the full domain span.
fn verify_structure(tower: &Tower) -> Result<(), TowerError> {
    let pairs = slow_euclid_pairs(&tower.chain);
    if pairs.len() != tower.steps.len() {
        return Err(TowerError::ConstructionFailure {
            step: 0,
            detail: format!("expected {} steps, built {}", pairs.len(), tower.steps.len()),
        });
    }
    for (step, &(a, b)) in tower.steps.iter().zip(&pairs) {
        if step.pair != (a, b) || step.v_basis.len() != a * b {
            return Err(TowerError::ConstructionFailure {
                step: step.index,
                detail: format!(
                    "step pair {:?} with {} basis vectors does not match slow pair ({a},{b})",
                    step.pair,
                    step.v_basis.len()
                ),
            });
        }
    }

    let all_gens: Vec<PositionGroup> = tower.af.domain_basis.clone();
    let span = DisjointSpan::new(&all_gens).map_err(|p| TowerError::ConstructionFailure {
        step: 0,
        detail: format!("position {:?} appears in two basis vectors", (p.0 + 1, p.1 + 1)),
    })?;

    // each V_i is abelian and the whole domain span closes under brackets
    for step in &tower.steps {
        for x in &step.v_basis {
            for y in &step.v_basis {
                if !bracket(x, y).is_empty() {
                    return Err(TowerError::ConstructionFailure {
                        step: step.index,
                        detail: String::from("V_i is not abelian"),
                    });
                }
            }
        }
    }
    for (i, x) in all_gens.iter().enumerate() {
        for y in &all_gens[i + 1..] {
            let br = bracket(x, y);
            if br.is_empty() {
                continue;
            }
            if !span.contains(&sparse_from_i64(&br)) {
                return Err(TowerError::ConstructionFailure {
                    step: 0,
                    detail: String::from("domain span is not closed under brackets"),
                });
            }
        }
    }
    Ok(())
}

/// The Weyl-Jordan normalization of the character support, per step: strictly
/// upper-triangular, unit coefficients, no repeated row or column.
fn verify_normalization(tower: &Tower) -> Result<(), TowerError> {
    for step in &tower.steps {
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for &(r, c, k) in &step.f_support {
            if r >= c {
                return Err(TowerError::NormalizationFailure {
                    step: step.index,
                    detail: format!(
                        "support position ({}, {}) is not upper triangular",
                        r + 1,
                        c + 1
                    ),
                });
            }
            if k != 1 {
                return Err(TowerError::NormalizationFailure {
                    step: step.index,
                    detail: format!("support coefficient {k} at ({}, {})", r + 1, c + 1),
                });
            }
            if rows.insert(r, c).is_some() || cols.insert(c, r).is_some() {
                return Err(TowerError::NormalizationFailure {
                    step: step.index,
                    detail: String::from("projection is not a partial permutation"),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// derived matrices
// ---------------------------------------------------------------------------

/// The dual matrix of the character: coefficient at each support position,
/// zero elsewhere.  Re-validates the Weyl-Jordan normalization.
pub fn af_dual_matrix(tower: &Tower) -> Result<ExactMatrix, TowerError> {
    verify_normalization(tower)?;
    let n = tower.n();
    let mut m = ExactMatrix::zero(n, n, ScalarDomain::Rational);
    for &(r, c, k) in &tower.af.support {
        m.set(r, c, Scalar::from_i64(ScalarDomain::Rational, k));
    }
    Ok(m)
}

/// The distilled nilpotent matrix of the orbit computation: per character
/// edge, keep one matrix entry (the realization copy in the smallest row)
/// and zero the other tied copies.
pub fn lemma_j_matrix(tower: &Tower) -> Result<ExactMatrix, TowerError> {
    verify_normalization(tower)?;
    let n = tower.n();
    let mut m = ExactMatrix::zero(n, n, ScalarDomain::Rational);
    for step in &tower.steps {
        for edge in &step.f_edges {
            let &(r, c) = edge.iter().min_by_key(|&&(r, _)| r).expect("nonempty edge");
            m.set(r, c, Scalar::one(ScalarDomain::Rational));
        }
    }
    if !m.matrix_power(n).expect("square power").is_zero() {
        return Err(TowerError::NormalizationFailure {
            step: 0,
            detail: String::from("distilled matrix is not nilpotent"),
        });
    }
    Ok(m)
}

/// `dim D_F = sum_i dim V_i`.
pub fn dim_df(tower: &Tower) -> usize {
    tower.steps.iter().map(|s| s.v_basis.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whittaker_tower_2_1() {
        let t = build_tower(2, 1).unwrap();
        assert_eq!(t.len(), 2);
        // V_1 is the full third column, reading the (2,3) entry
        assert_eq!(t.steps[0].v_basis, vec![vec![(0, 2)], vec![(1, 2)]]);
        assert_eq!(t.steps[0].f_support, vec![(1, 2, 1)]);
        // V_2 is the (1,2) line, reading it
        assert_eq!(t.steps[1].v_basis, vec![vec![(0, 1)]]);
        assert_eq!(t.steps[1].f_support, vec![(0, 1, 1)]);
        // D_F is the full upper unipotent with the superdiagonal character
        assert_eq!(t.af.support, vec![(1, 2, 1), (0, 1, 1)]);
        assert_eq!(dim_df(&t), 3);
    }

    #[test]
    fn whittaker_towers_read_the_superdiagonal() {
        for n1 in 2..7usize {
            let t = build_tower(n1, 1).unwrap();
            assert_eq!(t.len(), n1);
            let mut support = t.af.support.clone();
            support.sort_unstable();
            let expected: Vec<(usize, usize, i64)> = (0..n1).map(|i| (i, i + 1, 1)).collect();
            assert_eq!(support, expected, "({n1},1) should reproduce the Whittaker character");
            // positions cover the full upper unipotent
            let total: usize = t.steps.iter().map(|s| s.v_basis.len()).sum();
            assert_eq!(total, n1 * (n1 + 1) / 2);
        }
    }

    #[test]
    fn tower_3_2_step_dims() {
        let t = build_tower(3, 2).unwrap();
        let dims: Vec<usize> = t.steps.iter().map(|s| s.v_basis.len()).collect();
        assert_eq!(dims, vec![6, 2, 1]);
        assert_eq!(dim_df(&t), 9);
    }

    #[test]
    fn tower_5_3_dim() {
        let t = build_tower(5, 3).unwrap();
        let dims: Vec<usize> = t.steps.iter().map(|s| s.v_basis.len()).collect();
        assert_eq!(dims, vec![15, 6, 2, 1]);
        assert_eq!(dim_df(&t), 24);
    }

    #[test]
    fn open_orbit_report_2_1() {
        let t = build_tower(2, 1).unwrap();
        let r = verify_open_orbit(&t, 1);
        assert_eq!((r.p_dim, r.stabilizer_dim, r.character_space_dim), (7, 5, 2));
        assert!(r.open);
    }

    #[test]
    fn open_orbit_report_3_2() {
        let t = build_tower(3, 2).unwrap();
        let r = verify_open_orbit(&t, 1);
        assert_eq!(r.character_space_dim, 6);
        assert_eq!(r.p_dim - r.stabilizer_dim, 6);
        assert!(r.open);
    }

    #[test]
    fn zero_character_is_not_open_and_fails_the_bullet() {
        let t = build_tower(2, 1).unwrap();
        let r = open_orbit_report_with_support(&t, 1, &[]);
        assert!(!r.open);
        assert_eq!(r.stabilizer_dim, r.p_dim);
        let s = stabilizer_report_with_support(&t, 1, &[]);
        assert!(!s.spans_equal);
    }

    #[test]
    fn stabilizer_bullet_dims_2_1() {
        let t = build_tower(2, 1).unwrap();
        let s = verify_stabilizer_bullet(&t, 1);
        // mirabolic copy (dim 3) plus V_1 (dim 2)
        assert_eq!(s.kernel_dim, 5);
        assert_eq!(s.expected_dim, 5);
        assert!(s.spans_equal);
    }

    #[test]
    fn af_dual_matrix_2_1_is_regular_nilpotent() {
        let t = build_tower(2, 1).unwrap();
        let j = af_dual_matrix(&t).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let expect = (r, c) == (0, 1) || (r, c) == (1, 2);
                assert_eq!(!j.get(r, c).is_zero(), expect);
            }
        }
    }

    #[test]
    fn dual_matrix_reproduces_the_character_by_trace_pairing() {
        // F(X) = tr(J_F X^t) on every domain basis vector, including the
        // tied ones
        let t = build_tower(5, 3).unwrap();
        let j = af_dual_matrix(&t).unwrap();
        for gen in &t.af.domain_basis {
            let f_val: i64 = t
                .af
                .support
                .iter()
                .filter(|&&(r, c, _)| gen.contains(&(r, c)))
                .map(|&(_, _, k)| k)
                .sum();
            let trace: i64 = gen
                .iter()
                .map(|&(r, c)| {
                    let v = j.get(r, c);
                    if v.is_zero() {
                        0
                    } else {
                        1
                    }
                })
                .sum();
            assert_eq!(f_val, trace);
        }
    }

    #[test]
    fn unit_pair_tower() {
        let t = build_tower_allowing_unit_pair(1, 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.af.support, vec![(0, 1, 1)]);
    }

    #[test]
    fn relabel_keeps_conjugation_invariant_checks() {
        let t = build_tower(3, 2).unwrap();
        // an arbitrary permutation of {0..4}
        let perm = vec![2usize, 0, 4, 1, 3];
        let r = t.relabel(&perm);
        for i in 1..=r.len() {
            assert!(verify_open_orbit(&r, i).open);
            assert!(verify_stabilizer_bullet(&r, i).spans_equal);
        }
    }

    #[test]
    fn mirrored_tower_lives_in_the_opposite_corner() {
        let t = build_tower(2, 1).unwrap().mirrored();
        let mut support = t.af.support.clone();
        support.sort_unstable();
        assert_eq!(support, vec![(1, 0, 1), (2, 1, 1)]);
        for i in 1..=t.len() {
            assert!(verify_open_orbit(&t, i).open);
            assert!(verify_stabilizer_bullet(&t, i).spans_equal);
        }
    }
}
