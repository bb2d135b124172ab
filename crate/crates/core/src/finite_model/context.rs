//! Precomputed state for one `(n1, n2, q)` model: the parabolic group table,
//! the unipotent coordinate sets of the tower, and the companion data the
//! unfolding check needs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{enumerate_gl, FqMat, GroupTable};
use super::{EnumLimits, FiniteError, ToyAdeleRing};
use crate::tower::{build_tower, build_tower_allowing_unit_pair, PositionGroup, Tower};

/// A unipotent subset enumerated through second-kind coordinates: the element
/// for coordinates `t` is the ordered product of `I + t_j G_j` over the
/// generators `G_j`.  The map is verified bijective, and the additive
/// character is linear in the coordinates: `F = sum t_j w_j`.
pub struct CoordSet {
    pub gens: Vec<PositionGroup>,
    /// `F`-weight of each generator mod `q`.
    pub weights: Vec<u64>,
    /// Table index per element, in odometer order of the coordinates.
    pub elems: Vec<u32>,
    /// `F` value per element.
    pub f_vals: Vec<u64>,
    /// Coordinate vector per element.
    pub coords: Vec<Vec<u64>>,
}

impl CoordSet {
    fn build(
        table: &GroupTable,
        gens: Vec<PositionGroup>,
        support: &[(usize, usize, i64)],
        what: &str,
    ) -> Result<CoordSet, FiniteError> {
        let q = table.q;
        let weights: Vec<u64> = gens
            .iter()
            .map(|g| {
                let w: i64 = support
                    .iter()
                    .filter(|&&(r, c, _)| g.contains(&(r, c)))
                    .map(|&(_, _, k)| k)
                    .sum();
                w.rem_euclid(q as i64) as u64
            })
            .collect();

        let count = (q as usize).pow(gens.len() as u32);
        let mut elems = Vec::with_capacity(count);
        let mut f_vals = Vec::with_capacity(count);
        let mut coords = Vec::with_capacity(count);
        let mut seen = BTreeSet::new();
        let mut t = vec![0u64; gens.len()];
        loop {
            let mut m = FqMat::identity(table.n, q);
            for (j, g) in gens.iter().enumerate() {
                if t[j] == 0 {
                    continue;
                }
                let mut factor = FqMat::identity(table.n, q);
                for &(r, c) in g {
                    factor.set(r, c, t[j]);
                }
                m = m.mul(&factor);
            }
            let idx = table.index_of(&m).ok_or_else(|| FiniteError::NotAGroup {
                detail: format!("{what}: element escapes the ambient table"),
            })?;
            if !seen.insert(idx) {
                return Err(FiniteError::NotAGroup {
                    detail: format!("{what}: coordinates are not injective"),
                });
            }
            let f: u64 = t
                .iter()
                .zip(&weights)
                .fold(0, |acc, (&tj, &wj)| (acc + tj * wj) % q);
            elems.push(idx);
            f_vals.push(f);
            coords.push(t.clone());

            let mut done = true;
            for tj in t.iter_mut() {
                *tj += 1;
                if *tj < q {
                    done = false;
                    break;
                }
                *tj = 0;
            }
            if done {
                break;
            }
        }
        Ok(CoordSet { gens, weights, elems, f_vals, coords })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// One element of the Levi `H(E)`, with the lookups the unfolding sums need.
#[derive(Clone, Copy, Debug)]
pub struct HPoint {
    /// Index of the block-diagonal element in the parabolic table.
    pub p1_idx: u32,
    /// Index of the upper-left block in the `GL_{n1}` table.
    pub gl1_idx: u32,
    /// Determinants of the two blocks.
    pub det1: u64,
    pub det2: u64,
}

/// Companion data for the unfolding check: the tower of the reduced pair,
/// realized inside `GL_{n1}` and carrying the inverse character.
pub struct Companion {
    pub tower: Tower,
    pub df: CoordSet,
}

/// Precomputed model state for one pair and field size.
pub struct FiniteContext {
    pub ring: ToyAdeleRing,
    pub n1: usize,
    pub n2: usize,
    pub tower: Tower,
    /// `P_1(E)` with full multiplication tables.
    pub p1: GroupTable,
    /// `GL_{n1}(E)`, the base of the second automorphic function.
    pub gl1: GroupTable,
    pub h_points: Vec<HPoint>,
    /// Scalars of `GL_{n1+n2}(E)` as parabolic-table indices.
    pub z_elems: Vec<u32>,
    /// Scalars of `GL_{n1}(E)` as `gl1`-table indices.
    pub gl1_z: Vec<u32>,
    /// `D_F(E)` with character values.
    pub df: CoordSet,
    /// `V_1(E)` with step-one character values.
    pub v1: CoordSet,
    /// `V^1(E) = prod_{i >= 2} V_i(E)`.
    pub vupper: CoordSet,
    /// `(Z V^1)(E)` as parabolic-table indices.
    pub zv_subgroup: Vec<u32>,
    /// Representatives of `(Z V^1)(E) \ H(E)`.
    pub f_cosets: Vec<u32>,
    /// Parabolic-table index to `h_points` position, for Levi elements.
    pub h_lookup: BTreeMap<u32, u32>,
    pub companion: Option<Companion>,
}

impl FiniteContext {
    pub fn new(n1: usize, n2: usize, q: u64, limits: &EnumLimits) -> Result<FiniteContext, FiniteError> {
        let ring = ToyAdeleRing::new(q)?;
        let tower = build_tower(n1, n2)?;
        let n = n1 + n2;

        let gl1_elems = enumerate_gl(n1, q, limits)?;
        let gl2_elems = enumerate_gl(n2, q, limits)?;
        let hom_count = (q as usize).pow((n1 * n2) as u32);
        let p1_count = gl1_elems.len() * gl2_elems.len() * hom_count;
        if p1_count > limits.max_table {
            return Err(FiniteError::SizeLimit {
                what: format!("parabolic table for ({n1},{n2}) over F_{q}"),
                needed: p1_count,
                limit: limits.max_table,
            });
        }

        let mut p1_elems = Vec::with_capacity(p1_count);
        for g1 in &gl1_elems {
            for g2 in &gl2_elems {
                let mut x = vec![0u64; n1 * n2];
                loop {
                    let mut m = FqMat::zero(n, q);
                    for r in 0..n1 {
                        for c in 0..n1 {
                            m.set(r, c, g1.get(r, c));
                        }
                    }
                    for r in 0..n2 {
                        for c in 0..n2 {
                            m.set(n1 + r, n1 + c, g2.get(r, c));
                        }
                    }
                    for r in 0..n1 {
                        for c in 0..n2 {
                            m.set(r, n1 + c, x[r * n2 + c]);
                        }
                    }
                    p1_elems.push(m);
                    let mut done = true;
                    for xi in x.iter_mut() {
                        *xi += 1;
                        if *xi < q {
                            done = false;
                            break;
                        }
                        *xi = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        let p1 = GroupTable::new(p1_elems, limits)?;
        let gl1 = GroupTable::new(gl1_elems.clone(), limits)?;

        let mut h_points = Vec::with_capacity(gl1_elems.len() * gl2_elems.len());
        for g1 in &gl1_elems {
            for g2 in &gl2_elems {
                let mut m = FqMat::zero(n, q);
                for r in 0..n1 {
                    for c in 0..n1 {
                        m.set(r, c, g1.get(r, c));
                    }
                }
                for r in 0..n2 {
                    for c in 0..n2 {
                        m.set(n1 + r, n1 + c, g2.get(r, c));
                    }
                }
                let p1_idx = p1.index_of(&m).expect("Levi element in parabolic table");
                let gl1_idx = gl1.index_of(g1).expect("block in GL table");
                h_points.push(HPoint { p1_idx, gl1_idx, det1: g1.det(), det2: g2.det() });
            }
        }

        let z_elems: Vec<u32> = (1..q)
            .map(|u| p1.index_of(&FqMat::scalar(n, q, u)).expect("scalar in parabolic table"))
            .collect();
        let gl1_z: Vec<u32> = (1..q)
            .map(|u| gl1.index_of(&FqMat::scalar(n1, q, u)).expect("scalar in GL table"))
            .collect();

        check_edges_generic(&tower, q)?;
        let df = CoordSet::build(
            &p1,
            tower.af.domain_basis.clone(),
            &tower.af.support,
            "D_F(E)",
        )?;
        let v1 = CoordSet::build(
            &p1,
            tower.steps[0].v_basis.clone(),
            &tower.steps[0].f_support,
            "V_1(E)",
        )?;
        let vupper_gens: Vec<PositionGroup> =
            tower.steps[1..].iter().flat_map(|s| s.v_basis.iter().cloned()).collect();
        let vupper = CoordSet::build(&p1, vupper_gens, &tower.af.support, "V^1(E)")?;

        let mut zv: BTreeSet<u32> = BTreeSet::new();
        for &z in &z_elems {
            for &v in &vupper.elems {
                zv.insert(p1.mul(z, v));
            }
        }
        let zv_subgroup: Vec<u32> = zv.into_iter().collect();
        let h_all: Vec<u32> = h_points.iter().map(|h| h.p1_idx).collect();
        let f_cosets = p1.coset_reps(&zv_subgroup, &h_all)?;

        let h_lookup: BTreeMap<u32, u32> =
            h_points.iter().enumerate().map(|(i, h)| (h.p1_idx, i as u32)).collect();
        let companion = build_companion(&tower, &gl1, q)?;

        Ok(FiniteContext {
            ring,
            n1,
            n2,
            tower,
            p1,
            gl1,
            h_points,
            z_elems,
            gl1_z,
            df,
            v1,
            vupper,
            zv_subgroup,
            f_cosets,
            h_lookup,
            companion,
        })
    }

    pub fn q(&self) -> u64 {
        self.ring.q
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }
}

/// The reduced character must stay generic after reduction mod `q`: every
/// identity-sub-block edge keeps a nonzero weight.
fn check_edges_generic(tower: &Tower, q: u64) -> Result<(), FiniteError> {
    for step in &tower.steps {
        for edge in &step.f_edges {
            let w: i64 = step
                .f_support
                .iter()
                .filter(|&&(r, c, _)| edge.contains(&(r, c)))
                .map(|&(_, _, k)| k)
                .sum();
            if w.rem_euclid(q as i64) == 0 {
                return Err(FiniteError::ModularDegeneration {
                    detail: format!("step {} edge weight {w} vanishes mod {q}", step.index),
                });
            }
        }
    }
    Ok(())
}

/// The tower of the reduced pair, realized in `GL_{n1}` with the inverse
/// character.  `None` when some `V_i` (`i >= 2`) of the main tower leaves the
/// leading diagonal block, in which case the unfolding quotient is not
/// modeled for this pair.
fn build_companion(
    tower: &Tower,
    gl1: &GroupTable,
    q: u64,
) -> Result<Option<Companion>, FiniteError> {
    let n1 = tower.n1;
    let n2 = tower.n2;
    let inside = tower.steps[1..]
        .iter()
        .flat_map(|s| s.v_basis.iter())
        .flatten()
        .all(|&(r, c)| r < n1 && c < n1);
    if !inside || n1 <= n2 {
        return Ok(None);
    }
    let k1 = tower.chain.quotients()[0];
    let comp = if k1 == 1 {
        // the replacement rule swaps the pair and the corner
        build_tower_allowing_unit_pair(n2, n1 - n2)?.mirrored()
    } else {
        build_tower_allowing_unit_pair(n1 - n2, n2)?
    }
    .negated();
    check_edges_generic(&comp, q)?;
    let df = CoordSet::build(gl1, comp.af.domain_basis.clone(), &comp.af.support, "D_F'(E)")?;
    Ok(Some(Companion { tower: comp, df }))
}
