//! Simplicial homology over GF(2) and Q, orientability, and the tightness
//! checks built on top of them.
//!
//! All ranks are exact: packed-bit elimination over GF(2) and fraction-free
//! integer elimination over Q.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{dual_graph, in_walkup_class, is_closed_weak_pseudomanifold, WalkupClass};
use crate::complex::{Complex, Face, FaceSource};
use crate::error::{domain, Error, Result};
use crate::gf2::BitMatrix;
use crate::intrank::{self, SparseRow};

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Gf2,
    Q,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Gf2 => "GF2",
            Field::Q => "Q",
        })
    }
}

/// The boundary map from `j`-chains to `(j-1)`-chains.
///
/// Row `r` is the `(j-1)`-face `row_faces[r]`, column `c` the `j`-face
/// `col_faces[c]`. Entries are stored by column as `(row, sign)` where the
/// sign of removing the vertex at position `k` of a sorted face is `(-1)^k`;
/// over GF(2) only the support matters.
#[derive(Clone, Debug)]
pub struct ChainBoundary {
    pub dim: usize,
    pub field: Field,
    pub row_faces: Vec<Face>,
    pub col_faces: Vec<Face>,
    columns: Vec<Vec<(usize, i64)>>,
}

impl ChainBoundary {
    fn build(dim: usize, field: Field, row_faces: Vec<Face>, col_faces: Vec<Face>) -> Self {
        let index: HashMap<&Face, usize> = row_faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let columns = col_faces
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, i64)> = s
                    .ridges()
                    .map(|(k, r)| (index[&r], if k % 2 == 0 { 1 } else { -1 }))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ChainBoundary { dim, field, row_faces, col_faces, columns }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_faces.len(), self.col_faces.len())
    }

    /// Entry at `(row, col)`: a sign over Q, 0/1 over GF(2).
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let v = self.columns[col].iter().find(|&&(r, _)| r == row).map_or(0, |&(_, s)| s);
        match self.field {
            Field::Gf2 => v.abs(),
            Field::Q => v,
        }
    }

    /// Row-major bit matrix (rows are `(j-1)`-faces).
    pub fn to_bits(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.row_faces.len(), self.col_faces.len());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, _) in col {
                m.set(r, c, true);
            }
        }
        m
    }

    fn column_rows(&self) -> Vec<SparseRow> {
        self.columns.clone()
    }

    fn row_major(&self) -> Vec<SparseRow> {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.row_faces.len()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, s) in col {
                rows[r].push((c, s));
            }
        }
        rows
    }

    /// Rank over the matrix's field, eliminating the face boundaries (columns).
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Gf2 => self.to_bits().transpose().rank(),
            Field::Q => intrank::rank(&self.column_rows()),
        }
    }

    /// Rank computed from the row-major orientation instead; an independent
    /// elimination path used to cross-check [`ChainBoundary::rank`].
    pub fn rank_by_rows(&self) -> usize {
        match self.field {
            Field::Gf2 => self.to_bits().rank(),
            Field::Q => intrank::rank_bigint(&self.row_major()),
        }
    }

    /// Whether `self ∘ next` vanishes, where `self` is the boundary on
    /// `j`-chains and `next` the one on `(j+1)`-chains.
    pub fn composes_to_zero(&self, next: &ChainBoundary) -> bool {
        assert_eq!(self.col_faces, next.row_faces, "boundaries are not consecutive");
        next.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(mid, s) in col {
                for &(r, t) in &self.columns[mid] {
                    *acc.entry(r).or_insert(0) += s * t;
                }
            }
            acc.values().all(|&v| match self.field {
                Field::Gf2 => v % 2 == 0,
                Field::Q => v == 0,
            })
        })
    }
}

pub fn boundary_matrix<K: FaceSource>(k: &K, j: usize, field: Field) -> Result<ChainBoundary> {
    let top = k.top_dim().ok_or_else(|| Error::Domain("boundary matrix of the empty complex".into()))?;
    if j == 0 || j > top {
        return domain(format!("boundary index {j} outside 1..={top}"));
    }
    Ok(ChainBoundary::build(j, field, k.faces_of_dim(j - 1), k.faces_of_dim(j)))
}

/// Betti numbers `(β_0, ..., β_d)` over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: Field,
    pub betti: Vec<usize>,
}

impl BettiVector {
    pub fn get(&self, j: usize) -> usize {
        self.betti.get(j).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// All boundary maps of a complex, `∂_1 ..= ∂_d`.
pub fn boundary_maps<K: FaceSource>(k: &K, field: Field) -> Result<Vec<ChainBoundary>> {
    let top = k.top_dim().ok_or_else(|| Error::Domain("empty complex".into()))?;
    let faces: Vec<Vec<Face>> = (0..=top).map(|j| k.faces_of_dim(j)).collect();
    Ok((1..=top)
        .map(|j| ChainBoundary::build(j, field, faces[j - 1].clone(), faces[j].clone()))
        .collect())
}

pub fn betti_numbers<K: FaceSource>(k: &K, field: Field) -> Result<BettiVector> {
    let maps = boundary_maps(k, field)?;
    let top = maps.len();
    let f: Vec<usize> = if top == 0 {
        vec![k.faces_of_dim(0).len()]
    } else {
        std::iter::once(maps[0].row_faces.len()).chain(maps.iter().map(|m| m.col_faces.len())).collect()
    };
    let mut ranks = vec![0usize; top + 2];
    for m in &maps {
        ranks[m.dim] = m.rank();
    }
    let betti = (0..=top).map(|j| f[j] - ranks[j] - ranks[j + 1]).collect();
    Ok(BettiVector { field, betti })
}

/// Orientability of a closed connected weak pseudomanifold, decided by
/// propagating facet orientations across the dual graph: two facets sharing
/// a codimension-one face must induce opposite orientations on it.
pub fn is_orientable(k: &Complex) -> Result<bool> {
    if !is_closed_weak_pseudomanifold(k) {
        return domain("orientability needs a closed weak pseudomanifold");
    }
    if !dual_graph(k).is_connected() {
        return domain("orientability needs a connected dual graph");
    }
    // neighbours with the sign relation orient[b] = rel * orient[a]
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); k.num_facets()];
    for (ridge, fs) in k.ridge_incidence() {
        let (a, b) = (fs[0], fs[1]);
        let pos = |i: usize| {
            let s = &k.facets()[i];
            s.position(s.minus(&ridge).vertices()[0]).expect("vertex of facet")
        };
        let rel: i8 = if (pos(a) + pos(b)) % 2 == 0 { -1 } else { 1 };
        adj[a].push((b, rel));
        adj[b].push((a, rel));
    }
    let mut orient = vec![0i8; k.num_facets()];
    orient[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, rel) in &adj[a] {
            let want = rel * orient[a];
            if orient[b] == 0 {
                orient[b] = want;
                queue.push_back(b);
            } else if orient[b] != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Name of the connected sum of `beta1` sphere bundles over the circle in
/// dimension `d`, orientable or twisted; the sphere when `beta1` is 0.
pub fn bundle_sum_name(d: usize, beta1: usize, orientable: bool) -> String {
    if beta1 == 0 {
        return format!("S{}", superscript(d));
    }
    let fibre = superscript(d - 1);
    if orientable {
        format!("(S{fibre}×S¹)^#{beta1}")
    } else {
        format!("(S{fibre}⋊S¹)^#{beta1} twisted")
    }
}

/// Euler characteristic of a member of `K(d)` with first Betti number
/// `beta1`: `2 - 2 β_1` for even `d` and `0` for odd `d`.
pub fn walkup_euler_characteristic(d: usize, beta1: usize) -> i64 {
    if d % 2 == 0 {
        2 - 2 * beta1 as i64
    } else {
        0
    }
}

/// Homeomorphism type of a connected member of `K(d)`, `d >= 4`, certified
/// through its first Betti number and orientability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    pub dim: usize,
    pub beta1: usize,
    pub orientable: bool,
    pub chi: i64,
    /// `χ = 2 - 2 β_1` in even dimension, `χ = 0` in odd dimension.
    pub euler_relation_holds: bool,
    pub homeomorphism_type: String,
}

pub fn identify_type(k: &Complex) -> Result<TypeReport> {
    if k.is_empty() || k.dim() < 4 {
        return domain("type identification needs dimension at least 4");
    }
    if !dual_graph(k).is_connected() {
        return domain("type identification needs a connected complex");
    }
    if !in_walkup_class(k, WalkupClass::K) {
        return domain("type identification needs a member of K(d)");
    }
    let chi = k.face_vector()?.chi;
    let beta1 = betti_numbers(k, Field::Gf2)?.get(1);
    let orientable = is_orientable(k)?;
    Ok(TypeReport {
        dim: k.dim(),
        beta1,
        orientable,
        chi,
        euler_relation_holds: chi == walkup_euler_characteristic(k.dim(), beta1),
        homeomorphism_type: bundle_sum_name(k.dim(), beta1, orientable),
    })
}

/// Largest vertex count accepted by [`is_tight_bruteforce`].
pub const TIGHT_BRUTEFORCE_MAX_VERTICES: usize = 16;

struct BoundaryBlock {
    bits: BitMatrix,
    rows: Vec<SparseRow>,
}

impl BoundaryBlock {
    fn sub_rank(&self, field: Field, rows: &[usize], cols: &[bool]) -> usize {
        match field {
            Field::Gf2 => {
                let cols: Vec<usize> = (0..cols.len()).filter(|&c| cols[c]).collect();
                self.bits.sub_rank(rows, &cols)
            }
            Field::Q => {
                let sub: Vec<SparseRow> = rows
                    .iter()
                    .map(|&r| self.rows[r].iter().copied().filter(|&(c, _)| cols[c]).collect())
                    .collect();
                intrank::rank(&sub)
            }
        }
    }
}

/// Decides tightness by checking every induced subcomplex.
///
/// For an induced subcomplex `Y` the map `H_j(Y) -> H_j(X)` is injective iff
/// `B_j(X) ∩ C_j(Y) = B_j(Y)`, i.e. iff
/// `rank ∂_{j+1}(X) - rank(∂_{j+1}(X) on rows outside Y) = rank ∂_{j+1}(Y)`.
/// Vertex subsets are visited in Gray-code order, toggling the faces that
/// contain the flipped vertex.
pub fn is_tight_bruteforce(k: &Complex, field: Field) -> Result<bool> {
    let n = k.num_vertices();
    if n > TIGHT_BRUTEFORCE_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "brute-force tightness is limited to {TIGHT_BRUTEFORCE_MAX_VERTICES} vertices (got {n}); \
             use the K*(d) certificate path instead"
        )));
    }
    if k.is_empty() {
        return domain("tightness of the empty complex");
    }
    if betti_numbers(k, field)?.get(0) != 1 {
        return Ok(false);
    }
    let d = k.dim();
    let pos = |v| k.vertices().binary_search(&v).expect("vertex") as u32;
    let faces: Vec<Vec<Face>> = (0..=d).map(|j| k.faces(j)).collect::<Result<_>>()?;
    let vertex_faces: Vec<Vec<Vec<usize>>> = faces
        .iter()
        .map(|fs| {
            let mut by_vertex = vec![Vec::new(); n];
            for (i, f) in fs.iter().enumerate() {
                for &v in f.vertices() {
                    by_vertex[pos(v) as usize].push(i);
                }
            }
            by_vertex
        })
        .collect();
    let blocks: Vec<BoundaryBlock> = (0..d)
        .map(|j| {
            let m = ChainBoundary::build(j + 1, field, faces[j].clone(), faces[j + 1].clone());
            BoundaryBlock { bits: m.to_bits(), rows: m.row_major() }
        })
        .collect();
    let full_rank: Vec<usize> = (0..d)
        .map(|j| blocks[j].sub_rank(field, &(0..faces[j].len()).collect::<Vec<_>>(), &vec![true; faces[j + 1].len()]))
        .collect();
    let mut missing: Vec<Vec<usize>> = faces.iter().map(|fs| fs.iter().map(Face::len).collect()).collect();
    let mut in_w = vec![false; n];
    for step in 1u32..(1u32 << n) {
        let v = step.trailing_zeros() as usize;
        in_w[v] = !in_w[v];
        for j in 0..=d {
            for &i in &vertex_faces[j][v] {
                if in_w[v] {
                    missing[j][i] -= 1;
                } else {
                    missing[j][i] += 1;
                }
            }
        }
        for j in 0..d {
            let inside: Vec<usize> = (0..faces[j].len()).filter(|&i| missing[j][i] == 0).collect();
            let outside: Vec<usize> = (0..faces[j].len()).filter(|&i| missing[j][i] != 0).collect();
            let cols_inside: Vec<bool> = missing[j + 1].iter().map(|&m| m == 0).collect();
            let lhs = full_rank[j] - blocks[j].sub_rank(field, &outside, &vec![true; faces[j + 1].len()]);
            let rhs = blocks[j].sub_rank(field, &inside, &cols_inside);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Tightness and strong minimality certified for members of `K*(d)`:
/// an F-orientable member of `K*(d)` is F-tight for `d != 3` (for `d = 3`
/// additionally `20 β_1 = (f_0 - 4)(f_0 - 5)`), and tight members of `K(d)`
/// are strongly minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCertificate {
    pub dim: usize,
    pub in_kstar: bool,
    pub orientable: Option<bool>,
    /// Q when orientable, GF(2) otherwise.
    pub field: Option<Field>,
    pub tight: bool,
    pub strongly_minimal: bool,
    /// Only evaluated in dimension 3.
    pub dim3_condition: Option<bool>,
    pub verdict: String,
}

pub fn certify_tight(k: &Complex) -> Result<TightCertificate> {
    if k.is_empty() {
        return domain("certificate for the empty complex");
    }
    let dim = k.dim();
    let in_kstar = in_walkup_class(k, WalkupClass::Kstar);
    if !in_kstar {
        return Ok(TightCertificate {
            dim,
            in_kstar,
            orientable: None,
            field: None,
            tight: false,
            strongly_minimal: false,
            dim3_condition: None,
            verdict: "not certified".into(),
        });
    }
    let orientable = is_orientable(k)?;
    let field = if orientable { Field::Q } else { Field::Gf2 };
    let dim3_condition = if dim == 3 {
        let beta1 = betti_numbers(k, Field::Gf2)?.get(1) as u128;
        let f0 = k.num_vertices() as u128;
        Some(20 * beta1 == f0.saturating_sub(4) * f0.saturating_sub(5))
    } else {
        None
    };
    let tight = dim3_condition.unwrap_or(true);
    Ok(TightCertificate {
        dim,
        in_kstar,
        orientable: Some(orientable),
        field: Some(field),
        tight,
        strongly_minimal: tight,
        dim3_condition,
        verdict: if tight { format!("{field}-tight, strongly minimal") } else { "not certified".into() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cross_polytope_boundary, standard_ball, standard_sphere};

    fn cx(lists: &[&[u32]]) -> Complex {
        Complex::from_lists(lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    #[test]
    fn circle_boundary_rank() {
        let tri = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let d1 = boundary_matrix(&tri, 1, Field::Q).unwrap();
        assert_eq!(d1.shape(), (3, 3));
        assert_eq!(d1.rank(), 2);
        assert_eq!(betti_numbers(&tri, Field::Q).unwrap().betti, vec![1, 1]);
        assert!(boundary_matrix(&tri, 2, Field::Q).is_err());
        assert!(boundary_matrix(&tri, 0, Field::Q).is_err());
    }

    #[test]
    fn signs_follow_positions() {
        let tri = cx(&[&[0, 1, 2]]);
        let d2 = boundary_matrix(&tri, 2, Field::Q).unwrap();
        // ∂[012] = [12] - [02] + [01]; rows sorted: 01, 02, 12
        assert_eq!((d2.entry(0, 0), d2.entry(1, 0), d2.entry(2, 0)), (1, -1, 1));
        let g = boundary_matrix(&tri, 2, Field::Gf2).unwrap();
        assert_eq!(g.entry(1, 0), 1);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = standard_sphere(3);
        for field in [Field::Gf2, Field::Q] {
            let maps = boundary_maps(&s, field).unwrap();
            for w in maps.windows(2) {
                assert!(w[0].composes_to_zero(&w[1]));
            }
        }
    }

    #[test]
    fn sphere_betti() {
        let b = betti_numbers(&standard_sphere(4), Field::Q).unwrap();
        assert_eq!(b.betti, vec![1, 0, 0, 0, 1]);
        assert_eq!(b.euler_characteristic(), 2);
        assert_eq!(betti_numbers(&standard_ball(3), Field::Gf2).unwrap().betti, vec![1, 0, 0, 0]);
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // 6-vertex RP^2
        let rp2 = cx(&[
            &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
            &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5],
        ]);
        assert_eq!(betti_numbers(&rp2, Field::Gf2).unwrap().betti, vec![1, 1, 1]);
        assert_eq!(betti_numbers(&rp2, Field::Q).unwrap().betti, vec![1, 0, 0]);
        assert!(!is_orientable(&rp2).unwrap());
    }

    #[test]
    fn orientability() {
        assert!(is_orientable(&standard_sphere(4)).unwrap());
        assert!(is_orientable(&cross_polytope_boundary(4).unwrap()).unwrap());
        assert!(is_orientable(&standard_ball(2)).is_err());
    }

    #[test]
    fn type_names() {
        assert_eq!(bundle_sum_name(4, 42, true), "(S³×S¹)^#42");
        assert_eq!(bundle_sum_name(4, 14, false), "(S³⋊S¹)^#14 twisted");
        assert_eq!(bundle_sum_name(4, 0, true), "S⁴");
        let t = identify_type(&standard_sphere(4)).unwrap();
        assert_eq!(t.homeomorphism_type, "S⁴");
        assert!(t.euler_relation_holds);
        assert!(identify_type(&standard_sphere(3)).is_err());
    }

    #[test]
    fn tightness_bruteforce_small() {
        assert!(is_tight_bruteforce(&standard_sphere(4), Field::Gf2).unwrap());
        assert!(is_tight_bruteforce(&standard_sphere(4), Field::Q).unwrap());
        let two_edges = cx(&[&[0, 1], &[2, 3]]);
        assert!(!is_tight_bruteforce(&two_edges, Field::Gf2).unwrap());
        let square = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert!(!is_tight_bruteforce(&square, Field::Gf2).unwrap());
        let triangle = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(is_tight_bruteforce(&triangle, Field::Gf2).unwrap());
        let big = standard_sphere(16);
        assert!(matches!(is_tight_bruteforce(&big, Field::Gf2), Err(Error::Capacity(_))));
    }

    #[test]
    fn certificate_for_sphere() {
        let c = certify_tight(&standard_sphere(4)).unwrap();
        assert!(c.in_kstar && c.tight && c.strongly_minimal);
        assert_eq!(c.field, Some(Field::Q));
        let c = certify_tight(&cross_polytope_boundary(5).unwrap()).unwrap();
        assert!(!c.in_kstar);
        assert_eq!(c.verdict, "not certified");
    }

    #[test]
    fn dim3_condition_branch() {
        // ∂Δ⁴ is in K*(3) with β_1 = 0 and (5-4)(5-5)/20 = 0.
        let c = certify_tight(&standard_sphere(3)).unwrap();
        assert_eq!(c.dim3_condition, Some(true));
        assert!(c.tight);
    }
}
