//! Pure simplicial complexes stored by their facets.
//!
//! Faces are strictly increasing vertex sequences; every container of faces
//! returned from this module is sorted by that canonical form so that output
//! is reproducible. Lower-dimensional faces are enumerated on demand from the
//! facet list.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub type Vertex = u32;

/// A simplex given by its sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from arbitrary vertex order; repeated vertices are rejected.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("repeated vertex in face {v:?}"));
        }
        Ok(Face(v))
    }

    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, i.e. cardinality minus one. The empty face has no dimension.
    pub fn dim(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        'outer: for &v in &self.0 {
            for &w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// The face with the vertex at `pos` removed.
    pub fn remove_at(&self, pos: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(pos);
        Face(v)
    }

    pub fn without(&self, v: Vertex) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|&w| !other.contains(w)).collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|&w| other.contains(w)).collect())
    }

    pub fn with_vertex(&self, v: Vertex) -> Result<Face> {
        Face::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    /// Codimension-one faces, paired with the position of the removed vertex.
    pub fn ridges(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.0.len()).map(move |k| (k, self.remove_at(k)))
    }

    /// All subfaces with `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0.iter().copied().combinations(size).map(Face)
    }

    /// Applies a vertex map and re-sorts.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Face> {
        Face::new(self.0.iter().map(|&v| f(v)))
    }

    /// Bit mask of the vertex ids; `None` if some id is 64 or larger.
    pub fn mask(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |m, &v| (v < 64).then(|| m | (1u64 << v)))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(f: Face) -> Self {
        f.0
    }
}

/// Face counts `(f_0, ..., f_d)` and the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceVector {
    pub counts: Vec<usize>,
    pub chi: i64,
}

impl FaceVector {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        let chi = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        FaceVector { counts, chi }
    }

    pub fn f(&self, j: usize) -> usize {
        self.counts.get(j).copied().unwrap_or(0)
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.counts.iter().join(","))
    }
}

/// Anything that can list its faces by dimension; implemented by both the pure
/// and the general (mixed-dimension) complex.
pub trait FaceSource {
    /// Largest face dimension, `None` for the empty complex.
    fn top_dim(&self) -> Option<usize>;
    /// All faces of dimension `j`, sorted canonically.
    fn faces_of_dim(&self, j: usize) -> Vec<Face>;
    fn vertex_list(&self) -> Vec<Vertex>;
}

fn collect_faces<'a>(facets: impl Iterator<Item = &'a Face>, size: usize) -> Vec<Face> {
    let mut out: Vec<Face> = facets
        .filter(|f| f.len() >= size)
        .flat_map(|f| f.subfaces(size).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A pure simplicial complex.
///
/// Vertex ids need not be dense: links and stars keep the ids of the parent
/// complex. Complexes read from files or built by the catalog use dense ids
/// `0..f_0`, see [`Complex::is_dense`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    dim: usize,
    facets: Vec<Face>,
    vertices: Vec<Vertex>,
}

impl Complex {
    /// Builds a complex from a nonempty list of equal-size facets. Duplicate
    /// facets are merged.
    pub fn new(facets: impl IntoIterator<Item = Face>) -> Result<Self> {
        let mut facets: Vec<Face> = facets.into_iter().collect();
        let Some(first) = facets.first() else {
            return domain("a complex needs at least one facet");
        };
        let Some(dim) = first.dim() else {
            return domain("facets must be nonempty");
        };
        if let Some(bad) = facets.iter().find(|f| f.len() != dim + 1) {
            return domain(format!(
                "facet {{{bad}}} has dimension {:?}, expected {dim} (complex must be pure)",
                bad.dim()
            ));
        }
        facets.sort_unstable();
        facets.dedup();
        let mut vertices: Vec<Vertex> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Complex { dim, facets, vertices })
    }

    /// Convenience constructor from raw vertex lists.
    pub fn from_lists<I, L>(lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = Vertex>,
    {
        let facets = lists.into_iter().map(Face::new).collect::<Result<Vec<_>>>()?;
        Complex::new(facets)
    }

    /// The empty complex of the given dimension (no facets).
    pub fn empty(dim: usize) -> Self {
        Complex { dim, facets: Vec::new(), vertices: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_facet(&self, f: &Face) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    pub fn facet_index(&self, f: &Face) -> Option<usize> {
        self.facets.binary_search(f).ok()
    }

    /// Whether `f` is a face, i.e. contained in some facet.
    pub fn has_face(&self, f: &Face) -> bool {
        self.facets.iter().any(|s| f.is_subset_of(s))
    }

    /// True when the vertex ids are exactly `0..f_0`.
    pub fn is_dense(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// All `j`-faces.
    pub fn faces(&self, j: usize) -> Result<Vec<Face>> {
        if j > self.dim {
            return domain(format!("face dimension {j} exceeds complex dimension {}", self.dim));
        }
        Ok(collect_faces(self.facets.iter(), j + 1))
    }

    pub fn face_vector(&self) -> Result<FaceVector> {
        if self.is_empty() {
            return domain("face vector of the empty complex");
        }
        let counts = (0..=self.dim)
            .map(|j| if j == 0 { self.vertices.len() } else { collect_faces(self.facets.iter(), j + 1).len() })
            .collect();
        Ok(FaceVector::from_counts(counts))
    }

    /// Link of a face: `{σ \ f : f ⊆ σ}`. The face must be a proper face of
    /// some facet so that the link is a nonempty pure complex.
    pub fn link(&self, f: &Face) -> Result<Complex> {
        if f.is_empty() {
            return Ok(self.clone());
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|s| f.is_subset_of(s))
            .map(|s| s.minus(f))
            .collect();
        if facets.is_empty() {
            return domain(format!("{{{f}}} is not a face"));
        }
        if facets[0].is_empty() {
            return domain(format!("{{{f}}} is a facet; its link is the empty-face complex"));
        }
        Complex::new(facets)
    }

    pub fn vertex_link(&self, v: Vertex) -> Result<Complex> {
        self.link(&Face::from_sorted(vec![v]))
    }

    /// The facets containing `v`.
    pub fn star(&self, v: Vertex) -> Result<Complex> {
        if !self.has_vertex(v) {
            return domain(format!("vertex {v} is not in the complex"));
        }
        Complex::new(self.facets.iter().filter(|s| s.contains(v)).cloned())
    }

    /// Map from every `(d-1)`-face to the indices of facets containing it.
    pub fn ridge_incidence(&self) -> HashMap<Face, Vec<usize>> {
        let mut map: HashMap<Face, Vec<usize>> = HashMap::with_capacity(self.facets.len() * (self.dim + 1));
        for (i, s) in self.facets.iter().enumerate() {
            for (_, r) in s.ridges() {
                map.entry(r).or_default().push(i);
            }
        }
        map
    }

    /// Boundary of a weak pseudomanifold: the `(d-1)`-faces lying in exactly
    /// one facet. Closed complexes yield the empty complex.
    pub fn boundary(&self) -> Result<Complex> {
        if self.dim == 0 {
            return domain("boundary of a 0-dimensional complex is undefined");
        }
        let inc = self.ridge_incidence();
        if let Some((r, fs)) = inc.iter().find(|(_, fs)| fs.len() > 2) {
            return domain(format!(
                "not a weak pseudomanifold: ridge {{{r}}} lies in {} facets",
                fs.len()
            ));
        }
        let free: Vec<Face> = inc.into_iter().filter(|(_, fs)| fs.len() == 1).map(|(r, _)| r).collect();
        if free.is_empty() {
            Ok(Complex::empty(self.dim - 1))
        } else {
            Complex::new(free)
        }
    }

    /// The pure `j`-complex of all `j`-faces.
    pub fn skeleton(&self, j: usize) -> Result<Complex> {
        let faces = self.faces(j)?;
        Complex::new(faces)
    }

    /// Every `l`-subset of the vertex set is a face.
    pub fn is_l_neighborly(&self, l: usize) -> bool {
        if l == 0 {
            return true;
        }
        let expected = binomial(self.vertices.len() as u64, l as u64);
        if l > self.dim + 1 {
            return expected == 0;
        }
        collect_faces(self.facets.iter(), l).len() as u128 == expected
    }

    /// The subcomplex of all faces whose vertices lie in `w`, given by its
    /// maximal faces (generally not pure).
    pub fn induced(&self, w: &[Vertex]) -> GeneralComplex {
        let w = Face::new(w.iter().copied().filter(|&v| self.has_vertex(v)))
            .expect("vertex set with duplicates");
        GeneralComplex::from_faces(self.facets.iter().map(|s| s.intersection(&w)))
    }

    /// Renames vertices through an injective map.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Complex> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let facets = self.facets.iter().map(|s| s.map(&f)).collect::<Result<Vec<_>>>()?;
        let out = Complex::new(facets)?;
        if out.facets.len() != self.facets.len() {
            return domain("relabeling is not injective");
        }
        Ok(out)
    }

    /// Relabels onto `0..f_0` preserving order; returns the old id of each new id.
    pub fn to_dense(&self) -> (Complex, Vec<Vertex>) {
        let old = self.vertices.clone();
        let dense = self
            .relabel(|v| old.binary_search(&v).expect("vertex of complex") as Vertex)
            .expect("order-preserving relabel is injective");
        (dense, old)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.facets {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FaceSource for Complex {
    fn top_dim(&self) -> Option<usize> {
        (!self.is_empty()).then_some(self.dim)
    }

    fn faces_of_dim(&self, j: usize) -> Vec<Face> {
        self.faces(j).unwrap_or_default()
    }

    fn vertex_list(&self) -> Vec<Vertex> {
        self.vertices.clone()
    }
}

/// A finite simplicial complex given by its maximal faces, which may have
/// different dimensions. Produced by [`Complex::induced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralComplex {
    maximal: Vec<Face>,
}

impl GeneralComplex {
    /// Keeps only the inclusion-maximal nonempty faces of the input.
    pub fn from_faces(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut maximal: Vec<Face> = Vec::new();
        for f in faces {
            if !maximal.iter().any(|m| f.is_subset_of(m)) {
                maximal.push(f);
            }
        }
        maximal.sort_unstable();
        GeneralComplex { maximal }
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal
    }

    pub fn is_pure(&self) -> bool {
        self.maximal.iter().map(Face::len).all_equal()
    }

    /// Converts to a pure complex when all maximal faces share a dimension.
    pub fn to_pure(&self) -> Option<Complex> {
        if self.maximal.is_empty() || !self.is_pure() {
            return None;
        }
        Complex::new(self.maximal.clone()).ok()
    }
}

impl From<&Complex> for GeneralComplex {
    fn from(k: &Complex) -> Self {
        GeneralComplex { maximal: k.facets.clone() }
    }
}

impl FaceSource for GeneralComplex {
    fn top_dim(&self) -> Option<usize> {
        self.maximal.iter().map(Face::len).max().and_then(|l| l.checked_sub(1))
    }

    fn faces_of_dim(&self, j: usize) -> Vec<Face> {
        collect_faces(self.maximal.iter(), j + 1)
    }

    fn vertex_list(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.maximal.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[Vertex]]) -> Complex {
        Complex::from_lists(lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    fn simplex_boundary(n: u32) -> Complex {
        let all: Vec<Vertex> = (0..n).collect();
        Complex::new(Face::new(all).unwrap().ridges().map(|(_, r)| r)).unwrap()
    }

    #[test]
    fn face_rejects_repeats_and_sorts() {
        assert!(Face::new([1, 2, 1]).is_err());
        assert_eq!(Face::new([3, 1, 2]).unwrap().vertices(), &[1, 2, 3]);
    }

    #[test]
    fn subset_check() {
        let a = Face::new([1, 3]).unwrap();
        let b = Face::new([0, 1, 2, 3]).unwrap();
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(!Face::new([1, 4]).unwrap().is_subset_of(&b));
        assert!(Face::new([]).unwrap().is_subset_of(&a));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        assert!(Complex::from_lists([vec![0, 1, 2], vec![2, 3]]).is_err());
        assert!(Complex::new(Vec::<Face>::new()).is_err());
    }

    #[test]
    fn edges_of_simplex_boundary() {
        let k = simplex_boundary(6);
        assert_eq!(k.faces(1).unwrap().len(), 15);
        assert!(k.faces(5).is_err());
    }

    #[test]
    fn triangles_of_two_tetrahedra() {
        // 0123 has 4 triangles, 1234 has 4, sharing 123.
        let k = cx(&[&[0, 1, 2, 3], &[1, 2, 3, 4]]);
        assert_eq!(k.faces(2).unwrap().len(), 7);
    }

    #[test]
    fn simplex_boundary_face_vector() {
        let fv = simplex_boundary(6).face_vector().unwrap();
        assert_eq!(fv.counts, vec![6, 15, 20, 15, 6]);
        assert_eq!(fv.chi, 2);
    }

    #[test]
    fn links_and_stars() {
        let k = simplex_boundary(6);
        for v in 0..6 {
            let l = k.vertex_link(v).unwrap();
            assert_eq!(l, simplex_boundary(6).star(v).unwrap().link(&Face::new([v]).unwrap()).unwrap());
            assert_eq!(l.num_facets(), 5);
            assert_eq!(l.num_vertices(), 5);
            assert_eq!(l.face_vector().unwrap().counts, vec![5, 10, 10, 5]);
            assert_eq!(k.star(v).unwrap().num_facets(), 5);
        }
        let path = cx(&[&[0, 1, 2], &[0, 2, 3]]).vertex_link(0).unwrap();
        assert_eq!(path, cx(&[&[1, 2], &[2, 3]]));
        assert_eq!(cx(&[&[0, 1, 2, 3], &[1, 2, 3, 4]]).star(4).unwrap(), cx(&[&[1, 2, 3, 4]]));
        assert!(k.star(9).is_err());
        assert!(k.link(&Face::new([0, 9]).unwrap()).is_err());
    }

    #[test]
    fn boundaries() {
        let ball = cx(&[&[0, 1, 2, 3, 4, 5]]);
        let b = ball.boundary().unwrap();
        assert_eq!(b, simplex_boundary(6));
        assert!(b.boundary().unwrap().is_empty());
        let bad = cx(&[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 2, 5]]);
        assert!(bad.boundary().is_err());
    }

    #[test]
    fn skeletons() {
        let k = simplex_boundary(6);
        let s0 = k.skeleton(0).unwrap();
        assert_eq!(s0.num_facets(), 6);
        assert_eq!(s0.dim(), 0);
        let s1 = k.skeleton(1).unwrap();
        assert_eq!(s1.num_facets(), 15);
    }

    #[test]
    fn neighborliness() {
        assert!(simplex_boundary(6).is_l_neighborly(2));
        assert!(simplex_boundary(6).is_l_neighborly(5));
        assert!(!simplex_boundary(6).is_l_neighborly(6));
        assert!(!cx(&[&[0, 1, 2, 3], &[4, 5, 6, 7]]).is_l_neighborly(2));
    }

    #[test]
    fn induced_subcomplexes() {
        let k = cx(&[&[0, 1, 2, 3], &[1, 2, 3, 4]]);
        let all = k.induced(k.vertices());
        assert_eq!(all.to_pure().unwrap(), k);
        assert_eq!(k.induced(&[2]).maximal_faces(), &[Face::new([2]).unwrap()]);
        let y = k.induced(&[0, 1, 2, 4]);
        assert_eq!(y.maximal_faces(), &[Face::new([0, 1, 2]).unwrap(), Face::new([1, 2, 4]).unwrap()]);
    }

    #[test]
    fn relabel_and_dense() {
        let k = cx(&[&[3, 5, 9]]);
        assert!(!k.is_dense());
        let (d, old) = k.to_dense();
        assert!(d.is_dense());
        assert_eq!(old, vec![3, 5, 9]);
        assert!(k.relabel(|_| 0).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(41, 2), 820);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(36, 2), 630);
    }
}
