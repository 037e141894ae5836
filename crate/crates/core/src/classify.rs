//! Recognition of pseudomanifolds, stacked balls and spheres, Walkup classes,
//! and the face-vector lower bounds for closed manifolds.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{binomial, Complex, Face, Vertex};
use crate::error::{domain, Result};

/// Facet adjacency graph: facets `i` and `j` are adjacent when they share a
/// codimension-one face. Indices follow [`Complex::facets`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub num_nodes: usize,
    /// Sorted pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn num_components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_nodes];
        let mut comps = 0;
        for s in 0..self.num_nodes {
            if seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.num_nodes > 0 && self.num_components() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.num_nodes
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }
}

pub fn dual_graph(k: &Complex) -> DualGraph {
    let mut edges = Vec::new();
    for fs in k.ridge_incidence().values() {
        for (x, &a) in fs.iter().enumerate() {
            for &b in &fs[x + 1..] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    DualGraph { num_nodes: k.num_facets(), edges }
}

/// Every codimension-one face lies in at most two facets.
pub fn is_weak_pseudomanifold(k: &Complex) -> bool {
    k.ridge_incidence().values().all(|fs| fs.len() <= 2)
}

pub fn is_pseudomanifold(k: &Complex) -> bool {
    !k.is_empty() && is_weak_pseudomanifold(k) && dual_graph(k).is_connected()
}

/// Weak pseudomanifold with empty boundary.
pub fn is_closed_weak_pseudomanifold(k: &Complex) -> bool {
    !k.is_empty() && k.ridge_incidence().values().all(|fs| fs.len() == 2)
}

/// A pure complex is a stacked ball iff its dual graph is a tree, it is a weak
/// pseudomanifold, and `f_0 = f_d + d`.
///
/// In dimension 0 only the single point counts as a stacked ball.
pub fn is_stacked_ball(k: &Complex) -> bool {
    if k.is_empty() {
        return false;
    }
    let d = k.dim();
    if d == 0 {
        return k.num_facets() == 1;
    }
    k.num_vertices() == k.num_facets() + d && is_weak_pseudomanifold(k) && dual_graph(k).is_tree()
}

/// Recognises boundaries of stacked balls by repeatedly collapsing the star
/// of the lowest-numbered vertex whose link is the boundary of a simplex,
/// until the boundary of a single simplex is reached.
///
/// The input must be a closed weak pseudomanifold. In dimension 0 the stacked
/// spheres are exactly the pairs of points.
pub fn is_stacked_sphere(k: &Complex) -> Result<bool> {
    if !is_closed_weak_pseudomanifold(k) {
        return domain("stacked sphere recognition needs a closed weak pseudomanifold");
    }
    let d = k.dim();
    if d == 0 {
        return Ok(k.num_facets() == 2);
    }
    let mut facets: HashSet<Face> = k.facets().iter().cloned().collect();
    loop {
        let mut incident: HashMap<Vertex, Vec<&Face>> = HashMap::new();
        for s in &facets {
            for &v in s.vertices() {
                incident.entry(v).or_default().push(s);
            }
        }
        if facets.len() == d + 2 && incident.len() == d + 2 {
            return Ok(true);
        }
        let mut candidates: Vec<Vertex> = incident
            .iter()
            .filter(|(_, star)| star.len() == d + 1)
            .map(|(&v, _)| v)
            .collect();
        candidates.sort_unstable();
        let mut step = None;
        for v in candidates {
            let star = &incident[&v];
            let mut link_vertices: Vec<Vertex> = star
                .iter()
                .flat_map(|s| s.vertices().iter().copied())
                .filter(|&w| w != v)
                .collect();
            link_vertices.sort_unstable();
            link_vertices.dedup();
            if link_vertices.len() == d + 1 {
                let removed: Vec<Face> = star.iter().map(|&s| s.clone()).collect();
                step = Some((removed, Face::from_sorted(link_vertices)));
                break;
            }
        }
        let Some((removed, new_facet)) = step else {
            return Ok(false);
        };
        if facets.contains(&new_facet) {
            return Ok(false);
        }
        for s in &removed {
            facets.remove(s);
        }
        facets.insert(new_facet);
    }
}

/// Walkup's class and its two variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WalkupClass {
    /// Every vertex link is a stacked sphere.
    K,
    /// Every vertex link is a stacked ball.
    Kbar,
    /// 2-neighborly members of `K`.
    Kstar,
}

pub fn in_walkup_class(k: &Complex, class: WalkupClass) -> bool {
    if k.is_empty() || k.dim() == 0 {
        return false;
    }
    match class {
        WalkupClass::K => k.vertices().iter().all(|&v| {
            k.vertex_link(v)
                .ok()
                .and_then(|l| is_stacked_sphere(&l).ok())
                .unwrap_or(false)
        }),
        WalkupClass::Kbar => k
            .vertices()
            .iter()
            .all(|&v| k.vertex_link(v).map(|l| is_stacked_ball(&l)).unwrap_or(false)),
        WalkupClass::Kstar => k.is_l_neighborly(2) && in_walkup_class(k, WalkupClass::K),
    }
}

/// Adds one fresh apex vertex (one more than the largest id) to every facet.
pub fn cone(k: &Complex) -> Result<Complex> {
    if k.is_empty() {
        return domain("cone over the empty complex");
    }
    let apex = k.vertices().last().copied().unwrap_or(0) + 1;
    Complex::new(k.facets().iter().map(|s| s.with_vertex(apex)).collect::<Result<Vec<_>>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub j: usize,
    pub bound: i128,
    pub actual: i128,
    pub holds: bool,
    pub equality: bool,
}

/// How much of the "connected closed manifold" hypothesis was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifoldness {
    /// Caller asserted it; nothing was checked.
    Assumed,
    /// Connected and every vertex link is a stacked sphere.
    VerifiedStackedLinks,
    /// Strict mode could not certify the hypothesis with the available recognizers.
    Unverified,
}

/// Evaluation of the face-number lower bounds for a closed `d`-manifold with
/// first GF(2) Betti number `beta1`:
///
/// * `f_j >= C(d+1, j) f_0 + j C(d+2, j+1) (beta1 - 1)` for `1 <= j < d`,
/// * `f_d >= d f_0 + (d-1)(d+2)(beta1 - 1)`,
/// * `C(f_0 - d - 1, 2) >= C(d+2, 2) beta1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub dim: usize,
    pub beta1: u64,
    pub rows: Vec<BoundRow>,
    pub pair_lhs: i128,
    pub pair_rhs: i128,
    pub pair_holds: bool,
    pub pair_equality: bool,
    pub manifoldness: Manifoldness,
}

impl BoundReport {
    pub fn row(&self, j: usize) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.j == j)
    }

    pub fn all_hold(&self) -> bool {
        self.pair_holds && self.rows.iter().all(|r| r.holds)
    }
}

fn binom_signed(n: i128, k: u64) -> i128 {
    if n < 0 {
        return 0;
    }
    binomial(n as u64, k) as i128
}

/// Evaluates the bounds; manifoldness of `k` is the caller's obligation.
pub fn check_lower_bounds(k: &Complex, beta1: u64) -> Result<BoundReport> {
    let fv = k.face_vector()?;
    let d = k.dim();
    if d < 3 {
        return domain(format!("lower bounds need dimension at least 3, got {d}"));
    }
    let f0 = fv.f(0) as i128;
    let b = beta1 as i128;
    let dd = d as i128;
    let rows = (1..=d)
        .map(|j| {
            let bound = if j < d {
                binomial(d as u64 + 1, j as u64) as i128 * f0
                    + j as i128 * binomial(d as u64 + 2, j as u64 + 1) as i128 * (b - 1)
            } else {
                dd * f0 + (dd - 1) * (dd + 2) * (b - 1)
            };
            let actual = fv.f(j) as i128;
            BoundRow { j, bound, actual, holds: actual >= bound, equality: actual == bound }
        })
        .collect();
    let pair_lhs = binom_signed(f0 - dd - 1, 2);
    let pair_rhs = binomial(d as u64 + 2, 2) as i128 * b;
    Ok(BoundReport {
        dim: d,
        beta1,
        rows,
        pair_lhs,
        pair_rhs,
        pair_holds: pair_lhs >= pair_rhs,
        pair_equality: pair_lhs == pair_rhs,
        manifoldness: Manifoldness::Assumed,
    })
}

/// Like [`check_lower_bounds`], additionally trying to certify that `k` is a
/// connected closed manifold: when every vertex link is a stacked sphere the
/// hypothesis holds, otherwise it is reported as unverified.
pub fn check_lower_bounds_strict(k: &Complex, beta1: u64) -> Result<BoundReport> {
    let mut report = check_lower_bounds(k, beta1)?;
    report.manifoldness = if is_pseudomanifold(k) && in_walkup_class(k, WalkupClass::K) {
        Manifoldness::VerifiedStackedLinks
    } else {
        Manifoldness::Unverified
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[Vertex]]) -> Complex {
        Complex::from_lists(lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    fn simplex_boundary(n: u32) -> Complex {
        Complex::new(Face::new(0..n).unwrap().ridges().map(|(_, r)| r)).unwrap()
    }

    #[test]
    fn dual_graphs() {
        let g = dual_graph(&simplex_boundary(6));
        assert_eq!(g.edges.len(), 15);
        assert_eq!(g.num_nodes, 6);
        let g = dual_graph(&cx(&[&[0, 1, 2, 3], &[1, 2, 3, 4]]));
        assert_eq!(g.edges, vec![(0, 1)]);
    }

    #[test]
    fn pseudomanifold_checks() {
        assert!(is_weak_pseudomanifold(&simplex_boundary(6)));
        assert!(!is_weak_pseudomanifold(&cx(&[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 2, 5]])));
        assert!(!is_pseudomanifold(&cx(&[&[0, 1, 2, 3], &[4, 5, 6, 7]])));
        assert!(is_pseudomanifold(&simplex_boundary(6)));
    }

    #[test]
    fn nonball_with_tree_dual_graph() {
        let k = cx(&[&[1, 2, 3, 4], &[2, 3, 4, 5], &[3, 4, 5, 6], &[4, 5, 6, 7], &[5, 6, 7, 1]]);
        assert!(dual_graph(&k).is_tree());
        assert!(is_pseudomanifold(&k));
        assert_eq!(k.num_vertices(), 7);
        assert!(!is_stacked_ball(&k));
    }

    #[test]
    fn standard_ball_is_stacked() {
        assert!(is_stacked_ball(&cx(&[&[0, 1, 2, 3, 4, 5]])));
        assert!(is_stacked_ball(&cx(&[&[0, 1, 2, 3, 4, 5], &[1, 2, 3, 4, 5, 6]])));
    }

    #[test]
    fn stacked_spheres() {
        assert!(is_stacked_sphere(&simplex_boundary(6)).unwrap());
        let b = cx(&[&[0, 1, 2, 3, 4, 5], &[1, 2, 3, 4, 5, 6]]).boundary().unwrap();
        assert!(is_stacked_sphere(&b).unwrap());
        // octahedron boundary
        let oct = cx(&[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]]);
        assert!(!is_stacked_sphere(&oct).unwrap());
        assert!(is_stacked_sphere(&cx(&[&[0, 1, 2, 3]])).is_err());
        // every polygon is a stacked 1-sphere
        let hexagon = cx(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        assert!(is_stacked_sphere(&hexagon).unwrap());
        // two disjoint tetrahedron boundaries
        let two = Complex::new(
            simplex_boundary(4)
                .facets()
                .iter()
                .cloned()
                .chain(simplex_boundary(4).relabel(|v| v + 4).unwrap().facets().iter().cloned()),
        )
        .unwrap();
        assert!(!is_stacked_sphere(&two).unwrap());
    }

    #[test]
    fn walkup_classes() {
        assert!(in_walkup_class(&simplex_boundary(6), WalkupClass::K));
        assert!(in_walkup_class(&simplex_boundary(6), WalkupClass::Kstar));
        assert!(!in_walkup_class(&simplex_boundary(6), WalkupClass::Kbar));
        assert!(in_walkup_class(&cx(&[&[0, 1, 2, 3]]), WalkupClass::Kbar));
    }

    #[test]
    fn cones() {
        let c = cone(&simplex_boundary(5)).unwrap();
        assert_eq!(c.num_facets(), 5);
        assert_eq!(c.num_vertices(), 6);
        assert_eq!(c.dim(), 4);
        let single = cone(&cx(&[&[0, 1, 2]])).unwrap();
        assert_eq!(single, cx(&[&[0, 1, 2, 3]]));
        let stacked2 = cx(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        assert!(is_stacked_ball(&stacked2));
        assert!(is_stacked_ball(&cone(&stacked2).unwrap()));
    }

    #[test]
    fn bounds_on_simplex_boundary() {
        let r = check_lower_bounds(&simplex_boundary(6), 0).unwrap();
        assert!(r.rows.iter().all(|row| row.equality));
        assert_eq!(r.row(1).unwrap().bound, 15);
        assert_eq!((r.pair_lhs, r.pair_rhs), (0, 0));
        assert!(r.pair_equality);
        assert_eq!(r.manifoldness, Manifoldness::Assumed);
        let s = check_lower_bounds_strict(&simplex_boundary(6), 0).unwrap();
        assert_eq!(s.manifoldness, Manifoldness::VerifiedStackedLinks);
        assert!(check_lower_bounds(&cx(&[&[0, 1, 2]]), 0).is_err());
    }
}
