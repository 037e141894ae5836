//! Building neighborly members of `K̄(d)` from a graph with a family of
//! induced subtrees, the inverse decomposition, and orbit expansion under a
//! cyclic group.
//!
//! Given a graph `G` and trees `T_0, ..., T_{n-1}`, every vertex `u` of `G`
//! defines the set `û = {i : u ∈ T_i}`. When the family is pairwise
//! intersecting, every tree has `n - d` vertices, every `û` has `d + 1`
//! elements, and `|û ∩ v̂| = d` exactly for the edges `uv`, the sets `û` are
//! the facets of a neighborly member of `K̄(d)` whose dual graph is `G`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{dual_graph, in_walkup_class, is_pseudomanifold, WalkupClass};
use crate::complex::{Complex, Face, Vertex};
use crate::error::{domain, Error, Result};

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostGraph {
    adj: Vec<Vec<usize>>,
}

impl HostGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return domain(format!("edge ({u}, {v}) outside 0..{n}"));
            }
            if u == v {
                return domain(format!("loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Ok(HostGraph { adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Whether `verts` induces a tree: connected with `|verts| - 1` edges.
    pub fn induces_tree(&self, verts: &[usize]) -> bool {
        if verts.is_empty() {
            return false;
        }
        let inside = |x: usize| verts.binary_search(&x).is_ok();
        let edges: usize = verts.iter().map(|&u| self.adj[u].iter().filter(|&&v| v > u && inside(v)).count()).sum();
        if edges + 1 != verts.len() {
            return false;
        }
        let mut seen = vec![false; verts.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([verts[0]]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if let Ok(i) = verts.binary_search(&v) {
                    if !seen[i] {
                        seen[i] = true;
                        count += 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        count == verts.len()
    }
}

/// A host graph with a family of vertex subsets (intended subtrees).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFamily {
    pub host: HostGraph,
    /// Sorted vertex lists, one per tree; tree `i` becomes vertex `i`.
    pub trees: Vec<Vec<usize>>,
    pub d: usize,
}

impl TreeFamily {
    pub fn new(host: HostGraph, trees: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        let mut sorted = Vec::with_capacity(trees.len());
        for (i, mut t) in trees.into_iter().enumerate() {
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return domain(format!("tree {i} lists a vertex twice"));
            }
            if let Some(&bad) = t.iter().find(|&&v| v >= host.num_vertices()) {
                return domain(format!("tree {i} uses vertex {bad} outside the host graph"));
            }
            sorted.push(t);
        }
        Ok(TreeFamily { host, trees: sorted, d })
    }

    pub fn num_trees(&self) -> usize {
        self.trees.len()
    }

    fn defined_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.host.num_vertices()];
        for (i, t) in self.trees.iter().enumerate() {
            for &u in t {
                sets[u].push(i);
            }
        }
        sets
    }
}

/// Indices of the trees containing `u`.
pub fn defines_subset(family: &TreeFamily, u: usize) -> Result<Vec<usize>> {
    if u >= family.host.num_vertices() {
        return domain(format!("vertex {u} is not in the host graph"));
    }
    Ok((0..family.trees.len()).filter(|&i| family.trees[i].binary_search(&u).is_ok()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Each tree induces a subtree with `n - d` vertices.
    InducedSubtrees,
    /// Any two trees intersect.
    PairwiseIntersecting,
    /// Each host vertex lies in exactly `d + 1` trees.
    VertexMultiplicity,
    /// `|û ∩ v̂| = d` iff `uv` is an edge.
    EdgeCharacterization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Tree { tree: usize, size: usize, induces_tree: bool },
    TreePair { first: usize, second: usize },
    Vertex { vertex: usize, trees: usize },
    VertexPair { u: usize, v: usize, common: usize, edge: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

/// Outcome of every construction hypothesis, with all failing witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub conditions: Vec<ConditionReport>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, c: Condition) -> &ConditionReport {
        self.conditions.iter().find(|r| r.condition == c).expect("all conditions are reported")
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{:?} ({} witnesses)", c.condition, c.witnesses.len()))
            .collect();
        if failed.is_empty() {
            "all conditions pass".into()
        } else {
            failed.join(", ")
        }
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{:?}: {}", c.condition, if c.passed { "pass" } else { "FAIL" })?;
            for w in c.witnesses.iter().take(20) {
                writeln!(f, "  {w:?}")?;
            }
            if c.witnesses.len() > 20 {
                writeln!(f, "  ... {} more", c.witnesses.len() - 20)?;
            }
        }
        Ok(())
    }
}

fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Checks every hypothesis of the construction, collecting all witnesses.
pub fn verify_hypotheses(family: &TreeFamily) -> HypothesisReport {
    let n = family.trees.len();
    let d = family.d;
    let expected_size = n.checked_sub(d);

    let mut subtree = Vec::new();
    for (i, t) in family.trees.iter().enumerate() {
        let induces_tree = family.host.induces_tree(t);
        if !induces_tree || Some(t.len()) != expected_size {
            subtree.push(Witness::Tree { tree: i, size: t.len(), induces_tree });
        }
    }

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if intersect_count(&family.trees[i], &family.trees[j]) == 0 {
                pairs.push(Witness::TreePair { first: i, second: j });
            }
        }
    }

    let sets = family.defined_sets();
    let multiplicity: Vec<Witness> = sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.len() != d + 1)
        .map(|(u, s)| Witness::Vertex { vertex: u, trees: s.len() })
        .collect();

    let mut edges = Vec::new();
    let nv = family.host.num_vertices();
    for u in 0..nv {
        for v in u + 1..nv {
            let common = intersect_count(&sets[u], &sets[v]);
            let edge = family.host.has_edge(u, v);
            if (common == d) != edge {
                edges.push(Witness::VertexPair { u, v, common, edge });
            }
        }
    }

    let report = |condition, witnesses: Vec<Witness>| ConditionReport { condition, passed: witnesses.is_empty(), witnesses };
    HypothesisReport {
        conditions: vec![
            report(Condition::InducedSubtrees, subtree),
            report(Condition::PairwiseIntersecting, pairs),
            report(Condition::VertexMultiplicity, multiplicity),
            report(Condition::EdgeCharacterization, edges),
        ],
    }
}

/// The complex whose facets are the sets `û`; refuses families that fail
/// any hypothesis. The result is checked to be a neighborly pseudomanifold in
/// `K̄(d)` whose dual graph is the host graph under `u ↦ û`. For `d >= 2` the
/// hypotheses guarantee this; for `d = 1` they do not (the triangle with its
/// three edges as trees gives a circle), and such families are refused.
pub fn complex_from_tree_family(family: &TreeFamily) -> Result<Complex> {
    let report = verify_hypotheses(family);
    if !report.passed() {
        return Err(Error::Hypotheses(Box::new(report)));
    }
    let facets: Vec<Face> = family
        .defined_sets()
        .into_iter()
        .map(|s| Face::from_sorted(s.into_iter().map(|i| i as Vertex).collect()))
        .collect();
    let m = Complex::new(facets.clone())?;
    if m.num_facets() != facets.len() {
        return domain("two host vertices define the same facet");
    }
    if !is_pseudomanifold(&m) {
        return domain("constructed complex is not a pseudomanifold");
    }
    if !m.is_l_neighborly(2) {
        return domain("constructed complex is not neighborly");
    }
    if !in_walkup_class(&m, WalkupClass::Kbar) {
        return domain("constructed complex has a vertex link that is not a stacked ball");
    }
    let index: Vec<usize> = facets.iter().map(|f| m.facet_index(f).expect("facet")).collect();
    let mut mapped: Vec<(usize, usize)> = family
        .host
        .edges()
        .into_iter()
        .map(|(u, v)| (index[u].min(index[v]), index[u].max(index[v])))
        .collect();
    mapped.sort_unstable();
    if mapped != dual_graph(&m).edges {
        return domain("dual graph is not isomorphic to the host graph via u ↦ û");
    }
    Ok(m)
}

/// The tree family of a neighborly member of `K̄(d)`: its dual graph, with
/// tree `i` the facets containing vertex `i`.
pub fn tree_family_from_complex(m: &Complex) -> Result<TreeFamily> {
    if m.is_empty() || !m.is_dense() {
        return domain("decomposition needs a nonempty complex with dense vertex ids");
    }
    if !m.is_l_neighborly(2) {
        return domain("decomposition needs a neighborly complex");
    }
    if !in_walkup_class(m, WalkupClass::Kbar) {
        return domain("decomposition needs a member of K̄(d)");
    }
    let g = dual_graph(m);
    let host = HostGraph::new(g.num_nodes, g.edges)?;
    let trees = m
        .vertices()
        .iter()
        .map(|&v| (0..m.num_facets()).filter(|&i| m.facets()[i].contains(v)).collect())
        .collect();
    TreeFamily::new(host, trees, m.dim())
}

/// A vertex `class_index` in label class `class`, e.g. `b_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub class: usize,
    pub index: usize,
}

/// Facets modulo the cyclic group `Z_m` acting by `i · x_j = x_{i+j}` on every
/// label class. Class `k` occupies vertex ids `k m .. (k+1) m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPresentation {
    pub order: usize,
    pub classes: Vec<String>,
    pub basic: Vec<Vec<Label>>,
    /// Optional names of the basic facets (same length as `basic` or empty).
    pub names: Vec<String>,
}

impl OrbitPresentation {
    pub fn new(order: usize, classes: Vec<String>, basic: Vec<Vec<Label>>) -> Result<Self> {
        if order == 0 {
            return domain("group order must be positive");
        }
        for (k, f) in basic.iter().enumerate() {
            if f.is_empty() {
                return domain(format!("basic facet {k} is empty"));
            }
            for l in f {
                if l.class >= classes.len() || l.index >= order {
                    return domain(format!("basic facet {k} has label ({}, {}) out of range", l.class, l.index));
                }
            }
        }
        Ok(OrbitPresentation { order, classes, basic, names: Vec::new() })
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn vertex_id(&self, label: Label) -> Vertex {
        (label.class * self.order + label.index) as Vertex
    }

    /// The image of basic facet `k` under the group element `shift`.
    pub fn facet(&self, k: usize, shift: usize) -> Result<Face> {
        let m = self.order;
        Face::new(self.basic[k].iter().map(|l| self.vertex_id(Label { class: l.class, index: (l.index + shift) % m })))
    }

    pub fn num_vertices(&self) -> usize {
        self.classes.len() * self.order
    }

    /// The generator `x_j ↦ x_{j+1}` as an image array over all vertex ids.
    pub fn generator(&self) -> Vec<Vertex> {
        let m = self.order;
        (0..self.num_vertices()).map(|v| (v - v % m + (v % m + 1) % m) as Vertex).collect()
    }
}

/// All group images of the basic facets, canonicalised and deduplicated.
pub fn expand_orbit(p: &OrbitPresentation) -> Result<Complex> {
    let mut facets = Vec::with_capacity(p.basic.len() * p.order);
    for k in 0..p.basic.len() {
        for i in 0..p.order {
            facets.push(p.facet(k, i)?);
        }
    }
    Complex::new(facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_host(n: usize) -> HostGraph {
        HostGraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn subtree_detection() {
        let g = path_host(3);
        assert!(g.induces_tree(&[0, 1]));
        assert!(!g.induces_tree(&[0, 2]));
        assert!(g.induces_tree(&[0, 1, 2]));
        let tri = HostGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!tri.induces_tree(&[0, 1, 2]));
    }

    #[test]
    fn non_tree_witness() {
        let f = TreeFamily::new(path_host(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]], 1).unwrap();
        let r = verify_hypotheses(&f);
        let c = r.condition(Condition::InducedSubtrees);
        assert!(!c.passed);
        assert_eq!(c.witnesses, vec![Witness::Tree { tree: 2, size: 2, induces_tree: false }]);
        assert!(matches!(complex_from_tree_family(&f), Err(Error::Hypotheses(_))));
    }

    #[test]
    fn vertex_in_no_tree() {
        let f = TreeFamily::new(path_host(3), vec![vec![0, 1]], 1).unwrap();
        assert!(defines_subset(&f, 2).unwrap().is_empty());
        assert_eq!(defines_subset(&f, 1).unwrap(), vec![0]);
        assert!(defines_subset(&f, 3).is_err());
    }

    #[test]
    fn smallest_family_builds_an_edge_path() {
        // host = single vertex, d = 1, two trees {0}: û = {0, 1}, a single edge
        let host = HostGraph::new(1, []).unwrap();
        let f = TreeFamily::new(host, vec![vec![0], vec![0]], 1).unwrap();
        assert!(verify_hypotheses(&f).passed());
        let m = complex_from_tree_family(&f).unwrap();
        assert_eq!(m, Complex::from_lists([vec![0, 1]]).unwrap());
    }

    #[test]
    fn orbit_expansion_degenerate() {
        let p = OrbitPresentation::new(1, vec!["a".into()], vec![vec![Label { class: 0, index: 0 }]]).unwrap();
        assert_eq!(expand_orbit(&p).unwrap().num_facets(), 1);
        assert!(OrbitPresentation::new(3, vec!["a".into()], vec![vec![Label { class: 1, index: 0 }]]).is_err());
        assert!(OrbitPresentation::new(3, vec!["a".into()], vec![vec![Label { class: 0, index: 3 }]]).is_err());
    }

    #[test]
    fn orbit_ids() {
        let p = OrbitPresentation::new(
            7,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![Label { class: 0, index: 6 }, Label { class: 2, index: 0 }]],
        )
        .unwrap();
        assert_eq!(p.facet(0, 2).unwrap().vertices(), &[1, 16]);
        assert_eq!(&p.generator()[5..9], &[6, 0, 8, 9]);
    }
}
