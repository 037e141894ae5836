//! Vertex permutations, automorphism checks, and the full automorphism group
//! by backtracking.
//!
//! The group is computed along a point-stabiliser chain: for each base vertex
//! `b_i` (deepest level first) we find, for every candidate image not yet in
//! the orbit of `b_i` under the generators collected so far, one automorphism
//! fixing `b_0, ..., b_{i-1}` and sending `b_i` there. The group order is the
//! product of the orbit lengths.
//!
//! Candidate images are pruned by vertex colours (facet degree, link face
//! vector, multiset of edge-link face vectors, then refined against the pair
//! classes) and, during the search, by forward checking of pair classes:
//! a pair `(u, v)` can only map to a pair with the same edge-link face vector.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{in_walkup_class, WalkupClass};
use crate::complex::{Complex, Face, Vertex};
use crate::error::{domain, Error, Result};

/// Largest vertex count accepted by [`automorphism_group`].
pub const AUT_MAX_VERTICES: usize = 64;

/// A bijection of `0..n` given by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<Vertex>);

impl Permutation {
    pub fn new(images: Vec<Vertex>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return domain(format!("{images:?} is not a permutation")),
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as Vertex).collect())
    }

    /// `v ↦ v + 1 (mod m)` inside each block `[k m, (k+1) m)` of `0..n`.
    pub fn block_shift(n: usize, m: usize) -> Result<Self> {
        if m == 0 || n % m != 0 {
            return domain(format!("block size {m} does not divide {n}"));
        }
        let m = m as Vertex;
        Ok(Permutation((0..n as Vertex).map(|v| v - v % m + (v % m + 1) % m).collect()))
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[v as usize]
    }

    pub fn apply_face(&self, f: &Face) -> Face {
        f.map(|v| self.apply(v)).expect("permutations are injective")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as Vertex;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1u128;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u128;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Whether `p` maps the facet set of `k` onto itself.
pub fn is_automorphism(k: &Complex, p: &Permutation) -> Result<bool> {
    if !k.is_dense() {
        return domain("automorphism checks need dense vertex ids");
    }
    if p.len() != k.num_vertices() {
        return domain(format!("permutation of {} points for a complex on {} vertices", p.len(), k.num_vertices()));
    }
    Ok(k.facets().iter().all(|s| k.contains_facet(&p.apply_face(s))))
}

/// Order and generators of a permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescription {
    pub order: u128,
    pub generators: Vec<Permutation>,
    /// `Z_n` when some generator alone has the full order.
    pub structure: Option<String>,
}

impl GroupDescription {
    fn new(order: u128, generators: Vec<Permutation>) -> Self {
        let structure = if order == 1 {
            Some("trivial".to_string())
        } else {
            generators.iter().any(|g| g.order() == order).then(|| format!("Z_{order}"))
        };
        GroupDescription { order, generators, structure }
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure.as_deref().is_some_and(|s| s.starts_with("Z_") || s == "trivial")
    }

    /// All elements by closure under the generators, or `None` once more than
    /// `limit` elements have been produced.
    pub fn elements(&self, degree: usize, limit: usize) -> Option<Vec<Permutation>> {
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Some(out)
    }
}

fn submask_faces(mask: u64, out: &mut [HashSet<u64>]) {
    // every nonempty subset of `mask`
    let mut sub = mask;
    while sub != 0 {
        out[sub.count_ones() as usize - 1].insert(sub);
        sub = (sub - 1) & mask;
    }
}

fn f_vector_of(masks: impl Iterator<Item = u64>, dim: usize) -> Vec<usize> {
    let mut levels = vec![HashSet::new(); dim + 1];
    for m in masks {
        submask_faces(m, &mut levels);
    }
    levels.iter().map(HashSet::len).collect()
}

fn canonical_ids<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut uniq: Vec<T> = keys.to_vec();
    uniq.sort();
    uniq.dedup();
    keys.iter().map(|k| uniq.binary_search(k).expect("key") as u32).collect()
}

struct Search {
    n: usize,
    facet_set: HashSet<u64>,
    facets_of: Vec<Vec<u64>>,
    pair: Vec<Vec<u32>>,
    /// `compat[a][c]`: vertices `b` with `pair[a][b] == c`
    compat: Vec<Vec<u64>>,
    color: Vec<u32>,
}

#[derive(Clone)]
struct State {
    image: Vec<Option<u32>>,
    domain: Vec<u64>,
    used: u64,
}

impl Search {
    fn new(k: &Complex) -> Self {
        let n = k.num_vertices();
        let d = k.dim();
        let masks: Vec<u64> = k.facets().iter().map(|s| s.mask().expect("ids below 64")).collect();
        let mut facets_of = vec![Vec::new(); n];
        for &m in &masks {
            let mut bits = m;
            while bits != 0 {
                facets_of[bits.trailing_zeros() as usize].push(m);
                bits &= bits - 1;
            }
        }
        // pair classes from edge-link face vectors; 0-length vector marks non-edges
        let mut edge_fv: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
        for u in 0..n {
            for v in u + 1..n {
                let both = (1u64 << u) | (1u64 << v);
                let fv = if d >= 1 {
                    let mut faces: Vec<u64> = facets_of[u].iter().filter(|&&m| m & both == both).map(|&m| m & !both).collect();
                    if faces.is_empty() {
                        vec![]
                    } else {
                        faces.sort_unstable();
                        let mut fv = f_vector_of(faces.into_iter(), d.saturating_sub(2));
                        fv.insert(0, 1); // distinguishes edges with empty links
                        fv
                    }
                } else {
                    vec![]
                };
                edge_fv[u][v] = fv.clone();
                edge_fv[v][u] = fv;
            }
            edge_fv[u][u] = vec![usize::MAX];
        }
        let flat: Vec<Vec<usize>> = edge_fv.iter().flatten().cloned().collect();
        let ids = canonical_ids(&flat);
        let pair: Vec<Vec<u32>> = ids.chunks(n).map(<[u32]>::to_vec).collect();
        let num_classes = ids.iter().max().map_or(0, |&m| m as usize + 1);
        let compat: Vec<Vec<u64>> = (0..n)
            .map(|a| {
                let mut row = vec![0u64; num_classes];
                for b in 0..n {
                    row[pair[a][b] as usize] |= 1 << b;
                }
                row
            })
            .collect();

        // initial vertex invariants
        let keys: Vec<(usize, Vec<usize>, Vec<u32>)> = (0..n)
            .map(|v| {
                let link = facets_of[v].iter().map(|&m| m & !(1u64 << v));
                let fv = f_vector_of(link, d.saturating_sub(1));
                let mut edges: Vec<u32> = (0..n).filter(|&u| u != v).map(|u| pair[v][u]).collect();
                edges.sort_unstable();
                (facets_of[v].len(), fv, edges)
            })
            .collect();
        let mut color = canonical_ids(&keys);
        loop {
            let before = color.iter().collect::<HashSet<_>>().len();
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u32, u32)> = (0..n).filter(|&u| u != v).map(|u| (pair[v][u], color[u])).collect();
                    s.sort_unstable();
                    (color[v], s)
                })
                .collect();
            color = canonical_ids(&sigs);
            if color.iter().collect::<HashSet<_>>().len() == before {
                break;
            }
        }
        Search { n, facet_set: masks.into_iter().collect(), facets_of, pair, compat, color }
    }

    fn initial_state(&self) -> State {
        let domain = (0..self.n)
            .map(|v| (0..self.n).filter(|&b| self.color[b] == self.color[v]).fold(0u64, |m, b| m | (1 << b)))
            .collect();
        State { image: vec![None; self.n], domain, used: 0 }
    }

    fn assign(&self, st: &mut State, u: usize, a: usize) -> bool {
        if st.domain[u] & (1 << a) == 0 || st.used & (1 << a) != 0 {
            return false;
        }
        st.image[u] = Some(a as u32);
        st.used |= 1 << a;
        st.domain[u] = 1 << a;
        for v in 0..self.n {
            if st.image[v].is_none() {
                st.domain[v] &= self.compat[a][self.pair[u][v] as usize] & !st.used;
                if st.domain[v] == 0 {
                    return false;
                }
            }
        }
        for &m in &self.facets_of[u] {
            let mut img = 0u64;
            let mut bits = m;
            let mut complete = true;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                match st.image[w] {
                    Some(x) => img |= 1 << x,
                    None => {
                        complete = false;
                        break;
                    }
                }
            }
            if complete && !self.facet_set.contains(&img) {
                return false;
            }
        }
        true
    }

    fn complete(&self, st: State) -> Option<Vec<u32>> {
        let next = (0..self.n)
            .filter(|&v| st.image[v].is_none())
            .min_by_key(|&v| (st.domain[v].count_ones(), v));
        let Some(v) = next else {
            return Some(st.image.iter().map(|x| x.expect("assigned")).collect());
        };
        let mut cands = st.domain[v];
        while cands != 0 {
            let b = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let mut child = st.clone();
            if self.assign(&mut child, v, b) {
                if let Some(p) = self.complete(child) {
                    return Some(p);
                }
            }
        }
        None
    }
}

fn orbit(point: usize, gens: &[Permutation]) -> HashSet<usize> {
    let mut seen = HashSet::from([point]);
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x as Vertex) as usize;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The full automorphism group of a dense complex on at most 64 vertices.
pub fn automorphism_group(k: &Complex) -> Result<GroupDescription> {
    let n = k.num_vertices();
    if n > AUT_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "automorphism search is limited to {AUT_MAX_VERTICES} vertices (got {n})"
        )));
    }
    if k.is_empty() || !k.is_dense() {
        return domain("automorphism search needs a nonempty complex with dense vertex ids");
    }
    let search = Search::new(k);
    let mut class_size: HashMap<u32, usize> = HashMap::new();
    for &c in &search.color {
        *class_size.entry(c).or_default() += 1;
    }
    let mut base: Vec<usize> = (0..n).collect();
    base.sort_by_key(|&v| (class_size[&search.color[v]], search.color[v], v));

    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..n).rev() {
        let mut prefix = search.initial_state();
        let fixed = base[..level].iter().all(|&b| search.assign(&mut prefix, b, b));
        assert!(fixed, "the identity extends every prefix of fixed base points");
        let point = base[level];
        let mut reached = orbit(point, &gens);
        let mut cands = prefix.domain[point];
        while cands != 0 {
            let c = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if reached.contains(&c) {
                continue;
            }
            let mut st = prefix.clone();
            if !search.assign(&mut st, point, c) {
                continue;
            }
            if let Some(images) = search.complete(st) {
                let g = Permutation(images);
                debug_assert!(is_automorphism(k, &g).unwrap_or(false));
                gens.push(g);
                reached = orbit(point, &gens);
            }
        }
        order = order
            .checked_mul(reached.len() as u128)
            .ok_or_else(|| Error::Capacity("group order exceeds 128 bits".into()))?;
    }
    gens.retain(|g| !g.is_identity());
    Ok(GroupDescription::new(order, gens))
}

/// For `M` in `K̄(d+1)`, `d >= 4`: whether `Aut(M) = Aut(∂M)` as permutation
/// groups on the common vertex set.
pub fn verify_aut_equality(m: &Complex) -> Result<bool> {
    if m.is_empty() || m.dim() < 5 {
        return domain("automorphism equality needs dimension at least 5");
    }
    if !in_walkup_class(m, WalkupClass::Kbar) {
        return domain("automorphism equality needs a member of K̄(d)");
    }
    let boundary = m.boundary()?;
    if boundary.vertices() != m.vertices() {
        return domain("boundary does not span the vertex set");
    }
    let inner = automorphism_group(m)?;
    let outer = automorphism_group(&boundary)?;
    if inner.order != outer.order {
        return Ok(false);
    }
    for g in &inner.generators {
        if !is_automorphism(&boundary, g)? {
            return Ok(false);
        }
    }
    for g in &outer.generators {
        if !is_automorphism(m, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
