//! Deterministic generators for standard and random complexes.
//!
//! Random generators take an explicit seed; there is no shared RNG state.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Face, Vertex};
use crate::error::{domain, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The standard `d`-ball: one facet on `0..=d`.
pub fn standard_ball(d: usize) -> Complex {
    Complex::new([Face::from_sorted((0..=d as Vertex).collect())]).expect("nonempty facet")
}

/// The standard `d`-sphere: boundary of the `(d+1)`-simplex on `0..d+2`.
pub fn standard_sphere(d: usize) -> Complex {
    let top = Face::from_sorted((0..d as Vertex + 2).collect());
    Complex::new(top.ridges().map(|(_, r)| r)).expect("nonempty facets")
}

/// Boundary of the `n`-dimensional cross-polytope; vertex `2i` and `2i+1` are
/// the antipodal pair on axis `i`.
pub fn cross_polytope_boundary(n: usize) -> Result<Complex> {
    if n == 0 || n > 20 {
        return domain(format!("cross-polytope dimension {n} out of range 1..=20"));
    }
    let facets = (0u32..1 << n).map(|signs| {
        Face::from_sorted((0..n as Vertex).map(|i| 2 * i + ((signs >> i) & 1)).collect())
    });
    Complex::new(facets)
}

/// A random stacked `d`-ball with `m` facets, built by gluing each new facet
/// (with one fresh vertex) onto a uniformly chosen free codimension-one face.
pub fn random_stacked_ball<R: Rng>(d: usize, m: usize, rng: &mut R) -> Result<Complex> {
    if d == 0 || m == 0 {
        return domain("random stacked ball needs d >= 1 and at least one facet");
    }
    let first = Face::from_sorted((0..=d as Vertex).collect());
    let mut facets = vec![first.clone()];
    let mut free: Vec<Face> = first.ridges().map(|(_, r)| r).collect();
    let mut next = d as Vertex + 1;
    while facets.len() < m {
        let idx = rng.gen_range(0..free.len());
        let ridge = free.swap_remove(idx);
        let facet = ridge.with_vertex(next)?;
        next += 1;
        for (_, r) in facet.ridges() {
            if r != ridge {
                free.push(r);
            }
        }
        facets.push(facet);
    }
    Complex::new(facets)
}

/// A random stacked `d`-sphere: the boundary of a random stacked
/// `(d+1)`-ball with `m` facets.
pub fn random_stacked_sphere<R: Rng>(d: usize, m: usize, rng: &mut R) -> Result<Complex> {
    random_stacked_ball(d + 1, m, rng)?.boundary()
}

/// A random pure `d`-complex with `m` facets whose dual graph is a tree.
///
/// Each new facet is glued onto a codimension-one face of a random existing
/// facet, adding a vertex drawn from a pool that also contains old vertices,
/// so the result is generally not a stacked ball. Steps that would create
/// extra adjacencies or duplicate facets are redrawn.
pub fn random_tree_dual_complex<R: Rng>(d: usize, m: usize, rng: &mut R) -> Result<Complex> {
    if d == 0 || m == 0 {
        return domain("tree-dual complex needs d >= 1 and at least one facet");
    }
    let pool = (d + 1 + m) as Vertex;
    let mut all: Vec<Vertex> = (0..pool).collect();
    all.shuffle(rng);
    let first = Face::new(all[..=d].iter().copied())?;
    let mut facets = vec![first.clone()];
    let mut ridges: HashMap<Face, usize> = first.ridges().map(|(_, r)| (r, 1)).collect();
    let mut attempts = 0usize;
    while facets.len() < m {
        attempts += 1;
        if attempts > 10_000 * m {
            return domain("could not extend tree-dual complex");
        }
        let parent = &facets[rng.gen_range(0..facets.len())];
        let (_, shared) = parent.ridges().nth(rng.gen_range(0..=d)).expect("ridge");
        if ridges[&shared] != 1 {
            continue;
        }
        let v = rng.gen_range(0..pool);
        if shared.contains(v) {
            continue;
        }
        let facet = shared.with_vertex(v)?;
        if facets.contains(&facet) {
            continue;
        }
        if facet.ridges().any(|(_, r)| r != shared && ridges.contains_key(&r)) {
            continue;
        }
        for (_, r) in facet.ridges() {
            *ridges.entry(r).or_insert(0) += 1;
        }
        facets.push(facet);
    }
    Ok(Complex::new(facets)?.to_dense().0)
}

/// Applies a vertex permutation given as an image array over `0..f_0`.
pub fn relabel_by(k: &Complex, images: &[Vertex]) -> Result<Complex> {
    if images.len() != k.num_vertices() || !k.is_dense() {
        return domain("relabeling needs a dense complex and a matching image array");
    }
    k.relabel(|v| images[v as usize])
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n as Vertex).collect();
    p.shuffle(rng);
    p
}
