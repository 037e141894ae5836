//! Named complexes: the four neighborly 5-dimensional members of `K̄(5)` given
//! by cyclic orbit presentations, their boundary 4-manifolds, the tree family
//! producing `A5_41`, standard spheres and balls, and a non-ball whose dual
//! graph is a tree.
//!
//! Vertex ids are dense: label `a_i` is `i`, `b_i` is `m + i`, `c_i` is
//! `2m + i` for group order `m`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::dual_graph;
use crate::complex::Complex;
use crate::construct::{expand_orbit, HostGraph, Label, OrbitPresentation, TreeFamily};
use crate::error::{Error, Result};
use crate::generate::{standard_ball, standard_sphere};

/// Names of the fixed catalog entries. `standard_sphere(d)` and
/// `standard_ball(d)` are accepted in addition.
pub const NAMES: [&str; 11] = [
    "A5_21",
    "B5_21",
    "B5_26",
    "A5_41",
    "M4_21",
    "N4_21",
    "N4_26",
    "M4_41",
    "S4_6",
    "nonball_example",
    "A5_41_tree_family",
];

/// The 5-complexes and their boundaries, paired.
pub const MAIN_PAIRS: [(&str, &str); 4] = [("A5_21", "M4_21"), ("B5_21", "N4_21"), ("B5_26", "N4_26"), ("A5_41", "M4_41")];

struct OrbitData {
    order: usize,
    classes: &'static [&'static str],
    names: &'static [&'static str],
    facets: &'static [&'static str],
}

const A5_21: OrbitData = OrbitData {
    order: 7,
    classes: &["a", "b", "c"],
    names: &["sigma", "kappa", "tau", "alpha", "beta", "mu", "nu", "gamma"],
    facets: &[
        "a0 a1 a2 b0 b1 c0",
        "a1 a2 b0 b1 b2 c0",
        "a1 a2 a3 b0 b1 b2",
        "a0 a1 b0 b1 c0 c3",
        "a0 a1 b0 b3 c0 c3",
        "a0 b0 b3 c0 c3 c4",
        "a0 a3 b3 c0 c3 c4",
        "a3 b3 c0 c3 c4 c6",
    ],
};

const B5_21: OrbitData = OrbitData {
    order: 7,
    classes: &["a", "b", "c"],
    names: &["sigma", "kappa", "tau", "alpha", "beta", "mu", "nu", "gamma"],
    facets: &[
        "a0 a1 a2 b0 b1 c0",
        "a0 a1 a2 b1 b2 c0",
        "a0 a1 a2 a3 b1 b2",
        "a0 a1 b0 b1 c0 c3",
        "a0 b0 b1 b3 c0 c3",
        "a0 b0 b3 c0 c3 c4",
        "a3 b0 b3 c0 c3 c4",
        "a3 b3 c0 c3 c4 c6",
    ],
};

const B5_26: OrbitData = OrbitData {
    order: 13,
    classes: &["a", "b"],
    names: &["sigma", "tau", "alpha", "beta", "gamma", "mu", "delta"],
    facets: &[
        "a0 a10 a11 a12 b9 b10",
        "a0 a1 a10 a11 a12 b10",
        "a0 a11 a12 b5 b9 b10",
        "a0 a11 a12 b2 b5 b10",
        "a0 a7 a12 b2 b5 b10",
        "a7 a12 b0 b2 b5 b10",
        "a7 b0 b2 b5 b8 b10",
    ],
};

const A5_41: OrbitData = OrbitData {
    order: 41,
    classes: &["a"],
    names: &["sigma", "alpha", "beta", "gamma", "delta", "mu"],
    facets: &[
        "a36 a37 a38 a39 a40 a0",
        "a36 a37 a38 a39 a0 a6",
        "a37 a38 a39 a0 a6 a13",
        "a38 a39 a0 a6 a13 a20",
        "a39 a0 a6 a13 a20 a27",
        "a6 a13 a20 a27 a34 a0",
    ],
};

fn orbit_data(name: &str) -> Option<&'static OrbitData> {
    match name {
        "A5_21" => Some(&A5_21),
        "B5_21" => Some(&B5_21),
        "B5_26" => Some(&B5_26),
        "A5_41" => Some(&A5_41),
        _ => None,
    }
}

/// Parses a labeled token such as `b12` against the class names.
pub fn parse_label(token: &str, classes: &[String]) -> Option<Label> {
    let split = token.find(|c: char| c.is_ascii_digit())?;
    let (class, index) = token.split_at(split);
    let class = classes.iter().position(|c| c == class)?;
    Some(Label { class, index: index.parse().ok()? })
}

/// The orbit presentation of one of the four 5-complexes.
pub fn orbit_presentation(name: &str) -> Result<OrbitPresentation> {
    let data = orbit_data(name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let classes: Vec<String> = data.classes.iter().map(|s| s.to_string()).collect();
    let basic = data
        .facets
        .iter()
        .map(|f| f.split(' ').map(|t| parse_label(t, &classes).expect("static label")).collect())
        .collect();
    Ok(OrbitPresentation::new(data.order, classes, basic)?.with_names(data.names))
}

/// Kinds of host vertices in the `A5_41` tree family: the `u`-cycle, the
/// path interiors `x, y, z, w`, and the `v`-cycle.
pub const A541_HOST_KINDS: [char; 6] = ['u', 'x', 'y', 'z', 'w', 'v'];

/// Host vertex id of `kind_i` in the `A5_41` family; `u_i = i`, `x_i = 41 + i`,
/// and so on in the order of [`A541_HOST_KINDS`].
pub fn a541_host_vertex(kind: char, i: i64) -> usize {
    let k = A541_HOST_KINDS.iter().position(|&c| c == kind).expect("host vertex kind");
    k * 41 + i.rem_euclid(41) as usize
}

/// The host graph and the 41 induced subtrees whose construction gives `A5_41`.
pub fn a541_tree_family() -> TreeFamily {
    let h = a541_host_vertex;
    let mut edges = Vec::new();
    for i in 0..41 {
        edges.push((h('u', i), h('u', i + 1)));
        edges.push((h('v', i), h('v', i + 7)));
        for pair in A541_HOST_KINDS.windows(2) {
            edges.push((h(pair[0], i), h(pair[1], i)));
        }
    }
    let host = HostGraph::new(6 * 41, edges).expect("static host graph");
    let tree = |i: i64| {
        let mut t: Vec<usize> = Vec::with_capacity(36);
        t.extend((0..6).map(|k| h('u', i + k)));
        t.extend((0..6).map(|k| h('v', i + 7 * k)));
        let spans: [(i64, &str); 9] = [
            (0, "xyzw"),
            (2, "xyzw"),
            (3, "xyz"),
            (4, "xy"),
            (5, "x"),
            (14, "w"),
            (21, "wz"),
            (28, "wzy"),
            (35, "wzyx"),
        ];
        for (offset, kinds) in spans {
            t.extend(kinds.chars().map(|c| h(c, i + offset)));
        }
        t
    };
    TreeFamily::new(host, (0..41).map(tree).collect(), 5).expect("static tree family")
}

/// Result of parsing a catalog name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Complex(Complex),
    TreeFamily(TreeFamily),
}

fn parameter(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

/// Any catalog object by name.
pub fn entry(name: &str) -> Result<Entry> {
    if let Some(d) = parameter(name, "standard_sphere") {
        return Ok(Entry::Complex(standard_sphere(d)));
    }
    if let Some(d) = parameter(name, "standard_ball") {
        return Ok(Entry::Complex(standard_ball(d)));
    }
    let complex = match name {
        "A5_21" | "B5_21" | "B5_26" | "A5_41" => expand_orbit(&orbit_presentation(name)?)?,
        "M4_21" => get("A5_21")?.boundary()?,
        "N4_21" => get("B5_21")?.boundary()?,
        "N4_26" => get("B5_26")?.boundary()?,
        "M4_41" => get("A5_41")?.boundary()?,
        "S4_6" => standard_sphere(4),
        "nonball_example" => Complex::from_lists([[0, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 5], [3, 4, 5, 6], [4, 5, 6, 0]])?,
        "A5_41_tree_family" => return Ok(Entry::TreeFamily(a541_tree_family())),
        _ => return Err(Error::UnknownName(name.into())),
    };
    Ok(Entry::Complex(complex))
}

/// The complex named `name`.
pub fn get(name: &str) -> Result<Complex> {
    match entry(name)? {
        Entry::Complex(c) => Ok(c),
        Entry::TreeFamily(_) => Err(Error::Domain(format!("`{name}` is a tree family, not a complex"))),
    }
}

pub fn is_known(name: &str) -> bool {
    NAMES.contains(&name) || parameter(name, "standard_sphere").is_some() || parameter(name, "standard_ball").is_some()
}

/// Known properties of a catalog entry. Fields are `None` where nothing is
/// recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub name: String,
    pub dim: Option<usize>,
    pub num_facets: Option<usize>,
    pub f_vector: Option<Vec<usize>>,
    pub chi: Option<i64>,
    pub beta1: Option<u64>,
    pub aut_order: Option<u128>,
    pub aut_structure: Option<String>,
    pub orientable: Option<bool>,
    pub homeomorphism_type: Option<String>,
}

fn boundary_record(name: &str, f: [usize; 5], chi: i64, beta1: u64, m: u128, orientable: bool) -> Expected {
    let kind = if orientable { "×" } else { "⋊" };
    let twist = if orientable { "" } else { " twisted" };
    Expected {
        name: name.into(),
        dim: Some(4),
        num_facets: Some(f[4]),
        f_vector: Some(f.to_vec()),
        chi: Some(chi),
        beta1: Some(beta1),
        aut_order: Some(m),
        aut_structure: Some(format!("Z_{m}")),
        orientable: Some(orientable),
        homeomorphism_type: Some(format!("(S³{kind}S¹)^#{beta1}{twist}")),
    }
}

fn ball_record(name: &str, facets: usize, m: u128) -> Expected {
    Expected {
        name: name.into(),
        dim: Some(5),
        num_facets: Some(facets),
        aut_order: Some(m),
        aut_structure: Some(format!("Z_{m}")),
        ..Expected::default()
    }
}

/// The recorded properties of `name`.
pub fn expected(name: &str) -> Result<Expected> {
    let sphere = |name: &str, d: usize| {
        let f: Vec<usize> = (0..=d).map(|j| crate::complex::binomial(d as u64 + 2, j as u64 + 1) as usize).collect();
        Expected {
            name: name.into(),
            dim: Some(d),
            num_facets: Some(d + 2),
            f_vector: Some(f),
            chi: Some(if d % 2 == 0 { 2 } else { 0 }),
            beta1: Some(u64::from(d == 1)),
            aut_order: Some((1..=d as u128 + 2).product()),
            aut_structure: None,
            orientable: Some(true),
            homeomorphism_type: Some(crate::homology::bundle_sum_name(d, 0, true)),
        }
    };
    if let Some(d) = parameter(name, "standard_sphere") {
        return Ok(sphere(name, d));
    }
    if let Some(d) = parameter(name, "standard_ball") {
        let f: Vec<usize> = (0..=d).map(|j| crate::complex::binomial(d as u64 + 1, j as u64 + 1) as usize).collect();
        return Ok(Expected {
            name: name.into(),
            dim: Some(d),
            num_facets: Some(1),
            f_vector: Some(f),
            chi: Some(1),
            beta1: Some(0),
            aut_order: Some((1..=d as u128 + 1).product()),
            ..Expected::default()
        });
    }
    Ok(match name {
        "A5_21" => ball_record(name, 56, 7),
        "B5_21" => ball_record(name, 56, 7),
        "B5_26" => ball_record(name, 91, 13),
        "A5_41" => ball_record(name, 246, 41),
        "M4_21" => boundary_record(name, [21, 210, 490, 525, 210], -14, 8, 7, true),
        "N4_21" => boundary_record(name, [21, 210, 490, 525, 210], -14, 8, 7, false),
        "N4_26" => boundary_record(name, [26, 325, 780, 845, 338], -26, 14, 13, false),
        "M4_41" => boundary_record(name, [41, 820, 2050, 2255, 902], -82, 42, 41, true),
        "S4_6" => sphere(name, 4),
        "nonball_example" => Expected {
            name: name.into(),
            dim: Some(3),
            num_facets: Some(5),
            ..Expected::default()
        },
        "A5_41_tree_family" => Expected { name: name.into(), dim: Some(5), ..Expected::default() },
        _ => return Err(Error::UnknownName(name.into())),
    })
}

/// Adjacencies `p_i ~ q_{i + offset}` for all `i` in the group.
#[derive(Clone, Copy, Debug)]
struct Adjacency {
    from: &'static str,
    to: &'static str,
    offset: usize,
}

const fn adj(from: &'static str, to: &'static str, offset: usize) -> Adjacency {
    Adjacency { from, to, offset }
}

fn dual_adjacencies(name: &str) -> Option<Vec<Adjacency>> {
    Some(match name {
        "A5_21" | "B5_21" => vec![
            adj("sigma", "kappa", 0),
            adj("kappa", "tau", 0),
            adj("tau", "sigma", 1),
            adj("mu", "nu", 0),
            adj("nu", "gamma", 0),
            adj("gamma", "mu", 3),
            adj("sigma", "alpha", 0),
            adj("alpha", "beta", 0),
            adj("beta", "mu", 0),
        ],
        "B5_26" => vec![
            adj("sigma", "tau", 0),
            adj("tau", "sigma", 1),
            adj("mu", "delta", 0),
            adj("delta", "mu", 8),
            adj("sigma", "alpha", 0),
            adj("alpha", "beta", 0),
            adj("beta", "gamma", 0),
            adj("gamma", "mu", 0),
        ],
        "A5_41" => vec![
            adj("sigma", "sigma", 1),
            adj("mu", "mu", 7),
            adj("sigma", "alpha", 0),
            adj("alpha", "beta", 0),
            adj("beta", "gamma", 0),
            adj("gamma", "delta", 0),
            adj("delta", "mu", 0),
        ],
        _ => return None,
    })
}

/// Comparison of a dual graph against its stated decomposition into two
/// cycles and a family of paths. Edges are written as facet names `name_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualStructureReport {
    pub name: String,
    pub expected_edges: usize,
    pub actual_edges: usize,
    pub missing: Vec<(String, String)>,
    pub unexpected: Vec<(String, String)>,
    pub matches: bool,
}

/// Checks the dual graph of one of the four 5-complexes against its stated
/// cycle and path decomposition.
pub fn dual_structure(name: &str) -> Result<DualStructureReport> {
    let p = orbit_presentation(name)?;
    let adjacencies = dual_adjacencies(name).expect("every orbit entry has a dual structure");
    let k = expand_orbit(&p)?;
    let m = p.order;
    let mut label = vec![String::new(); k.num_facets()];
    let mut index = |basic: usize, shift: usize| -> Result<usize> {
        let f = p.facet(basic, shift)?;
        let i = k.facet_index(&f).expect("orbit facet");
        label[i] = format!("{}_{}", p.names[basic], shift);
        Ok(i)
    };
    let pos = |n: &str| p.names.iter().position(|x| x == n).expect("facet name");
    let mut expected = BTreeSet::new();
    for a in &adjacencies {
        for i in 0..m {
            let x = index(pos(a.from), i)?;
            let y = index(pos(a.to), (i + a.offset) % m)?;
            expected.insert((x.min(y), x.max(y)));
        }
    }
    for b in 0..p.basic.len() {
        for i in 0..m {
            index(b, i)?;
        }
    }
    let actual: BTreeSet<(usize, usize)> = dual_graph(&k).edges.into_iter().collect();
    let named = |&(x, y): &(usize, usize)| (label[x].clone(), label[y].clone());
    let missing: Vec<_> = expected.difference(&actual).map(named).collect();
    let unexpected: Vec<_> = actual.difference(&expected).map(named).collect();
    Ok(DualStructureReport {
        name: name.into(),
        expected_edges: expected.len(),
        actual_edges: actual.len(),
        matches: missing.is_empty() && unexpected.is_empty(),
        missing,
        unexpected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_facet_counts() {
        for (name, count) in [("A5_21", 56), ("B5_21", 56), ("B5_26", 91), ("A5_41", 246)] {
            let k = get(name).unwrap();
            assert_eq!(k.num_facets(), count, "{name}");
            assert_eq!(k.dim(), 5);
            assert!(k.is_dense());
        }
    }

    #[test]
    fn small_entries() {
        assert_eq!(get("S4_6").unwrap().face_vector().unwrap().counts, vec![6, 15, 20, 15, 6]);
        let nb = get("nonball_example").unwrap();
        assert_eq!(nb.num_facets(), 5);
        assert_eq!(nb.num_vertices(), 7);
        assert_eq!(get("standard_ball(3)").unwrap().num_facets(), 1);
        assert_eq!(get("standard_sphere(2)").unwrap().num_facets(), 4);
        assert!(matches!(get("nope"), Err(Error::UnknownName(_))));
        assert!(get("A5_41_tree_family").is_err());
        assert!(is_known("standard_ball(7)"));
    }

    #[test]
    fn tree_sizes() {
        let f = a541_tree_family();
        assert_eq!(f.host.num_vertices(), 246);
        assert!(f.trees.iter().all(|t| t.len() == 36));
    }

    #[test]
    fn expected_records() {
        let e = expected("N4_21").unwrap();
        assert_eq!(e.f_vector, Some(vec![21, 210, 490, 525, 210]));
        assert_eq!(e.homeomorphism_type.as_deref(), Some("(S³⋊S¹)^#8 twisted"));
        assert_eq!(expected("S4_6").unwrap().chi, Some(2));
        assert!(expected("zzz").is_err());
    }

    #[test]
    fn label_parsing() {
        let classes = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_label("b12", &classes), Some(Label { class: 1, index: 12 }));
        assert_eq!(parse_label("c1", &classes), None);
        assert_eq!(parse_label("a", &classes), None);
    }
}
