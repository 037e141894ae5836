use itertools::Itertools;
use walkup::catalog::{self, MAIN_PAIRS};
use walkup::classify::{cone, dual_graph, in_walkup_class, is_pseudomanifold, is_weak_pseudomanifold, WalkupClass};
use walkup::construct::{
    complex_from_tree_family, tree_family_from_complex, verify_hypotheses, Condition, HostGraph, TreeFamily, Witness,
};
use walkup::generate::{random_stacked_ball, rng};
use walkup::Error;

#[test]
fn round_trip_on_catalog_complexes() {
    for (name, _) in MAIN_PAIRS {
        let m = catalog::get(name).unwrap();
        let f = tree_family_from_complex(&m).unwrap();
        assert_eq!(f.num_trees(), m.num_vertices());
        assert!(f.trees.iter().all(|t| t.len() == m.num_vertices() - 5), "{name}");
        assert!(verify_hypotheses(&f).passed(), "{name}");
        assert_eq!(complex_from_tree_family(&f).unwrap(), m, "{name}");
    }
}

#[test]
fn deleting_a_tree_breaks_multiplicity_on_its_vertices() {
    let mut f = catalog::a541_tree_family();
    let removed = f.trees.remove(17);
    let r = verify_hypotheses(&f);
    assert!(!r.passed());
    let c = r.condition(Condition::VertexMultiplicity);
    let vertices: Vec<usize> = c
        .witnesses
        .iter()
        .map(|w| match w {
            Witness::Vertex { vertex, trees } => {
                assert_eq!(*trees, 5);
                *vertex
            }
            other => panic!("unexpected witness {other:?}"),
        })
        .collect();
    assert_eq!(vertices, removed);
    assert!(matches!(complex_from_tree_family(&f), Err(Error::Hypotheses(_))));
}

#[test]
fn constructed_dual_graph_is_the_host() {
    let f = catalog::a541_tree_family();
    let m = complex_from_tree_family(&f).unwrap();
    let index: Vec<usize> = (0..f.host.num_vertices())
        .map(|u| {
            let facet = walkup::Face::new((0..f.num_trees()).filter(|&i| f.trees[i].contains(&u)).map(|i| i as u32));
            m.facet_index(&facet.unwrap()).unwrap()
        })
        .collect();
    let g = dual_graph(&m);
    for u in 0..f.host.num_vertices() {
        for v in u + 1..f.host.num_vertices() {
            let (a, b) = (index[u].min(index[v]), index[u].max(index[v]));
            assert_eq!(f.host.has_edge(u, v), g.edges.binary_search(&(a, b)).is_ok());
        }
    }
}

#[test]
fn ridges_lie_in_at_most_two_constructed_facets() {
    for (name, _) in MAIN_PAIRS {
        let m = complex_from_tree_family(&tree_family_from_complex(&catalog::get(name).unwrap()).unwrap()).unwrap();
        assert!(is_weak_pseudomanifold(&m));
        assert!(m.ridge_incidence().values().all(|v| v.len() <= 2));
    }
}

#[test]
fn non_neighborly_member_is_rejected() {
    let b = random_stacked_ball(3, 6, &mut rng(7)).unwrap();
    let c = cone(&b).unwrap();
    assert!(in_walkup_class(&c, WalkupClass::Kbar));
    assert!(matches!(tree_family_from_complex(&c), Err(Error::Domain(_))));
}

fn all_graphs(k: usize) -> Vec<HostGraph> {
    let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            HostGraph::new(k, edges).unwrap()
        })
        .collect()
}

#[test]
fn brute_force_small_families() {
    let mut passing = 0;
    let mut refused = Vec::new();
    let mut smallest = None;
    for d in 1..=2usize {
        for k in 1..=4usize {
            for host in all_graphs(k) {
                for n in d + 1..=k + d {
                    let subsets: Vec<Vec<usize>> = (0..k).combinations(n - d).collect();
                    for choice in (0..n).map(|_| 0..subsets.len()).multi_cartesian_product() {
                        let trees = choice.iter().map(|&i| subsets[i].clone()).collect();
                        let f = TreeFamily::new(host.clone(), trees, d).unwrap();
                        if !verify_hypotheses(&f).passed() {
                            continue;
                        }
                        passing += 1;
                        match complex_from_tree_family(&f) {
                            Ok(m) => {
                                assert!(is_pseudomanifold(&m));
                                assert_eq!(m.dim(), d);
                                assert_eq!(m.num_facets(), k);
                                if d == 1 {
                                    assert!(dual_graph(&m).is_tree());
                                }
                                smallest.get_or_insert((d, k, n, m));
                            }
                            Err(e) => refused.push((d, f.host.edges(), f.trees.clone(), e.to_string())),
                        }
                    }
                }
            }
        }
    }
    assert!(passing > 0);
    let (d, k, n, m) = smallest.unwrap();
    assert_eq!((d, k, n), (1, 1, 2));
    assert_eq!(m, walkup::Complex::from_lists([[0, 1]]).unwrap());
    // every refusal is the one-dimensional cycle: triangle host, edges as trees
    assert!(!refused.is_empty());
    for (d, edges, trees, message) in &refused {
        assert_eq!(*d, 1, "{edges:?} {trees:?}: {message}");
        assert_eq!(edges, &[(0, 1), (0, 2), (1, 2)]);
        assert!(message.contains("stacked ball"), "{message}");
        let mut sorted = trees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
