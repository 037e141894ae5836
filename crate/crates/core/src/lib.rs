//! Pure simplicial complexes, Walkup's classes and the neighborly members of
//! `K̄(5)` whose boundaries are tight, strongly minimal 4-manifolds.
//!
//! The crate covers facet-list complexes and their face numbers, recognition
//! of pseudomanifolds and stacked balls and spheres, exact homology over
//! GF(2) and Q, automorphism groups, the tree-family construction of
//! neighborly complexes, and a catalog of the named examples.

pub mod catalog;
pub mod classify;
pub mod complex;
pub mod construct;
pub mod error;
pub mod format;
pub mod generate;
pub mod gf2;
pub mod homology;
pub mod intrank;
pub mod symmetry;

pub use classify::{
    check_lower_bounds, check_lower_bounds_strict, cone, dual_graph, in_walkup_class, is_pseudomanifold,
    is_stacked_ball, is_stacked_sphere, is_weak_pseudomanifold, BoundReport, DualGraph, WalkupClass,
};
pub use complex::{Complex, Face, FaceSource, FaceVector, GeneralComplex, Vertex};
pub use construct::{
    complex_from_tree_family, defines_subset, expand_orbit, tree_family_from_complex, verify_hypotheses, HostGraph,
    HypothesisReport, OrbitPresentation, TreeFamily,
};
pub use error::{Error, Result};
pub use homology::{
    betti_numbers, boundary_matrix, certify_tight, identify_type, is_orientable, is_tight_bruteforce, BettiVector,
    Field, TightCertificate, TypeReport,
};
pub use symmetry::{automorphism_group, is_automorphism, verify_aut_equality, GroupDescription, Permutation};
