//! Deciding equivalence of graph states under local operations.
//!
//! Two graph states are *locally Clifford equivalent* when a sequence of
//! local complementations maps one graph onto the other. This crate
//! implements that decision procedure and its generalization to *level-r*
//! equivalence, where vertex multisets over `Z/2^r` act on graphs through
//! generalized local complementation, up to the level at which local-unitary
//! and level-r equivalence provably coincide. Decisions come with
//! machine-checkable witnesses: explicit operation sequences that replay
//! from the source graph to the target.
//!
//! The main entry points are:
//!
//! - [`Graph`] and [`VertexSet`]: bit-packed graphs and vertex sets, with
//!   local complementation, pivots, and neighbourhood algebra.
//! - [`VertexMultiset`] and [`Graph::apply_rlc`]: level-r multisets and
//!   their action.
//! - graph6 parsing and printing in [`g6`].

pub mod bouchet;
pub mod equiv;
pub mod error;
pub mod g6;
pub mod gk;
pub mod graph;
pub mod linalg;
pub mod localsets;
pub mod multiset;
pub mod orbit;
pub mod standard;
pub mod witness;

pub use bouchet::{
    decide_lc, decide_lc_components, is_class_alpha, solve_constrained, ConstraintSet,
    QuadSolution, SolveOptions,
};
pub use equiv::{
    build_sharp, complement_bound, decide_lcr, decide_lu, genuine_support_bound,
    max_useful_level, omega_basis, order_bound, random_incident_sample,
    reduce_genuine_at_minimum_complement, verify_witness, LcrOutcome, OmegaBasis, OmegaVector,
    SharpGraph,
};
pub use error::{Error, Result};
pub use g6::{from_graph6, to_graph6};
pub use localsets::{
    generators_of, is_cover_of, is_local_set, is_minimal_local_set, local_set_of, mls_cover,
    mls_dimension, mls_dimension_equal, vertex_types, LocalSetCaps, LocalSetRecord, MlsCover,
    VertexType,
};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use multiset::{decompose_2lc, VertexMultiset, MAX_LEVEL};
pub use orbit::{lc_orbit, lcr_orbit_small, Orbit, OrbitLimits};
pub use standard::{
    check_same_types_and_x_neighbourhoods, standardize_pair, StandardFormResult,
    StandardizeOptions, StandardizeOutcome,
};
pub use witness::{apply_op, LocalOp, Witness};
