//! Prime graphs of finite solvable groups.
//!
//! A graph is the prime graph of a solvable group exactly when its complement
//! is triangle-free and 3-colorable. This crate decides that property with
//! certificates, orients complements into Frobenius digraphs, analyzes and
//! enumerates minimal prime graphs, and synthesizes explicit groups whose
//! prime graph is a given admissible graph.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod field;
pub mod graph;
pub mod minimality;
pub mod model;
pub mod named;
pub mod realizability;
pub mod synth;

pub use analysis::{analyze, fitting_bounds, sigma_partition_bound, DigraphAnalysis, FittingBounds};
pub use error::{Error, Result};
pub use graph::{Coloring, Direction, Girth, LabeledGraph, Orientation, VertexSet};
pub use minimality::{
    canonical_orientation, check_minimal_lemmas, contains_induced_c5, enumerate_minimal,
    is_minimal, linked_vertex_duplication, LemmaReport, MinimalityReport,
};
pub use model::{verify_round_trip, GroupElement, GroupModel, RoundTrip};
pub use realizability::{
    classify_girth, exceptional_forests, is_solvable_prime_graph, orient_from_coloring,
    validate_frobenius_orientation, GirthClass, RealizabilityVerdict, Violation,
};
pub use synth::{
    build_k_action, build_module, estimate_order, phi_sets, select_primes, synthesize,
    CongruenceMode, GroupPlan, ModuleSpec, SynthOptions,
};
