//! Curvature analysis for weighted graphs.
//!
//! The crate models finite connected weighted graphs with a choice of
//! Laplacian normalization, computes the iterated gradient forms of the
//! associated calculus, and decides pointwise curvature dimension
//! conditions `CD(K, n)` exactly (rational arithmetic) or numerically
//! (floating point with pinned tolerances). On top of the pointwise test
//! sit the classification tools: constructors and a recognizer for the
//! families with nonnegative curvature, an exhaustive enumerator for small
//! graph classes with girth and degree filters, and surveys that check the
//! enumerated classes against the predicted families.
//!
//! With the default `parallel` feature the sweeps over vertices, classes,
//! and search branches run on a work-stealing thread pool; every parallel
//! entry point has a `_seq` twin so the two schedules can be compared.

pub mod calculus;
pub mod curvature;
pub mod enumerate;
pub mod error;
mod exec;
pub mod families;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod scalar;

pub use calculus::{
    gamma2_at, gamma2_bochner_at, gamma_at, hessian_norm_sq, laplacian_at, local_forms, LocalForms,
};
pub use curvature::{
    alpha, cd_at, cd_at_generic, cd_at_girth5, cd_graph, cd_graph_seq, curvature_value_at,
    degree_pattern_normalized, degree_pattern_physical, girth5_form, graph_reports,
    graph_reports_seq, pending_cd, q_count, reduced_form, vertex_report, CurvatureReport,
    Dimension,
};
pub use enumerate::{
    canonical_class, enumerate_graphs, enumerate_graphs_seq, resolve_star_question,
    verify_classification, verify_classification_seq, ClassificationOutcome, EnumerationConfig,
    FamilyTally, SmallGraph, StarVerdict, Survivor, MAX_ENUMERATION_VERTICES,
};
pub use error::{Error, Result};
pub use families::{
    is_family_member, make_cycle, make_family, make_path, make_spider, make_star, make_star3_ext,
    Family,
};
pub use format::{parse_graph, serialize_graph};
pub use graph::{Girth, LaplacianMode, Vertex, VertexNeighborhood, WeightedGraph};
pub use matrix::{PsdScalar, SymMat, PSD_EPS};
pub use scalar::{
    decimal_string, exact_string, parse_decimal, parse_number, rational_from_f64, rational_to_f64,
    significant_digits, Rational, Scalar,
};
