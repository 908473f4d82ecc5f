//! Construction and certification of large graphs with given maximum degree
//! and diameter.
//!
//! The library builds the bipartite Moore graphs that come from finite
//! incidence geometries — projective planes, generalized quadrangles on the
//! parabolic quadric in PG(4,q), and generalized hexagons on the parabolic
//! quadric in PG(6,q) — and then enlarges them by replacing selected vertices
//! with complete graphs under a set of edge-assignment rules that keep the
//! diameter fixed. Every graph that comes out of a builder is measured, not
//! trusted: order, degree profile, bipartiteness, girth, and diameter are
//! certified by breadth-first search.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: exact arithmetic in GF(p^n) with log/antilog tables.
//! - [`geometry`]: projective points, quadrics, totally singular lines, and
//!   the hexagon line selection via Plücker coordinates.
//! - [`graph`]: the immutable adjacency structure and the measurement
//!   algorithms (BFS, exact and budgeted diameter, girth, bipartition,
//!   disjoint shortest paths).
//! - [`moore`]: incidence-graph assembly and Moore-bound validation.
//! - [`compound`]: vertex replacement by cliques — tree indexing, slot
//!   accounting, edge-assignment plans, condition checks, and the named
//!   record constructions.
//! - [`formats`]: edge-list, DIMACS, and graph6 encode/decode.
//! - [`cache`]: checksummed on-disk cache for the expensive hexagons.
//! - [`table`]: the record-table reproduction report.

pub mod cache;
pub mod compound;
pub mod field;
pub mod formats;
pub mod geometry;
pub mod graph;
pub mod moore;
pub mod table;

#[doc(hidden)]
pub mod book;

pub use field::{make_field, ArithKind, FieldElement, FieldError, FieldSpec};
pub use geometry::{
    enumerate_projective_points, hexagon_lines, lines_on_quadric, quadric_points, GeometryError,
    GeometryLine, PlueckerVector, ProjectivePoint, QuadraticForm,
};
pub use graph::{
    bipartite_moore_bound, moore_bound, Certificate, CertifyOptions, DiameterMethod, DiameterMode,
    Graph, GraphError, VertexLabel,
};
pub use moore::{
    build_hq, build_incidence_graph, build_pq, build_qq, validate_moore, MooreError, MooreFamily,
};
pub use compound::{
    apply_plan, build_h3_k3, build_h4_k4, build_q4_k3, check_conditions, construct_named,
    index_tree, make_plan, slot_balance, CompoundConfig, CompoundError, CompoundResult,
    ConditionsReport, NamedCompound, RangeSpec, ReplacementPlan, SlotLedger, TreeIndex,
};
