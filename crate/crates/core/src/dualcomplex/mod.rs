//! Dual complexes of simple normal crossings divisors `E = sum E_i` on
//! threefolds, with the link invariant, deformation dimensions and the
//! Type II / III_1 / III_2 classification.

mod classify;
mod complex;
mod config;
mod dot;
mod invariants;

pub use classify::{classify, ClassificationResult, Clause, ClauseStatus, Verdict};
pub use complex::{
    build_dual_complex, has_multi_edges, restriction_rank, DiskBoundary, DualComplex, Edge,
    Triangle,
};
pub use config::{
    CCurve, D0Curve, DivisorConfiguration, DoubleCurve, Id, MarkedData, Meeting, OneOrMany,
    SurfaceComponent, SurfaceKind, TriplePoint,
};
pub use dot::to_dot;
pub use invariants::{
    deformation_dims, h2_lower_bound, link_invariant, semistable_ell_check, DeformationDims,
    EllCheck, LinkInvariant, SemistableKind,
};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualComplexError {
    #[error("invalid configuration JSON: {0}")]
    Json(String),
    #[error("duplicate id {0}")]
    DuplicateId(Id),
    #[error("unknown component {id} in {context}")]
    UnknownComponent { id: Id, context: String },
    #[error("unknown double curve {id} in {context}")]
    UnknownCurve { id: Id, context: String },
    #[error("double curve {0} joins a component to itself")]
    SelfIntersection(Id),
    #[error("{id} has genus {genus}; only 0 and 1 are supported")]
    InvalidGenus { id: Id, genus: u8 },
    #[error("{id}: {reason}")]
    KindMismatch { id: Id, reason: String },
    #[error("triple point: {0}")]
    TriplePoint(String),
    #[error("marked curves: {0}")]
    Marked(String),
    #[error("ambiguous marked data: {0}")]
    AmbiguousMarked(String),
    #[error("dual complex has {components} connected components")]
    Disconnected { components: usize },
    #[error("component {0} has no b2")]
    MissingB2(Id),
    #[error("component {component} has no h^(0,{q})")]
    MissingHodge { component: Id, q: usize },
    #[error("dimension {0} is below 3")]
    InvalidDimension(usize),
    #[error("pa_d is required for the Type III_2 bound")]
    MissingArithmeticGenus,
    #[error("configuration satisfies no type")]
    Unclassified,
    #[error("configuration satisfies several types: {}", .0.join(", "))]
    AmbiguousClassification(Vec<String>),
}
