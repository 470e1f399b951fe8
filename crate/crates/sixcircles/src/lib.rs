//! Cevian six-circle geometry and numerical identity verification.
//!
//! When the three cevians through an interior point of a triangle are drawn,
//! they cut the triangle into six smaller triangles. Attaching a circle to
//! each piece (incircles, or one of two excircle placements) yields families
//! of six radii that satisfy exact product and reciprocal-sum identities
//! depending on which classical center the cevians pass through.
//!
//! This crate constructs those configurations and verifies the whole identity
//! catalog numerically: exact rational arithmetic where the data is rational,
//! configurable-precision floating point (53/150/300-bit mantissas) where
//! square roots enter, independent closed-form oracles, and seeded
//! property-based sampling.

pub mod catalog;
pub mod centers;
pub mod circles;
pub mod figure;
pub mod geom;
pub mod harness;
pub mod report;
pub mod scalar;

pub use catalog::{evaluate_identity, IdentityId, IdentityReport};
pub use centers::{CenterKind, CevianTriad};
pub use circles::{Circle, CircleFamily, SixCircleSet, Subdivision};
pub use geom::{Line, Point, Triangle};
pub use harness::{SamplerFamily, SamplerSpec, TrialSummary};
pub use scalar::{Prec, Scalar};

/// Errors shared across the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle (zero area)")]
    DegenerateTriangle,
    #[error("lines are parallel or nearly parallel")]
    ParallelLines,
    #[error("line anchors coincide")]
    CoincidentPoints,
    #[error("center {0} is not strictly interior")]
    CenterNotInterior(String),
    #[error("triangle violates required constraint: {0}")]
    ConstraintViolated(String),
    #[error("side lengths do not satisfy the strict triangle inequality")]
    InvalidSides,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("sampler specification is infeasible: {0}")]
    SpecInfeasible(String),
    #[error("sampler family is incompatible with identity {0}")]
    IncompatibleSpec(String),
    #[error("no index permutation satisfies the identity")]
    NoPermutationFound,
    #[error("figure construction failed: {0}")]
    ConstructionFailed(String),
    #[error("unknown identity name: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
