//! Error types, one small enum per subsystem.

use thiserror::Error;

/// Errors from geometric primitive construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector too close to zero to normalize")]
    ZeroVector,
    #[error("vector is not unit length")]
    NotUnit,
    #[error("degenerate segment: {0}")]
    DegenerateSegment(String),
    #[error("arclength {u} outside [0, {len}]")]
    ArclengthOutOfRange { u: f64, len: f64 },
    #[error("arclength table is not strictly increasing")]
    BadArclengthTable,
}

/// Errors raised while assembling or querying a [`crate::domain::Domain`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("component list is empty")]
    NoComponents,
    #[error("component {component}: chain is open between segment {segment} and its successor (gap {gap})")]
    OpenChain {
        component: usize,
        segment: usize,
        gap: f64,
    },
    #[error("component {component}: segments {first} and {second} intersect away from their shared junction")]
    SelfIntersecting {
        component: usize,
        first: usize,
        second: usize,
    },
    #[error("component {component} is not counter-clockwise (signed area {area})")]
    NotCounterClockwise { component: usize, area: f64 },
    #[error("obstacle {component} is not strictly inside the outer wall")]
    ObstacleOutsideOuter { component: usize },
    #[error("obstacles {first} and {second} overlap")]
    OverlappingObstacles { first: usize, second: usize },
    #[error("component index {index} out of range (domain has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("could not determine an inward normal for component {component} segment {segment}")]
    InwardSideUndetermined { component: usize, segment: usize },
    #[error("invalid parameter for builtin table: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Errors from phase point construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("theta {theta} outside the open interval (0, pi)")]
    ThetaOutOfRange { theta: f64 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Errors from rotation number / rotation vector estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotationError {
    #[error("phase points lie on different components ({a} vs {b})")]
    ComponentMismatch { a: usize, b: usize },
    #[error("operation requires a simply connected table (q = 1), domain has q = {q}")]
    NotSimplyConnected { q: usize },
    #[error(
        "orbit terminated in a singularity after {steps} steps; the check requires a regular orbit"
    )]
    SingularOrbit { steps: usize },
    #[error("step count must be at least {min}, got {got}")]
    TooFewSteps { min: usize, got: usize },
}

/// Errors from Monte Carlo integration over the phase space.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiouvilleError {
    #[error("sample count must be at least {min}, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error(
        "suspicious geometry: {singular} singular evaluations against {accepted} accepted \
         samples (more than 1%)"
    )]
    TooManySingular { singular: usize, accepted: usize },
}
