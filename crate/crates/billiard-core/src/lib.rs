//! Billiard map dynamics on piecewise-smooth planar tables.
//!
//! The crate simulates the billiard map in boundary coordinates
//! `(s, theta)` — arclength along the table wall and outgoing angle in
//! `(0, pi)` — on tables assembled from lines, circular arcs and elliptical
//! arcs, possibly with obstacles (multiply connected tables). On top of the
//! map it provides the invariant `sin(theta) ds dtheta` phase-space measure
//! (exact sampling and Monte Carlo integration) and Birkhoff-average
//! estimators for rotation numbers and per-component rotation vectors,
//! together with the canonical time-reversal involutions.
//!
//! All core math is generic over the scalar type via [`Real`]
//! (`f32`/`f64`); the crate root exports `f64` aliases for the common case.

// Validation guards are written as negated comparisons (`!(x > 0)`) so NaN
// parameters fail validation instead of slipping through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domain;
pub mod error;
pub mod geometry;
pub mod liouville;
pub mod map;
pub mod rotation;
pub mod stats;

mod scalar;

pub use scalar::Real;

// Default-precision (f64) aliases for the main types.
pub type Point2 = geometry::Point2<f64>;
pub type Vec2 = geometry::Vec2<f64>;
pub type UnitVec2 = geometry::UnitVec2<f64>;
pub type BoundarySegment = geometry::BoundarySegment<f64>;
pub type RayHit = geometry::RayHit<f64>;
pub type BoundaryComponent = domain::BoundaryComponent<f64>;
pub type Domain = domain::Domain<f64>;
pub type PhasePoint = map::PhasePoint<f64>;
pub type StepOutcome = map::StepOutcome<f64>;
pub type OrbitSummary = map::OrbitSummary<f64>;
pub type RotationEstimate = rotation::RotationEstimate<f64>;
pub type RotationVectorEstimate = rotation::RotationVectorEstimate<f64>;
pub type MCEstimate = liouville::MCEstimate<f64>;
