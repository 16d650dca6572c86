//! Exact-geometry kernel: points, boundary segments with arclength
//! parameterization, and closed-form ray intersection.

pub mod point;
pub mod ray;
pub mod roots;
pub mod segment;

pub(crate) mod intersect;

pub use point::{Aabb, Point2, UnitVec2, Vec2};
pub use ray::{ray_intersect, RayHit};
pub use segment::{BoundarySegment, CircularArc, EllipticalArc, LineSegment, ARCLENGTH_PANELS};
