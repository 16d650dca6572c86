//! Builtin tables: circle, ellipse, polygon, stadium and the two annuli.
//!
//! Every component is parameterized counter-clockwise as a planar curve with
//! its reference point (s = 0) at the first segment start.

use crate::error::DomainError;
use crate::geometry::point::{Point2, Vec2};
use crate::geometry::segment::BoundarySegment;
use crate::scalar::{cast, Real};

use super::{BoundaryComponent, Domain};

fn full_circle_component<T: Real>(
    center: Point2<T>,
    radius: T,
) -> Result<BoundaryComponent<T>, DomainError> {
    BoundaryComponent::new(vec![BoundarySegment::circular_arc(
        center,
        radius,
        T::zero(),
        T::TAU(),
    )?])
}

/// Circular table of the given radius, centered at the origin; s = 0 at
/// `(radius, 0)`.
pub fn circle<T: Real>(radius: T) -> Result<Domain<T>, DomainError> {
    if !(radius > T::zero()) {
        return Err(DomainError::InvalidParameter(
            "circle radius must be positive".into(),
        ));
    }
    Domain::build(vec![full_circle_component(
        Point2::new(T::zero(), T::zero()),
        radius,
    )?])
}

/// Elliptical table with semi-axes `a >= b > 0`, axis-aligned, centered at
/// the origin; s = 0 at `(a, 0)`.
pub fn ellipse<T: Real>(a: T, b: T) -> Result<Domain<T>, DomainError> {
    if !(b > T::zero()) || !(a >= b) {
        return Err(DomainError::InvalidParameter(
            "ellipse requires a >= b > 0".into(),
        ));
    }
    Domain::build(vec![BoundaryComponent::new(vec![
        BoundarySegment::elliptical_arc(
            Point2::new(T::zero(), T::zero()),
            a,
            b,
            T::zero(),
            T::zero(),
            T::TAU(),
        )?,
    ])?])
}

/// Simple counter-clockwise polygon table; s = 0 at the first vertex.
pub fn polygon<T: Real>(vertices: &[Point2<T>]) -> Result<Domain<T>, DomainError> {
    if vertices.len() < 3 {
        return Err(DomainError::InvalidParameter(format!(
            "polygon needs at least 3 vertices, got {}",
            vertices.len()
        )));
    }
    let n = vertices.len();
    let mut segs = Vec::with_capacity(n);
    for i in 0..n {
        segs.push(BoundarySegment::line(vertices[i], vertices[(i + 1) % n])?);
    }
    Domain::build(vec![BoundaryComponent::new(segs)?])
}

/// Stadium: two straight walls of length `straight` joined by semicircular
/// caps of the given radius. The boundary is C^1 (the joints are smooth, not
/// corners); s = 0 at the bottom-left point `(-straight/2, -radius)`.
pub fn stadium<T: Real>(straight: T, radius: T) -> Result<Domain<T>, DomainError> {
    if !(straight > T::zero()) || !(radius > T::zero()) {
        return Err(DomainError::InvalidParameter(
            "stadium requires positive straight length and radius".into(),
        ));
    }
    let h = straight / cast(2.0);
    let r = radius;
    let bottom = BoundarySegment::line(Point2::new(-h, -r), Point2::new(h, -r))?;
    let right_cap =
        BoundarySegment::circular_arc(Point2::new(h, T::zero()), r, -T::FRAC_PI_2(), T::PI())?;
    let top = BoundarySegment::line(Point2::new(h, r), Point2::new(-h, r))?;
    let left_cap =
        BoundarySegment::circular_arc(Point2::new(-h, T::zero()), r, T::FRAC_PI_2(), T::PI())?;
    Domain::build(vec![BoundaryComponent::new(vec![
        bottom, right_cap, top, left_cap,
    ])?])
}

/// Annulus between concentric circles: outer wall of radius `outer_radius`,
/// circular obstacle of radius `inner_radius`, both centered at the origin.
pub fn concentric_annulus<T: Real>(
    outer_radius: T,
    inner_radius: T,
) -> Result<Domain<T>, DomainError> {
    asymmetric_annulus(outer_radius, inner_radius, Vec2::new(T::zero(), T::zero()))
}

/// Annulus between non-concentric circles: the obstacle center is displaced
/// by `offset` and must stay strictly inside the outer wall.
pub fn asymmetric_annulus<T: Real>(
    outer_radius: T,
    inner_radius: T,
    offset: Vec2<T>,
) -> Result<Domain<T>, DomainError> {
    if !(outer_radius > T::zero()) || !(inner_radius > T::zero()) {
        return Err(DomainError::InvalidParameter(
            "annulus radii must be positive".into(),
        ));
    }
    if !(offset.norm() + inner_radius < outer_radius) {
        return Err(DomainError::InvalidParameter(
            "inner circle must lie strictly inside the outer circle".into(),
        ));
    }
    let outer = full_circle_component(Point2::new(T::zero(), T::zero()), outer_radius)?;
    let inner = full_circle_component(Point2::new(T::zero(), T::zero()) + offset, inner_radius)?;
    Domain::build(vec![outer, inner])
}
