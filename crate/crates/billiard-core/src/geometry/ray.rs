//! Closed-form first-intersection queries of rays against boundary segments.
//!
//! The kernel is tolerance-neutral: callers choose `t_min` (the billiard map
//! passes `1e-10 * domain diameter` to avoid re-hitting the launch point).

use crate::scalar::{cast, tol, Real};

use super::point::{Point2, UnitVec2};
use super::segment::{BoundarySegment, CircularArc, EllipticalArc, LineSegment};

/// A ray/segment intersection record.
#[derive(Clone, Copy, Debug)]
pub struct RayHit<T> {
    /// Ray parameter (equals the Euclidean distance for unit directions).
    pub t: T,
    /// The intersection point `origin + t * dir`.
    pub point: Point2<T>,
    /// Arclength of the hit measured from the segment start, in `[0, length]`.
    pub local_arclength: T,
}

/// Candidate intersection used by parity tests: `marginal` marks grazing or
/// junction-adjacent hits whose parity contribution is unreliable.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ParityHit<T> {
    pub t: T,
    pub marginal: bool,
}

/// Smallest-`t` intersection with `t > t_min`, or `None`.
pub fn ray_intersect<T: Real>(
    seg: &BoundarySegment<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
    t_min: T,
) -> Option<RayHit<T>> {
    match seg {
        BoundarySegment::Line(s) => line_hit(s, origin, dir, t_min),
        BoundarySegment::CircularArc(s) => circle_hits(s, origin, dir, t_min, &mut |_| {}),
        BoundarySegment::EllipticalArc(s) => ellipse_hits(s, origin, dir, t_min, &mut |_| {}),
    }
}

fn line_hit<T: Real>(
    s: &LineSegment<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
    t_min: T,
) -> Option<RayHit<T>> {
    let e = s.end() - s.start();
    let denom = dir.as_vec().cross(e);
    // Near-parallel rays produce no hit; a grazing ray along the edge is a
    // tangential configuration handled by the caller.
    if denom.abs() <= s.len() * tol(1e-14) {
        return None;
    }
    let rel = s.start() - origin;
    let t = rel.cross(e) / denom;
    let w = rel.cross(dir.as_vec()) / denom;
    let slack = tol::<T>(1e-9);
    if t <= t_min || w < -slack || w > T::one() + slack {
        return None;
    }
    let w = w.max(T::zero()).min(T::one());
    Some(RayHit {
        t,
        point: origin + dir * t,
        local_arclength: w * s.len(),
    })
}

/// Roots of the ray/circle quadratic with the tangency collapse rule:
/// a discriminant within `1e-12 * r^2` of zero yields one root, never two
/// closer than `1e-6 * r`.
fn circle_roots<T: Real>(
    s: &CircularArc<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
) -> ([T; 2], usize, bool) {
    let oc = origin - s.center();
    let bh = oc.dot(dir.as_vec());
    let c0 = oc.norm_squared() - s.radius() * s.radius();
    let disc = bh * bh - c0;
    let thr = s.radius() * s.radius() * tol(1e-12);
    if disc < -thr {
        return ([T::zero(); 2], 0, false);
    }
    if disc <= thr {
        return ([-bh, T::zero()], 1, true);
    }
    let sq = disc.sqrt();
    let q = if bh >= T::zero() {
        -(bh + sq)
    } else {
        -(bh - sq)
    };
    let (r1, r2) = (q, if q != T::zero() { c0 / q } else { -bh + sq });
    if r1 <= r2 {
        ([r1, r2], 2, false)
    } else {
        ([r2, r1], 2, false)
    }
}

fn circle_hits<T: Real>(
    s: &CircularArc<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
    t_min: T,
    on_candidate: &mut impl FnMut(ParityHit<T>),
) -> Option<RayHit<T>> {
    let (roots, n, tangent) = circle_roots(s, origin, dir);
    let mut best: Option<RayHit<T>> = None;
    for &t in roots[..n].iter() {
        if !(t > t_min) {
            continue;
        }
        let p = origin + dir * t;
        if let Some(u) = s.locate_on_arc(p) {
            let near_end = u < s.len() * cast(1e-7) || u > s.len() * (T::one() - cast(1e-7));
            on_candidate(ParityHit {
                t,
                marginal: tangent || near_end,
            });
            if best.as_ref().is_none_or(|b| t < b.t) {
                best = Some(RayHit {
                    t,
                    point: p,
                    local_arclength: u,
                });
            }
        }
    }
    best
}

/// Ray/ellipse roots in the ellipse's own frame (rigid transform first, so
/// the quadratic coefficients stay well scaled).
fn ellipse_roots<T: Real>(
    s: &EllipticalArc<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
) -> ([T; 2], usize, bool) {
    let (a, b) = s.semi_axes();
    let o = s.local_of_world(origin);
    let d = s.local_dir(dir.as_vec());
    let ax = d.x / a;
    let ay = d.y / b;
    let ox = o.x / a;
    let oy = o.y / b;
    let qa = ax * ax + ay * ay;
    let qb = ox * ax + oy * ay;
    let qc = ox * ox + oy * oy - T::one();
    let disc = qb * qb - qa * qc;
    let thr = (qa * b).powi(2) * tol(1e-12)
        + T::epsilon() * cast::<T>(32.0) * (qb * qb).max((qa * qc).abs());
    if disc < -thr {
        return ([T::zero(); 2], 0, false);
    }
    if disc <= thr {
        return ([-qb / qa, T::zero()], 1, true);
    }
    let sq = disc.sqrt();
    let q = if qb >= T::zero() {
        -(qb + sq)
    } else {
        -(qb - sq)
    };
    let (r1, r2) = (
        q / qa,
        if q != T::zero() {
            qc / q
        } else {
            (-qb + sq) / qa
        },
    );
    if r1 <= r2 {
        ([r1, r2], 2, false)
    } else {
        ([r2, r1], 2, false)
    }
}

fn ellipse_hits<T: Real>(
    s: &EllipticalArc<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
    t_min: T,
    on_candidate: &mut impl FnMut(ParityHit<T>),
) -> Option<RayHit<T>> {
    let (roots, n, tangent) = ellipse_roots(s, origin, dir);
    let mut best: Option<RayHit<T>> = None;
    for &t in roots[..n].iter() {
        if !(t > t_min) {
            continue;
        }
        let p = origin + dir * t;
        if let Some(u) = s.locate_on_arc(p) {
            let near_end = u < s.len() * cast(1e-7) || u > s.len() * (T::one() - cast(1e-7));
            on_candidate(ParityHit {
                t,
                marginal: tangent || near_end,
            });
            if best.as_ref().is_none_or(|b| t < b.t) {
                best = Some(RayHit {
                    t,
                    point: p,
                    local_arclength: u,
                });
            }
        }
    }
    best
}

/// All forward (`t > 0`) candidate hits of a ray against a segment, with
/// marginality flags. Used by the point-in-component parity test.
pub(crate) fn ray_hits_for_parity<T: Real>(
    seg: &BoundarySegment<T>,
    origin: Point2<T>,
    dir: UnitVec2<T>,
    out: &mut Vec<ParityHit<T>>,
) {
    match seg {
        BoundarySegment::Line(s) => {
            let e = s.end() - s.start();
            let denom = dir.as_vec().cross(e);
            if denom.abs() <= s.len() * cast(1e-12) {
                // A parallel ray close to the supporting line is unreliable.
                let dist = (s.start() - origin).cross(dir.as_vec()).abs();
                if dist <= s.len() * cast(1e-9) {
                    out.push(ParityHit {
                        t: T::zero(),
                        marginal: true,
                    });
                }
                return;
            }
            let rel = s.start() - origin;
            let t = rel.cross(e) / denom;
            let w = rel.cross(dir.as_vec()) / denom;
            if t > T::zero() && w >= -cast::<T>(1e-7) && w <= T::one() + cast(1e-7) {
                let marginal = w < cast(1e-7) || w > T::one() - cast::<T>(1e-7);
                out.push(ParityHit { t, marginal });
            }
        }
        BoundarySegment::CircularArc(s) => {
            circle_hits(s, origin, dir, T::zero(), &mut |h| out.push(h));
        }
        BoundarySegment::EllipticalArc(s) => {
            ellipse_hits(s, origin, dir, T::zero(), &mut |h| out.push(h));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::TAU;

    fn unit_circle() -> BoundarySegment<f64> {
        BoundarySegment::circular_arc(Point2::new(0.0, 0.0), 1.0, 0.0, TAU).unwrap()
    }

    #[test]
    fn ray_from_center_hits_radius() {
        let hit = ray_intersect(
            &unit_circle(),
            Point2::new(0.0, 0.0),
            UnitVec2::from_angle(0.0),
            0.0,
        )
        .unwrap();
        assert!((hit.t - 1.0).abs() < 1e-14);
        assert!((hit.point.x - 1.0).abs() < 1e-14 && hit.point.y.abs() < 1e-14);
        assert!(hit.local_arclength.abs() < 1e-9);
    }

    #[test]
    fn ray_hits_square_top_edge() {
        let top = BoundarySegment::line(Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)).unwrap();
        let hit = ray_intersect(
            &top,
            Point2::new(0.5, 0.0),
            UnitVec2::from_angle(core::f64::consts::FRAC_PI_2),
            0.0,
        )
        .unwrap();
        assert!((hit.t - 1.0).abs() < 1e-14);
        assert!((hit.point.x - 0.5).abs() < 1e-14 && (hit.point.y - 1.0).abs() < 1e-14);
        // Top edge runs (1,1) -> (0,1), so the hit is half way: u = 0.5.
        assert!((hit.local_arclength - 0.5).abs() < 1e-14);
    }

    #[test]
    fn ray_hits_ellipse_semi_axis() {
        let e = BoundarySegment::elliptical_arc(Point2::new(0.0, 0.0), 2.0, 1.0, 0.0, 0.0, TAU)
            .unwrap();
        let hit = ray_intersect(&e, Point2::new(0.0, 0.0), UnitVec2::from_angle(0.0), 0.0).unwrap();
        assert!((hit.t - 2.0).abs() < 1e-12);
    }

    #[test]
    fn t_min_skips_launch_point() {
        // From a point on the circle, grazing out: the t ~ 0 root must be
        // suppressed and the chord endpoint returned.
        let c = unit_circle();
        let origin = Point2::new(1.0, 0.0);
        let dir = UnitVec2::from_angle(core::f64::consts::FRAC_PI_2 + 0.3);
        let hit = ray_intersect(&c, origin, dir, 1e-10).unwrap();
        assert!(hit.t > 0.1);
        let r = hit.point.x.hypot(hit.point.y);
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tangent_ray_reports_at_most_one_hit() {
        // Ray tangent to the unit circle at (0, 1).
        let c = unit_circle();
        let origin = Point2::new(-2.0, 1.0);
        let dir = UnitVec2::from_angle(0.0);
        let mut hits = Vec::new();
        ray_hits_for_parity(&c, origin, dir, &mut hits);
        assert!(hits.len() <= 1, "tangent ray produced {:?}", hits);
        if let Some(h) = hits.first() {
            assert!(h.marginal);
        }
    }

    #[test]
    fn miss_is_none() {
        let c = unit_circle();
        assert!(ray_intersect(&c, Point2::new(3.0, 0.0), UnitVec2::from_angle(0.0), 0.0).is_none());
        assert!(ray_intersect(&c, Point2::new(0.0, 5.0), UnitVec2::from_angle(0.0), 0.0).is_none());
    }

    #[test]
    fn partial_arc_respects_angular_window() {
        // Right half-circle from angle -pi/2 to +pi/2 (CCW).
        let half = BoundarySegment::circular_arc(
            Point2::new(0.0, 0.0),
            1.0,
            -core::f64::consts::FRAC_PI_2,
            core::f64::consts::PI,
        )
        .unwrap();
        // Ray heading left from origin exits through the left half: no hit.
        assert!(ray_intersect(
            &half,
            Point2::new(0.0, 0.0),
            UnitVec2::from_angle(core::f64::consts::PI),
            0.0
        )
        .is_none());
        // Heading right hits (1, 0), local arclength pi/2 from (0,-1).
        let hit =
            ray_intersect(&half, Point2::new(0.0, 0.0), UnitVec2::from_angle(0.0), 0.0).unwrap();
        assert!((hit.local_arclength - core::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
