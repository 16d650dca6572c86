//! Closed-form segment/segment intersection tests backing domain validation
//! (simple-curve and disjointness checks). Line pairs solve linearly, a line
//! against a conic is a quadratic, circle pairs use the radical line, and any
//! pair involving an ellipse reduces to a quartic via the half-angle
//! substitution.

use crate::scalar::{cast, Real};

use super::point::{Point2, Vec2};
use super::roots::solve_quartic;
use super::segment::{BoundarySegment, CircularArc, EllipticalArc, LineSegment};

/// Implicit conic `Q(p) = (p - c)^T M (p - c) - 1 = 0` with `M` symmetric
/// positive definite.
#[derive(Clone, Copy, Debug)]
struct Conic<T> {
    c: Point2<T>,
    m11: T,
    m12: T,
    m22: T,
}

impl<T: Real> Conic<T> {
    fn of_circle(s: &CircularArc<T>) -> Self {
        let inv = T::one() / (s.radius() * s.radius());
        Self {
            c: s.center(),
            m11: inv,
            m12: T::zero(),
            m22: inv,
        }
    }

    fn of_ellipse(s: &EllipticalArc<T>) -> Self {
        let (a, b) = s.semi_axes();
        let (sin, cos) = s.rotation().sin_cos();
        let d1 = T::one() / (a * a);
        let d2 = T::one() / (b * b);
        Self {
            c: s.center(),
            m11: cos * cos * d1 + sin * sin * d2,
            m12: cos * sin * (d1 - d2),
            m22: sin * sin * d1 + cos * cos * d2,
        }
    }

    fn apply(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2::new(
            self.m11 * v.x + self.m12 * v.y,
            self.m12 * v.x + self.m22 * v.y,
        )
    }

    fn eval(&self, p: Point2<T>) -> T {
        let d = p - self.c;
        d.dot(self.apply(d)) - T::one()
    }
}

/// Parametric conic `p(t) = c + e1 cos t + e2 sin t` with its arc window.
#[derive(Clone, Copy, Debug)]
struct ParamConic<T> {
    c: Point2<T>,
    e1: Vec2<T>,
    e2: Vec2<T>,
}

impl<T: Real> ParamConic<T> {
    fn of_circle(s: &CircularArc<T>) -> Self {
        let r = s.radius();
        Self {
            c: s.center(),
            e1: Vec2::new(r, T::zero()),
            e2: Vec2::new(T::zero(), r),
        }
    }

    fn of_ellipse(s: &EllipticalArc<T>) -> Self {
        let (a, b) = s.semi_axes();
        let (sin, cos) = s.rotation().sin_cos();
        Self {
            c: s.center(),
            e1: Vec2::new(a * cos, a * sin),
            e2: Vec2::new(-b * sin, b * cos),
        }
    }

    fn point(&self, t: T) -> Point2<T> {
        let (sin, cos) = t.sin_cos();
        self.c + self.e1 * cos + self.e2 * sin
    }
}

fn conic_scale<T: Real>(seg: &BoundarySegment<T>) -> T {
    match seg {
        BoundarySegment::Line(s) => s.len(),
        BoundarySegment::CircularArc(s) => s.radius(),
        BoundarySegment::EllipticalArc(s) => s.semi_axes().0,
    }
}

fn implicit_of<T: Real>(seg: &BoundarySegment<T>) -> Option<Conic<T>> {
    match seg {
        BoundarySegment::Line(_) => None,
        BoundarySegment::CircularArc(s) => Some(Conic::of_circle(s)),
        BoundarySegment::EllipticalArc(s) => Some(Conic::of_ellipse(s)),
    }
}

fn param_of<T: Real>(seg: &BoundarySegment<T>) -> Option<ParamConic<T>> {
    match seg {
        BoundarySegment::Line(_) => None,
        BoundarySegment::CircularArc(s) => Some(ParamConic::of_circle(s)),
        BoundarySegment::EllipticalArc(s) => Some(ParamConic::of_ellipse(s)),
    }
}

/// Is `p` (already known to lie on the supporting curve of `seg`) within the
/// segment's traversed window?
fn on_segment_window<T: Real>(seg: &BoundarySegment<T>, p: Point2<T>) -> bool {
    match seg {
        BoundarySegment::Line(s) => {
            let w = (p - s.start()).dot(s.direction().as_vec());
            w >= -s.len() * cast(1e-9) && w <= s.len() * (T::one() + cast(1e-9))
        }
        BoundarySegment::CircularArc(s) => s.locate_on_arc(p).is_some(),
        BoundarySegment::EllipticalArc(s) => s.locate_on_arc(p).is_some(),
    }
}

fn excluded<T: Real>(p: Point2<T>, exclude: &[Point2<T>], radius: T) -> bool {
    exclude.iter().any(|q| p.distance(*q) <= radius)
}

/// Witness intersection point of two segments, ignoring intersections within
/// `exclude_radius` of the listed points (shared junctions of adjacent
/// segments). Returns `None` when the segments are disjoint.
pub(crate) fn segments_intersect<T: Real>(
    a: &BoundarySegment<T>,
    b: &BoundarySegment<T>,
    exclude: &[Point2<T>],
    exclude_radius: T,
) -> Option<Point2<T>> {
    use BoundarySegment as BS;
    let check = |p: Point2<T>| -> Option<Point2<T>> {
        if on_segment_window(a, p)
            && on_segment_window(b, p)
            && !excluded(p, exclude, exclude_radius)
        {
            Some(p)
        } else {
            None
        }
    };

    match (a, b) {
        (BS::Line(la), BS::Line(lb)) => line_line(la, lb, exclude, exclude_radius),
        (BS::Line(l), _) => line_conic(l, b, exclude, exclude_radius),
        (_, BS::Line(l)) => line_conic(l, a, exclude, exclude_radius),
        (BS::CircularArc(ca), BS::CircularArc(cb)) => {
            for p in circle_circle_points(ca, cb) {
                if let Some(w) = check(p) {
                    return Some(w);
                }
            }
            None
        }
        _ => {
            // At least one ellipse: implicit x parametric quartic.
            let implicit = implicit_of(a).expect("conic");
            let param = param_of(b).expect("conic");
            let scale = conic_scale(a).max(conic_scale(b));
            for p in conic_conic_points(&implicit, &param, scale) {
                if let Some(w) = check(p) {
                    return Some(w);
                }
            }
            None
        }
    }
}

fn line_line<T: Real>(
    a: &LineSegment<T>,
    b: &LineSegment<T>,
    exclude: &[Point2<T>],
    exclude_radius: T,
) -> Option<Point2<T>> {
    let ea = a.end() - a.start();
    let eb = b.end() - b.start();
    let denom = ea.cross(eb);
    let scale = a.len() * b.len();
    if denom.abs() <= scale * cast(1e-13) {
        // Parallel: overlapping collinear segments are an intersection.
        let off = (b.start() - a.start()).cross(a.direction().as_vec());
        if off.abs() > a.len().max(b.len()) * cast(1e-9) {
            return None;
        }
        let d = a.direction().as_vec();
        let (w0, w1) = {
            let x = (b.start() - a.start()).dot(d);
            let y = (b.end() - a.start()).dot(d);
            (x.min(y), x.max(y))
        };
        let lo = w0.max(T::zero());
        let hi = w1.min(a.len());
        if hi - lo > exclude_radius {
            let mid = a.start() + a.direction() * ((lo + hi) / cast(2.0));
            if !excluded(mid, exclude, exclude_radius) {
                return Some(mid);
            }
        }
        return None;
    }
    let rel = b.start() - a.start();
    let wa = rel.cross(eb) / denom;
    let wb = rel.cross(ea) / denom;
    let sl = cast::<T>(1e-9);
    if wa >= -sl && wa <= T::one() + sl && wb >= -sl && wb <= T::one() + sl {
        let p = a.start() + ea * wa;
        if !excluded(p, exclude, exclude_radius) {
            return Some(p);
        }
    }
    None
}

fn line_conic<T: Real>(
    l: &LineSegment<T>,
    conic_seg: &BoundarySegment<T>,
    exclude: &[Point2<T>],
    exclude_radius: T,
) -> Option<Point2<T>> {
    let conic = implicit_of(conic_seg).expect("conic segment");
    // Substitute p = p0 + t d into Q: (d M d) t^2 + 2 (d M r) t + Q(p0) = 0
    // with r = p0 - c.
    let d = l.direction().as_vec();
    let r = l.start() - conic.c;
    let qa = d.dot(conic.apply(d));
    let qb = d.dot(conic.apply(r));
    let qc = conic.eval(l.start());
    let disc = qb * qb - qa * qc;
    if disc < T::zero() {
        return None;
    }
    let sq = disc.sqrt();
    let q = if qb >= T::zero() {
        -(qb + sq)
    } else {
        -(qb - sq)
    };
    let cands = if qa.abs() > T::min_positive_value() {
        [q / qa, if q != T::zero() { qc / q } else { T::zero() }]
    } else {
        return None;
    };
    let sl = l.len() * cast(1e-9);
    for t in cands {
        if t >= -sl && t <= l.len() + sl {
            let p = l.start() + l.direction() * t;
            if on_segment_window(conic_seg, p) && !excluded(p, exclude, exclude_radius) {
                return Some(p);
            }
        }
    }
    None
}

fn circle_circle_points<T: Real>(a: &CircularArc<T>, b: &CircularArc<T>) -> Vec<Point2<T>> {
    let mut out = Vec::new();
    let d = b.center() - a.center();
    let dist = d.norm();
    let (ra, rb) = (a.radius(), b.radius());
    let tol_len = (ra + rb) * cast(1e-12);
    if dist <= tol_len {
        if (ra - rb).abs() <= tol_len {
            // Same circle: any shared angular point is an overlap witness;
            // sample the midpoint of b's window.
            let phi = b.start_angle() + b.sweep() / cast(2.0);
            out.push(b.center() + Vec2::new(phi.cos(), phi.sin()) * rb);
        }
        return out;
    }
    if dist > ra + rb + tol_len || dist < (ra - rb).abs() - tol_len {
        return out;
    }
    let x = (dist * dist + ra * ra - rb * rb) / (cast::<T>(2.0) * dist);
    let y2 = ra * ra - x * x;
    let axis = d / dist;
    let perp = Vec2::new(-axis.y, axis.x);
    let base = a.center() + axis * x;
    if y2 <= (ra * ra) * cast(1e-24) {
        out.push(base);
    } else {
        let y = y2.max(T::zero()).sqrt();
        out.push(base + perp * y);
        out.push(base + perp * (-y));
    }
    out
}

/// Intersections of an implicit conic with a parametric one. Substituting the
/// parameterization yields a degree-2 trigonometric polynomial; the tan(t/2)
/// substitution turns it into a quartic. The t = pi point (where the
/// substitution is singular) is checked directly.
fn conic_conic_points<T: Real>(q: &Conic<T>, p: &ParamConic<T>, scale: T) -> Vec<Point2<T>> {
    let d = p.c - q.c;
    let g11 = p.e1.dot(q.apply(p.e1));
    let g12 = p.e1.dot(q.apply(p.e2));
    let g22 = p.e2.dot(q.apply(p.e2));
    let h1 = p.e1.dot(q.apply(d));
    let h2 = p.e2.dot(q.apply(d));
    let k = d.dot(q.apply(d)) - T::one();

    let four = cast::<T>(4.0);
    let two = cast::<T>(2.0);
    let c4 = g11 - two * h1 + k;
    let c3 = four * (h2 - g12);
    let c2 = -two * g11 + four * g22 + two * k;
    let c1 = four * (g12 + h2);
    let c0 = g11 + two * h1 + k;

    let f = |t: T| {
        let (s, c) = t.sin_cos();
        g11 * c * c + two * g12 * c * s + g22 * s * s + two * h1 * c + two * h2 * s + k
    };
    let df = |t: T| {
        let (s, c) = t.sin_cos();
        -two * g11 * c * s + two * g12 * (c * c - s * s) + two * g22 * s * c - two * h1 * s
            + two * h2 * c
    };

    let m_norm = q.m11.abs().max(q.m22.abs()).max(q.m12.abs());
    let f_tol = (m_norm * scale * scale + T::one()) * cast(1e-8);

    let mut out = Vec::new();
    let push_if_root = |t: T, out: &mut Vec<Point2<T>>| {
        let mut t = t;
        for _ in 0..8 {
            let val = f(t);
            let der = df(t);
            if der.abs() <= T::min_positive_value() {
                break;
            }
            let step = val / der;
            if !step.is_finite() {
                break;
            }
            t -= step;
            if step.abs() < cast(1e-15) {
                break;
            }
        }
        if f(t).abs() <= f_tol {
            let pt = p.point(t);
            let dup = out
                .iter()
                .any(|prev: &Point2<T>| prev.distance(pt) <= scale * cast(1e-7));
            if !dup {
                out.push(pt);
            }
        }
    };

    for u in solve_quartic(c4, c3, c2, c1, c0).iter() {
        let t = (u.atan()) * two;
        push_if_root(t, &mut out);
    }
    // t = pi (u at infinity) root: present exactly when the leading
    // coefficient vanishes.
    let lead_scale = c4
        .abs()
        .max(c3.abs())
        .max(c2.abs())
        .max(c1.abs())
        .max(c0.abs());
    if c4.abs() <= lead_scale * cast(1e-9) {
        push_if_root(T::PI(), &mut out);
    }
    out
}
