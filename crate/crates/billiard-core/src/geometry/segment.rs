//! Boundary segments: lines, circular arcs and elliptical arcs, all with an
//! arclength parameterization.

use crate::error::GeometryError;
use crate::scalar::{cast, tol, Real};

use super::point::{Aabb, Point2, UnitVec2, Vec2};

/// Number of panels in the cached cumulative arclength table of an
/// elliptical arc. The table is built once at construction; lookups and the
/// Newton inversion are O(1) afterwards.
pub const ARCLENGTH_PANELS: usize = 1024;

/// 8-point Gauss-Legendre rule on [-1, 1].
const GL8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (-0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
];

fn gl8<T: Real>(lo: T, hi: T, f: impl Fn(T) -> T) -> T {
    let half = (hi - lo) / cast(2.0);
    let mid = (hi + lo) / cast(2.0);
    let mut acc = T::zero();
    for (x, w) in GL8 {
        acc += cast::<T>(w) * f(mid + half * cast(x));
    }
    acc * half
}

/// A straight boundary piece from `p0` to `p1`.
#[derive(Clone, Debug)]
pub struct LineSegment<T> {
    p0: Point2<T>,
    p1: Point2<T>,
    dir: UnitVec2<T>,
    len: T,
}

impl<T: Real> LineSegment<T> {
    pub fn new(p0: Point2<T>, p1: Point2<T>) -> Result<Self, GeometryError> {
        let d = p1 - p0;
        let len = d.norm();
        let dir = d
            .normalize()
            .map_err(|_| GeometryError::DegenerateSegment("line endpoints coincide".into()))?;
        Ok(Self { p0, p1, dir, len })
    }

    pub fn start(&self) -> Point2<T> {
        self.p0
    }

    pub fn end(&self) -> Point2<T> {
        self.p1
    }

    pub fn direction(&self) -> UnitVec2<T> {
        self.dir
    }

    pub fn len(&self) -> T {
        self.len
    }
}

/// A circular arc, traversed from `start_angle` over a signed `sweep`.
#[derive(Clone, Debug)]
pub struct CircularArc<T> {
    center: Point2<T>,
    radius: T,
    start_angle: T,
    sweep: T,
    len: T,
}

impl<T: Real> CircularArc<T> {
    pub fn new(
        center: Point2<T>,
        radius: T,
        start_angle: T,
        sweep: T,
    ) -> Result<Self, GeometryError> {
        if !(radius > T::zero()) {
            return Err(GeometryError::DegenerateSegment(
                "circular arc radius must be positive".into(),
            ));
        }
        if sweep == T::zero() {
            return Err(GeometryError::DegenerateSegment(
                "circular arc sweep must be nonzero".into(),
            ));
        }
        if sweep.abs() > T::TAU() * (T::one() + tol(1e-12)) {
            return Err(GeometryError::DegenerateSegment(
                "circular arc sweep exceeds a full turn".into(),
            ));
        }
        let len = radius * sweep.abs();
        Ok(Self {
            center,
            radius,
            start_angle,
            sweep,
            len,
        })
    }

    /// Full counter-clockwise circle with the reference point at angle 0.
    pub fn full_circle(center: Point2<T>, radius: T) -> Result<Self, GeometryError> {
        Self::new(center, radius, T::zero(), T::TAU())
    }

    pub fn center(&self) -> Point2<T> {
        self.center
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn start_angle(&self) -> T {
        self.start_angle
    }

    pub fn sweep(&self) -> T {
        self.sweep
    }

    pub fn len(&self) -> T {
        self.len
    }

    fn orientation(&self) -> T {
        if self.sweep >= T::zero() {
            T::one()
        } else {
            -T::one()
        }
    }

    fn point_tangent_at_angle(&self, phi: T) -> (Point2<T>, UnitVec2<T>) {
        let (sin, cos) = phi.sin_cos();
        let p = self.center + Vec2::new(cos, sin) * self.radius;
        let sgn = self.orientation();
        let t = Vec2::new(-sin * sgn, cos * sgn)
            .normalize()
            .expect("unit tangent");
        (p, t)
    }

    fn point_and_tangent(&self, u: T) -> (Point2<T>, UnitVec2<T>) {
        let phi = self.start_angle + self.orientation() * u / self.radius;
        self.point_tangent_at_angle(phi)
    }

    /// Local arclength of a point assumed to lie on the full circle, or
    /// `None` when its angle falls outside the arc's angular window (with a
    /// small slack so hits at junctions are not dropped).
    pub(crate) fn locate_on_arc(&self, p: Point2<T>) -> Option<T> {
        let d = p - self.center;
        let phi = d.y.atan2(d.x);
        let delta =
            crate::scalar::rem_euclid((phi - self.start_angle) * self.orientation(), T::TAU());
        let span = self.sweep.abs();
        let slack = tol::<T>(1e-9);
        if delta <= span + slack {
            return Some((delta.min(span) * self.radius).min(self.len));
        }
        // A point at the seam can normalize to just below a full turn.
        if delta >= T::TAU() - slack {
            return Some(T::zero());
        }
        None
    }
}

/// An elliptical arc: semi-axes `a >= b > 0`, axis rotation, start parameter
/// and signed parameter sweep. Carries the cached cumulative-arclength table.
#[derive(Clone, Debug)]
pub struct EllipticalArc<T> {
    center: Point2<T>,
    a: T,
    b: T,
    rotation: T,
    rot_cos: T,
    rot_sin: T,
    t0: T,
    sweep: T,
    /// Cumulative arclength at panel boundaries of the forward parameter
    /// v in [0, |sweep|]; length ARCLENGTH_PANELS + 1, strictly increasing.
    cum: Vec<T>,
    len: T,
}

impl<T: Real> EllipticalArc<T> {
    pub fn new(
        center: Point2<T>,
        a: T,
        b: T,
        rotation: T,
        t0: T,
        sweep: T,
    ) -> Result<Self, GeometryError> {
        if !(b > T::zero()) || !(a >= b) {
            return Err(GeometryError::DegenerateSegment(
                "elliptical arc requires semi-axes a >= b > 0".into(),
            ));
        }
        if sweep == T::zero() {
            return Err(GeometryError::DegenerateSegment(
                "elliptical arc sweep must be nonzero".into(),
            ));
        }
        if sweep.abs() > T::TAU() * (T::one() + tol(1e-12)) {
            return Err(GeometryError::DegenerateSegment(
                "elliptical arc sweep exceeds a full turn".into(),
            ));
        }
        let (rot_sin, rot_cos) = rotation.sin_cos();
        let mut arc = Self {
            center,
            a,
            b,
            rotation,
            rot_cos,
            rot_sin,
            t0,
            sweep,
            cum: Vec::new(),
            len: T::zero(),
        };
        arc.build_table()?;
        Ok(arc)
    }

    /// Full counter-clockwise ellipse with the reference point at parameter 0.
    pub fn full_ellipse(center: Point2<T>, a: T, b: T, rotation: T) -> Result<Self, GeometryError> {
        Self::new(center, a, b, rotation, T::zero(), T::TAU())
    }

    fn build_table(&mut self) -> Result<(), GeometryError> {
        let span = self.sweep.abs();
        let n = ARCLENGTH_PANELS;
        let dv = span / cast(n as f64);
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(T::zero());
        let mut acc = T::zero();
        for k in 0..n {
            let lo = dv * cast(k as f64);
            let hi = if k + 1 == n {
                span
            } else {
                dv * cast((k + 1) as f64)
            };
            let panel = gl8(lo, hi, |v| self.speed_fwd(v));
            if !(panel > T::zero()) {
                return Err(GeometryError::BadArclengthTable);
            }
            acc += panel;
            cum.push(acc);
        }
        self.len = acc;
        self.cum = cum;
        Ok(())
    }

    pub fn center(&self) -> Point2<T> {
        self.center
    }

    pub fn semi_axes(&self) -> (T, T) {
        (self.a, self.b)
    }

    pub fn rotation(&self) -> T {
        self.rotation
    }

    pub fn start_param(&self) -> T {
        self.t0
    }

    pub fn sweep(&self) -> T {
        self.sweep
    }

    pub fn len(&self) -> T {
        self.len
    }

    /// Cumulative arclength table (panel boundaries of the forward parameter).
    pub fn arclength_table(&self) -> &[T] {
        &self.cum
    }

    fn orientation(&self) -> T {
        if self.sweep >= T::zero() {
            T::one()
        } else {
            -T::one()
        }
    }

    /// World point from ellipse-frame coordinates.
    pub(crate) fn world_of_local(&self, l: Vec2<T>) -> Point2<T> {
        self.center
            + Vec2::new(
                l.x * self.rot_cos - l.y * self.rot_sin,
                l.x * self.rot_sin + l.y * self.rot_cos,
            )
    }

    /// Ellipse-frame coordinates of a world point.
    pub(crate) fn local_of_world(&self, p: Point2<T>) -> Vec2<T> {
        let d = p - self.center;
        Vec2::new(
            d.x * self.rot_cos + d.y * self.rot_sin,
            -d.x * self.rot_sin + d.y * self.rot_cos,
        )
    }

    /// Rotate a world direction into the ellipse frame.
    pub(crate) fn local_dir(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2::new(
            v.x * self.rot_cos + v.y * self.rot_sin,
            -v.x * self.rot_sin + v.y * self.rot_cos,
        )
    }

    pub(crate) fn point_at_param(&self, t: T) -> Point2<T> {
        let (sin, cos) = t.sin_cos();
        self.world_of_local(Vec2::new(self.a * cos, self.b * sin))
    }

    fn velocity_at_param(&self, t: T) -> Vec2<T> {
        let (sin, cos) = t.sin_cos();
        let l = Vec2::new(-self.a * sin, self.b * cos);
        Vec2::new(
            l.x * self.rot_cos - l.y * self.rot_sin,
            l.x * self.rot_sin + l.y * self.rot_cos,
        )
    }

    fn param_of_fwd(&self, v: T) -> T {
        self.t0 + self.orientation() * v
    }

    /// |dP/dt| at forward parameter offset `v`.
    fn speed_fwd(&self, v: T) -> T {
        let t = self.param_of_fwd(v);
        let (sin, cos) = t.sin_cos();
        ((self.a * sin).powi(2) + (self.b * cos).powi(2)).sqrt()
    }

    /// Arclength from the arc start to forward parameter offset `v`.
    pub(crate) fn arc_from_fwd(&self, v: T) -> T {
        let span = self.sweep.abs();
        let v = v.max(T::zero()).min(span);
        let n = ARCLENGTH_PANELS;
        let dv = span / cast(n as f64);
        let k = (v / dv).to_usize().unwrap_or(0).min(n - 1);
        let lo = dv * cast(k as f64);
        self.cum[k] + gl8(lo, v, |w| self.speed_fwd(w))
    }

    /// Invert the arclength table: forward parameter offset with
    /// `arc_from_fwd(v) == u` to high accuracy. Table bracket, then Newton
    /// with a bisection fallback.
    fn fwd_from_arc(&self, u: T) -> T {
        let span = self.sweep.abs();
        if u <= T::zero() {
            return T::zero();
        }
        if u >= self.len {
            return span;
        }
        let k = self.cum.partition_point(|c| *c <= u).saturating_sub(1);
        let n = ARCLENGTH_PANELS;
        let k = k.min(n - 1);
        let dv = span / cast(n as f64);
        let mut lo = dv * cast(k as f64);
        let mut hi = if k + 1 == n {
            span
        } else {
            dv * cast((k + 1) as f64)
        };
        // Linear init inside the bracket.
        let c_lo = self.cum[k];
        let c_hi = self.cum[k + 1];
        let mut v = lo + (hi - lo) * ((u - c_lo) / (c_hi - c_lo));
        let target = self.len * tol(1e-13);
        for _ in 0..64 {
            let g = self.arc_from_fwd(v) - u;
            if g.abs() <= target {
                break;
            }
            if g > T::zero() {
                hi = v;
            } else {
                lo = v;
            }
            let dg = self.speed_fwd(v);
            let mut next = v - g / dg;
            if !(next > lo && next < hi) {
                next = (lo + hi) / cast(2.0);
            }
            v = next;
        }
        v
    }

    fn point_and_tangent(&self, u: T) -> (Point2<T>, UnitVec2<T>) {
        let v = self.fwd_from_arc(u);
        let t = self.param_of_fwd(v);
        let p = self.point_at_param(t);
        let vel = self.velocity_at_param(t) * self.orientation();
        (p, vel.normalize().expect("nonzero ellipse velocity"))
    }

    /// Local arclength of a point assumed to lie on the full ellipse, or
    /// `None` if its parameter falls outside the arc's window.
    pub(crate) fn locate_on_arc(&self, p: Point2<T>) -> Option<T> {
        let l = self.local_of_world(p);
        let t = (l.y / self.b).atan2(l.x / self.a);
        let delta = crate::scalar::rem_euclid((t - self.t0) * self.orientation(), T::TAU());
        let span = self.sweep.abs();
        let slack = tol::<T>(1e-9);
        if delta <= span + slack {
            return Some(self.arc_from_fwd(delta.min(span)));
        }
        if delta >= T::TAU() - slack {
            return Some(T::zero());
        }
        None
    }
}

/// A smooth boundary piece of a billiard table.
#[derive(Clone, Debug)]
pub enum BoundarySegment<T> {
    Line(LineSegment<T>),
    CircularArc(CircularArc<T>),
    EllipticalArc(EllipticalArc<T>),
}

impl<T: Real> BoundarySegment<T> {
    pub fn line(p0: Point2<T>, p1: Point2<T>) -> Result<Self, GeometryError> {
        Ok(Self::Line(LineSegment::new(p0, p1)?))
    }

    pub fn circular_arc(
        center: Point2<T>,
        radius: T,
        start_angle: T,
        sweep: T,
    ) -> Result<Self, GeometryError> {
        Ok(Self::CircularArc(CircularArc::new(
            center,
            radius,
            start_angle,
            sweep,
        )?))
    }

    pub fn elliptical_arc(
        center: Point2<T>,
        a: T,
        b: T,
        rotation: T,
        start_param: T,
        sweep: T,
    ) -> Result<Self, GeometryError> {
        Ok(Self::EllipticalArc(EllipticalArc::new(
            center,
            a,
            b,
            rotation,
            start_param,
            sweep,
        )?))
    }

    /// Arclength of the segment. Exact for lines and circular arcs,
    /// quadrature-backed (relative error well below 1e-10) for elliptical arcs.
    pub fn length(&self) -> T {
        match self {
            Self::Line(s) => s.len(),
            Self::CircularArc(s) => s.len(),
            Self::EllipticalArc(s) => s.len(),
        }
    }

    /// Point and unit forward tangent at arclength `u` from the segment start.
    ///
    /// `u` must lie in `[0, length]` up to a small slack (values within the
    /// slack are clamped); anything further is a contract violation.
    pub fn point_at_arclength(&self, u: T) -> Result<(Point2<T>, UnitVec2<T>), GeometryError> {
        let len = self.length();
        let slack = len * tol(1e-9);
        if u < -slack || u > len + slack {
            return Err(GeometryError::ArclengthOutOfRange {
                u: u.to_f64().unwrap_or(f64::NAN),
                len: len.to_f64().unwrap_or(f64::NAN),
            });
        }
        let u = u.max(T::zero()).min(len);
        Ok(match self {
            Self::Line(s) => (s.start() + s.direction() * u, s.direction()),
            Self::CircularArc(s) => s.point_and_tangent(u),
            Self::EllipticalArc(s) => s.point_and_tangent(u),
        })
    }

    pub fn start_point(&self) -> Point2<T> {
        match self {
            Self::Line(s) => s.start(),
            Self::CircularArc(s) => s.point_and_tangent(T::zero()).0,
            Self::EllipticalArc(s) => s.point_at_param(s.start_param()),
        }
    }

    pub fn end_point(&self) -> Point2<T> {
        match self {
            Self::Line(s) => s.end(),
            Self::CircularArc(s) => s.point_and_tangent(s.len()).0,
            Self::EllipticalArc(s) => s.point_at_param(s.start_param() + s.sweep()),
        }
    }

    pub fn start_tangent(&self) -> UnitVec2<T> {
        match self {
            Self::Line(s) => s.direction(),
            Self::CircularArc(s) => s.point_and_tangent(T::zero()).1,
            Self::EllipticalArc(s) => s.point_and_tangent(T::zero()).1,
        }
    }

    pub fn end_tangent(&self) -> UnitVec2<T> {
        match self {
            Self::Line(s) => s.direction(),
            Self::CircularArc(s) => s.point_and_tangent(s.len()).1,
            Self::EllipticalArc(s) => s.point_and_tangent(s.len()).1,
        }
    }

    /// Bounding box (exact for all three segment kinds).
    pub fn bbox(&self) -> Aabb<T> {
        let mut bb = Aabb::of_point(self.start_point());
        bb.include(self.end_point());
        match self {
            Self::Line(_) => {}
            Self::CircularArc(s) => {
                for q in 0..4 {
                    let phi = T::FRAC_PI_2() * cast(q as f64);
                    let p = s.center + Vec2::new(phi.cos(), phi.sin()) * s.radius;
                    if s.locate_on_arc(p).is_some() {
                        bb.include(p);
                    }
                }
            }
            Self::EllipticalArc(s) => {
                let tx = (-s.b * s.rot_sin).atan2(s.a * s.rot_cos);
                let ty = (s.b * s.rot_cos).atan2(s.a * s.rot_sin);
                for t in [tx, tx + T::PI(), ty, ty + T::PI()] {
                    let p = s.point_at_param(t);
                    if s.locate_on_arc(p).is_some() {
                        bb.include(p);
                    }
                }
            }
        }
        bb
    }

    /// Contribution of this segment to the curve integral
    /// `1/2 * closed-path integral of (x dy - y dx)` (the signed enclosed area
    /// when summed over a closed chain).
    pub fn area_contribution(&self) -> T {
        let half = T::one() / cast(2.0);
        match self {
            Self::Line(s) => half * s.start().to_vec().cross(s.end().to_vec()),
            Self::CircularArc(s) => {
                let dp = self.end_point() - self.start_point();
                half * (s.center().to_vec().cross(dp) + s.radius() * s.radius() * s.sweep())
            }
            Self::EllipticalArc(s) => {
                let dp = self.end_point() - self.start_point();
                let (a, b) = s.semi_axes();
                half * (s.center().to_vec().cross(dp) + a * b * s.sweep())
            }
        }
    }
}
