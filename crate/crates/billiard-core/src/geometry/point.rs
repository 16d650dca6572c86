//! Points, displacement vectors and unit directions in the plane.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::GeometryError;
use crate::scalar::{cast, tol, Real};

/// A point of the plane, in table length units.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

/// A displacement between two points.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Self) -> T {
        (other - self).norm()
    }

    pub fn to_vec(self) -> Vec2<T> {
        Vec2 {
            x: self.x,
            y: self.y,
        }
    }
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z-component of the 3D cross product).
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    /// Normalize, failing on (near-)zero vectors.
    pub fn normalize(self) -> Result<UnitVec2<T>, GeometryError> {
        let n = self.norm();
        if n <= T::epsilon() * cast(16.0) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(UnitVec2(Vec2 {
            x: self.x / n,
            y: self.y / n,
        }))
    }
}

/// A unit direction. Invariant: the norm is within 1e-12 of 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVec2<T>(Vec2<T>);

impl<T: Real> UnitVec2<T> {
    /// Checked constructor; rejects vectors whose norm deviates from 1 by
    /// more than 1e-12 (machine-floored for low precision scalars).
    pub fn new(v: Vec2<T>) -> Result<Self, GeometryError> {
        let n = v.norm();
        if (n - T::one()).abs() > tol(1e-12) {
            return Err(GeometryError::NotUnit);
        }
        Ok(Self(v))
    }

    /// Direction of angle `phi` from the positive x-axis.
    pub fn from_angle(phi: T) -> Self {
        Self(Vec2 {
            x: phi.cos(),
            y: phi.sin(),
        })
    }

    pub fn x(self) -> T {
        self.0.x
    }

    pub fn y(self) -> T {
        self.0.y
    }

    pub fn as_vec(self) -> Vec2<T> {
        self.0
    }

    pub fn dot(self, other: Self) -> T {
        self.0.dot(other.0)
    }

    pub fn cross(self, other: Self) -> T {
        self.0.cross(other.0)
    }

    /// Rotate by +90 degrees (left normal of a tangent).
    pub fn left_normal(self) -> Self {
        Self(Vec2 {
            x: -self.0.y,
            y: self.0.x,
        })
    }

    /// Rotate by -90 degrees (right normal of a tangent).
    pub fn right_normal(self) -> Self {
        Self(Vec2 {
            x: self.0.y,
            y: -self.0.x,
        })
    }

    pub fn angle(self) -> T {
        self.0.y.atan2(self.0.x)
    }
}

impl<T: Real> Neg for UnitVec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(Vec2 {
            x: -self.0.x,
            y: -self.0.y,
        })
    }
}

impl<T: Real> Add<Vec2<T>> for Point2<T> {
    type Output = Point2<T>;
    fn add(self, v: Vec2<T>) -> Point2<T> {
        Point2 {
            x: self.x + v.x,
            y: self.y + v.y,
        }
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Vec2<T>;
    fn sub(self, other: Point2<T>) -> Vec2<T> {
        Vec2 {
            x: self.x - other.x,
            y: self.y - other.y,
        }
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Vec2<T>;
    fn add(self, other: Vec2<T>) -> Vec2<T> {
        Vec2 {
            x: self.x + other.x,
            y: self.y + other.y,
        }
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Vec2<T>;
    fn sub(self, other: Vec2<T>) -> Vec2<T> {
        Vec2 {
            x: self.x - other.x,
            y: self.y - other.y,
        }
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Vec2<T>;
    fn mul(self, k: T) -> Vec2<T> {
        Vec2 {
            x: self.x * k,
            y: self.y * k,
        }
    }
}

impl<T: Real> Div<T> for Vec2<T> {
    type Output = Vec2<T>;
    fn div(self, k: T) -> Vec2<T> {
        Vec2 {
            x: self.x / k,
            y: self.y / k,
        }
    }
}

impl<T: Real> Neg for Vec2<T> {
    type Output = Vec2<T>;
    fn neg(self) -> Vec2<T> {
        Vec2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl<T: Real> Mul<T> for UnitVec2<T> {
    type Output = Vec2<T>;
    fn mul(self, k: T) -> Vec2<T> {
        self.0 * k
    }
}

/// Axis-aligned bounding box, used for table diameter estimates.
#[derive(Clone, Copy, Debug)]
pub struct Aabb<T> {
    pub min: Point2<T>,
    pub max: Point2<T>,
}

impl<T: Real> Aabb<T> {
    pub fn of_point(p: Point2<T>) -> Self {
        Self { min: p, max: p }
    }

    pub fn include(&mut self, p: Point2<T>) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn merge(&mut self, other: &Aabb<T>) {
        self.include(other.min);
        self.include(other.max);
    }

    /// Diagonal length of the box.
    pub fn diagonal(&self) -> T {
        (self.max - self.min).norm()
    }
}
