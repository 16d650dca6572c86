//! The billiard map in boundary coordinates, its inverse, and the canonical
//! time-reversal involutions.
//!
//! A phase point `z = (component, s, theta)` sits at arclength `s` on a
//! boundary component and leaves it at angle `theta`, measured from the
//! forward tangent toward the into-domain normal. With that convention
//! `theta` lives in the open interval `(0, pi)` on outer wall and obstacles
//! alike, and the angle flip `sigma(s, theta) = (s, pi - theta)` is the same
//! formula on every component.

use crate::domain::Domain;
use crate::error::PhaseError;
use crate::geometry::point::{Point2, UnitVec2};
use crate::scalar::{cast, tol, Real};

/// Relative (to the table diameter) distance below which a hit near a corner
/// junction is declared singular.
const CORNER_EPS_REL: f64 = 1e-9;
/// Threshold on `sin(theta')` below which the outgoing state is tangential.
const TANGENT_EPS: f64 = 1e-12;
/// Relative `t_min` passed to the ray kernel so the launch footpoint is not
/// re-hit.
const T_MIN_REL: f64 = 1e-10;

/// A point of the billiard phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint<T> {
    /// Boundary component index (0 = outer wall).
    pub component: usize,
    /// Arclength coordinate in `[0, perimeter(component))`.
    pub s: T,
    /// Outgoing angle in `(0, pi)`.
    pub theta: T,
}

impl<T: Real> PhasePoint<T> {
    /// Checked constructor: validates the component index and the angle
    /// range, and reduces `s` mod the component perimeter.
    pub fn new(dom: &Domain<T>, component: usize, s: T, theta: T) -> Result<Self, PhaseError> {
        if !(theta > T::zero() && theta < T::PI()) {
            return Err(PhaseError::ThetaOutOfRange {
                theta: theta.to_f64().unwrap_or(f64::NAN),
            });
        }
        let comp = dom.component(component)?;
        Ok(Self {
            component,
            s: comp.reduce(s),
            theta,
        })
    }
}

/// Why the map is undefined at a phase point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularReason<T> {
    /// The chord lands within tolerance of a tangent-discontinuous junction.
    CornerHit { component: usize, s: T },
    /// The outgoing angle collapses onto the tangent line.
    Tangential { component: usize, s: T },
    /// The ray escaped every boundary segment (only possible for corrupted
    /// geometry).
    NoIntersection,
}

/// Result of one application of the billiard map.
#[derive(Clone, Copy, Debug)]
pub enum StepOutcome<T> {
    Regular {
        next: PhasePoint<T>,
        chord_length: T,
    },
    Singular(SingularReason<T>),
}

impl<T: Real> StepOutcome<T> {
    pub fn is_regular(&self) -> bool {
        matches!(self, Self::Regular { .. })
    }

    /// The next phase point of a regular step.
    pub fn regular(self) -> Option<(PhasePoint<T>, T)> {
        match self {
            Self::Regular { next, chord_length } => Some((next, chord_length)),
            Self::Singular(_) => None,
        }
    }
}

/// Outgoing ray direction of a phase point:
/// `cos(theta) * tangent + sin(theta) * inward_normal`. Points into the
/// domain for every `theta` in `(0, pi)`.
pub fn direction_of<T: Real>(dom: &Domain<T>, z: &PhasePoint<T>) -> UnitVec2<T> {
    let frame = dom
        .locate(z.component, z.s)
        .expect("phase point valid for this domain");
    let v = frame.tangent * z.theta.cos() + frame.inward_normal * z.theta.sin();
    v.normalize().expect("direction of a valid phase point")
}

/// Footpoint of a phase point on the table boundary.
pub fn footpoint<T: Real>(dom: &Domain<T>, z: &PhasePoint<T>) -> Point2<T> {
    dom.locate(z.component, z.s)
        .expect("phase point valid for this domain")
        .point
}

/// One application of the billiard map.
///
/// Casts the outgoing ray, takes the first boundary hit past
/// `1e-10 * diameter`, and reflects: the new angle is measured from the
/// forward tangent at the landing point toward the inward normal. Hits
/// within `1e-9 * diameter` of a true corner and landings with
/// `sin(theta') < 1e-12` are reported as singular rather than resolved.
pub fn step<T: Real>(dom: &Domain<T>, z: &PhasePoint<T>) -> StepOutcome<T> {
    let frame = dom
        .locate(z.component, z.s)
        .expect("phase point valid for this domain");
    let dir = (frame.tangent * z.theta.cos() + frame.inward_normal * z.theta.sin())
        .normalize()
        .expect("outgoing direction");

    let t_min = dom.diameter() * tol(T_MIN_REL);
    let hit = match dom.first_hit(frame.point, dir, t_min) {
        Some(h) => h,
        None => return StepOutcome::Singular(SingularReason::NoIntersection),
    };

    let corner_eps = dom.diameter() * tol(CORNER_EPS_REL);
    if let Some(d) = dom.corner_distance(hit.component, hit.s) {
        if d < corner_eps {
            return StepOutcome::Singular(SingularReason::CornerHit {
                component: hit.component,
                s: hit.s,
            });
        }
    }

    let land = dom.locate(hit.component, hit.s).expect("hit frame");
    let d = dir.as_vec();
    let normal_component = d.dot(land.inward_normal.as_vec());
    // Mirror the incoming direction across the tangent line.
    let reflected = d - land.inward_normal * (cast::<T>(2.0) * normal_component);
    let sin_theta = reflected.dot(land.inward_normal.as_vec());
    let cos_theta = reflected.dot(land.tangent.as_vec());
    if sin_theta < tol(TANGENT_EPS) {
        return StepOutcome::Singular(SingularReason::Tangential {
            component: hit.component,
            s: hit.s,
        });
    }
    let theta = sin_theta.atan2(cos_theta);
    StepOutcome::Regular {
        next: PhasePoint {
            component: hit.component,
            s: hit.s,
            theta,
        },
        chord_length: hit.t,
    }
}

/// The angle-flip involution `sigma(s, theta) = (s, pi - theta)`.
pub fn sigma<T: Real>(z: &PhasePoint<T>) -> PhasePoint<T> {
    PhasePoint {
        component: z.component,
        s: z.s,
        theta: T::PI() - z.theta,
    }
}

/// The chord-reversal involution, realized as `sigma` after one step of the
/// map (`phi = sigma . tau` forces `tau = sigma . phi`). The footpoint of
/// `tau(z)` is the far end of the chord of `z` and its ray is the reversed
/// chord.
pub fn tau<T: Real>(dom: &Domain<T>, z: &PhasePoint<T>) -> StepOutcome<T> {
    match step(dom, z) {
        StepOutcome::Regular { next, chord_length } => StepOutcome::Regular {
            next: sigma(&next),
            chord_length,
        },
        s @ StepOutcome::Singular(_) => s,
    }
}

/// The inverse billiard map, via the conjugation `sigma . phi . sigma`.
pub fn inverse_step<T: Real>(dom: &Domain<T>, z: &PhasePoint<T>) -> StepOutcome<T> {
    match step(dom, &sigma(z)) {
        StepOutcome::Regular { next, chord_length } => StepOutcome::Regular {
            next: sigma(&next),
            chord_length,
        },
        s @ StepOutcome::Singular(_) => s,
    }
}

/// Why an orbit stopped.
#[derive(Clone, Copy, Debug)]
pub enum Termination<T> {
    Completed,
    Singular(SingularReason<T>),
}

/// Summary of an orbit run.
#[derive(Clone, Copy, Debug)]
pub struct OrbitSummary<T> {
    pub steps_completed: usize,
    pub termination: Termination<T>,
    /// The last phase point reached.
    pub last: PhasePoint<T>,
}

impl<T> OrbitSummary<T> {
    pub fn completed(&self) -> bool {
        matches!(self.termination, Termination::Completed)
    }
}

/// Iterate the map up to `n` steps, invoking the visitor with
/// `(k, z_k, z_{k+1}, chord_length)` for every regular step. Stops early on a
/// singular outcome.
pub fn orbit<T: Real>(
    dom: &Domain<T>,
    z: &PhasePoint<T>,
    n: usize,
    mut visit: impl FnMut(usize, &PhasePoint<T>, &PhasePoint<T>, T),
) -> OrbitSummary<T> {
    let mut cur = *z;
    for k in 0..n {
        match step(dom, &cur) {
            StepOutcome::Regular { next, chord_length } => {
                visit(k, &cur, &next, chord_length);
                cur = next;
            }
            StepOutcome::Singular(reason) => {
                return OrbitSummary {
                    steps_completed: k,
                    termination: Termination::Singular(reason),
                    last: cur,
                };
            }
        }
    }
    OrbitSummary {
        steps_completed: n,
        termination: Termination::Completed,
        last: cur,
    }
}
