//! Billiard tables: closed boundary components assembled into validated
//! domains, with the global `(component, arclength)` coordinate system.

pub mod builtin;

use crate::error::DomainError;
use crate::geometry::intersect::segments_intersect;
use crate::geometry::point::{Aabb, Point2, UnitVec2};
use crate::geometry::ray::{ray_hits_for_parity, ray_intersect, ParityHit};
use crate::geometry::segment::BoundarySegment;
use crate::scalar::{cast, rem_euclid, tol, Real};

/// Tangent turn (radians) above which a junction counts as a corner.
const CORNER_TURN: f64 = 1e-9;

/// One closed boundary component: an ordered, closed, simple,
/// counter-clockwise chain of segments with cumulative arclength offsets.
#[derive(Clone, Debug)]
pub struct BoundaryComponent<T: Real> {
    segments: Vec<BoundarySegment<T>>,
    /// Arclength offset of each segment start; `offsets[0] == 0`.
    offsets: Vec<T>,
    perimeter: T,
    signed_area: T,
    /// Arclength positions of tangent-discontinuous junctions.
    corners: Vec<T>,
    /// Per segment: does the left normal of the forward tangent point into
    /// the domain? Finalized by [`Domain::build`].
    inward_left: Vec<bool>,
    bbox: Aabb<T>,
}

impl<T: Real> BoundaryComponent<T> {
    /// Validate and index a closed chain of segments.
    ///
    /// Checks: chain closure (cyclically, within 1e-9 of the component size),
    /// simplicity (no intersections between segments away from shared
    /// junctions) and counter-clockwise orientation.
    pub fn new(segments: Vec<BoundarySegment<T>>) -> Result<Self, DomainError> {
        Self::new_indexed(segments, 0)
    }

    fn new_indexed(
        segments: Vec<BoundarySegment<T>>,
        component: usize,
    ) -> Result<Self, DomainError> {
        if segments.is_empty() {
            return Err(DomainError::NoComponents);
        }
        let mut bbox = segments[0].bbox();
        for seg in &segments[1..] {
            bbox.merge(&seg.bbox());
        }
        let scale = bbox.diagonal();

        // Closure.
        let n = segments.len();
        let close_tol = scale * tol(1e-9);
        for i in 0..n {
            let gap = segments[i]
                .end_point()
                .distance(segments[(i + 1) % n].start_point());
            if gap > close_tol {
                return Err(DomainError::OpenChain {
                    component,
                    segment: i,
                    gap: gap.to_f64().unwrap_or(f64::NAN),
                });
            }
        }

        // Simplicity: non-adjacent pairs must not intersect at all; adjacent
        // pairs only at the shared junction(s).
        let exclude_radius = scale * cast(1e-7);
        for i in 0..n {
            for j in (i + 1)..n {
                let mut exclude = Vec::new();
                if j == i + 1 {
                    exclude.push(segments[i].end_point());
                }
                if i == 0 && j == n - 1 {
                    exclude.push(segments[j].end_point());
                }
                if segments_intersect(&segments[i], &segments[j], &exclude, exclude_radius)
                    .is_some()
                {
                    return Err(DomainError::SelfIntersecting {
                        component,
                        first: i,
                        second: j,
                    });
                }
            }
        }

        // Orientation.
        let signed_area: T = segments.iter().map(|s| s.area_contribution()).sum();
        if !(signed_area > T::zero()) {
            return Err(DomainError::NotCounterClockwise {
                component,
                area: signed_area.to_f64().unwrap_or(f64::NAN),
            });
        }

        // Arclength index.
        let mut offsets = Vec::with_capacity(n);
        let mut acc = T::zero();
        for seg in &segments {
            offsets.push(acc);
            acc += seg.length();
        }
        let perimeter = acc;

        // Corner junctions (tangent turn above threshold). The junction
        // after segment i sits at the start of segment (i+1) % n.
        let mut corners = Vec::new();
        for i in 0..n {
            let t_out = segments[i].end_tangent();
            let t_in = segments[(i + 1) % n].start_tangent();
            let turn = t_out.cross(t_in).atan2(t_out.dot(t_in)).abs();
            if turn > tol(CORNER_TURN) {
                corners.push(offsets[(i + 1) % n]);
            }
        }

        Ok(Self {
            segments,
            offsets,
            perimeter,
            signed_area,
            corners,
            inward_left: vec![true; n],
            bbox,
        })
    }

    pub fn segments(&self) -> &[BoundarySegment<T>] {
        &self.segments
    }

    pub fn perimeter(&self) -> T {
        self.perimeter
    }

    pub fn signed_area(&self) -> T {
        self.signed_area
    }

    /// Arclength positions of the true corners of this component.
    pub fn corners(&self) -> &[T] {
        &self.corners
    }

    /// Reduce an arclength coordinate into `[0, perimeter)`.
    pub fn reduce(&self, s: T) -> T {
        rem_euclid(s, self.perimeter)
    }

    fn segment_at(&self, s: T) -> (usize, T) {
        let idx = self.offsets.partition_point(|o| *o <= s).saturating_sub(1);
        (idx, s - self.offsets[idx])
    }

    /// Point-in-region parity test against this single closed curve.
    ///
    /// Casts rays in a deterministic direction sweep and retries whenever a
    /// candidate intersection is marginal (grazing, junction-adjacent, or
    /// double-reported by adjacent segments at the same ray parameter).
    pub(crate) fn contains_point(&self, q: Point2<T>) -> bool {
        let mut hits: Vec<ParityHit<T>> = Vec::new();
        let golden = cast::<T>(2.399_963_229_728_653);
        let t_dup = self.bbox.diagonal() * cast(1e-9);
        for k in 0..48u32 {
            let dir = UnitVec2::from_angle(cast::<T>(0.271_828) + golden * cast(k as f64));
            hits.clear();
            for seg in &self.segments {
                ray_hits_for_parity(seg, q, dir, &mut hits);
            }
            let mut marginal = hits.iter().any(|h| h.marginal);
            if !marginal {
                let mut ts: Vec<T> = hits.iter().map(|h| h.t).collect();
                ts.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite ray parameter"));
                marginal = ts.windows(2).any(|w| w[1] - w[0] <= t_dup);
            }
            if !marginal {
                return hits.len() % 2 == 1;
            }
        }
        // Every direction grazed something; fall back to the last parity.
        hits.len() % 2 == 1
    }
}

/// Geometric frame of a boundary point: position, forward tangent, and the
/// unit normal pointing into the domain.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryFrame<T> {
    pub point: Point2<T>,
    pub tangent: UnitVec2<T>,
    pub inward_normal: UnitVec2<T>,
}

/// First boundary intersection of a ray across the whole domain.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryHit<T> {
    pub component: usize,
    pub segment: usize,
    /// Global arclength on the component, already reduced mod perimeter.
    pub s: T,
    pub point: Point2<T>,
    pub t: T,
}

/// A validated billiard table: component 0 is the outer wall, components
/// `1..q` are obstacles. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Domain<T: Real> {
    components: Vec<BoundaryComponent<T>>,
    total_perimeter: T,
    diameter: T,
}

impl<T: Real> Domain<T> {
    /// Assemble and validate a domain from closed components (outer wall
    /// first). Validates obstacle containment and pairwise disjointness and
    /// determines the into-domain normal side of every segment by a
    /// probe-point parity test.
    pub fn build(components: Vec<BoundaryComponent<T>>) -> Result<Self, DomainError> {
        if components.is_empty() {
            return Err(DomainError::NoComponents);
        }
        let mut bbox = components[0].bbox;
        for c in &components[1..] {
            bbox.merge(&c.bbox);
        }
        let diameter = bbox.diagonal();
        let q = components.len();

        // Cross-component disjointness.
        let exclude: [Point2<T>; 0] = [];
        for a in 0..q {
            for b in (a + 1)..q {
                for sa in &components[a].segments {
                    for sb in &components[b].segments {
                        if segments_intersect(sa, sb, &exclude, diameter * cast(1e-9)).is_some() {
                            return if a == 0 {
                                Err(DomainError::ObstacleOutsideOuter { component: b })
                            } else {
                                Err(DomainError::OverlappingObstacles {
                                    first: a,
                                    second: b,
                                })
                            };
                        }
                    }
                }
            }
        }

        // Obstacles strictly inside the outer wall, pairwise non-nested.
        for b in 1..q {
            for seg in &components[b].segments {
                if !components[0].contains_point(seg.start_point()) {
                    return Err(DomainError::ObstacleOutsideOuter { component: b });
                }
            }
            for a in 1..q {
                if a == b {
                    continue;
                }
                for seg in &components[b].segments {
                    if components[a].contains_point(seg.start_point()) {
                        return Err(DomainError::OverlappingObstacles {
                            first: a.min(b),
                            second: a.max(b),
                        });
                    }
                }
            }
        }

        let total_perimeter = components.iter().map(|c| c.perimeter).sum();
        let mut dom = Self {
            components,
            total_perimeter,
            diameter,
        };

        // Inward sides: probe on both sides of each segment midpoint and keep
        // the side that lands inside the domain.
        for alpha in 0..q {
            for i in 0..dom.components[alpha].segments.len() {
                let seg = &dom.components[alpha].segments[i];
                let half = seg.length() / cast(2.0);
                let (p, tangent) = seg
                    .point_at_arclength(half)
                    .map_err(DomainError::Geometry)?;
                let left = tangent.left_normal();
                let mut decided = None;
                for eps_scale in [1e-6, 1e-5, 1e-7, 1e-4] {
                    let eps = dom.diameter * cast(eps_scale);
                    let inside_left = dom.contains(p + left * eps);
                    let inside_right = dom.contains(p + left * (-eps));
                    match (inside_left, inside_right) {
                        (true, false) => {
                            decided = Some(true);
                            break;
                        }
                        (false, true) => {
                            decided = Some(false);
                            break;
                        }
                        _ => continue,
                    }
                }
                match decided {
                    Some(flag) => dom.components[alpha].inward_left[i] = flag,
                    None => {
                        return Err(DomainError::InwardSideUndetermined {
                            component: alpha,
                            segment: i,
                        })
                    }
                }
            }
        }
        Ok(dom)
    }

    /// Number of boundary components `q` (1 = simply connected).
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, alpha: usize) -> Result<&BoundaryComponent<T>, DomainError> {
        self.components
            .get(alpha)
            .ok_or(DomainError::ComponentOutOfRange {
                index: alpha,
                count: self.components.len(),
            })
    }

    pub fn components(&self) -> &[BoundaryComponent<T>] {
        &self.components
    }

    pub fn perimeter(&self, alpha: usize) -> Result<T, DomainError> {
        Ok(self.component(alpha)?.perimeter)
    }

    /// Total boundary length (sum over all components).
    pub fn total_perimeter(&self) -> T {
        self.total_perimeter
    }

    /// Bounding-box diagonal; the reference length for tolerances.
    pub fn diameter(&self) -> T {
        self.diameter
    }

    /// Is `q` inside the domain (inside the outer wall, outside every
    /// obstacle)?
    pub fn contains(&self, q: Point2<T>) -> bool {
        if !self.components[0].contains_point(q) {
            return false;
        }
        self.components[1..].iter().all(|c| !c.contains_point(q))
    }

    /// Boundary frame at arclength `s` on component `alpha`; `s` is reduced
    /// mod the component perimeter.
    pub fn locate(&self, alpha: usize, s: T) -> Result<BoundaryFrame<T>, DomainError> {
        let comp = self.component(alpha)?;
        let s = comp.reduce(s);
        let (idx, u) = comp.segment_at(s);
        let (point, tangent) = comp.segments[idx]
            .point_at_arclength(u)
            .map_err(DomainError::Geometry)?;
        let inward_normal = if comp.inward_left[idx] {
            tangent.left_normal()
        } else {
            tangent.right_normal()
        };
        Ok(BoundaryFrame {
            point,
            tangent,
            inward_normal,
        })
    }

    /// First boundary intersection of the ray with `t > t_min` across all
    /// segments of all components.
    pub fn first_hit(
        &self,
        origin: Point2<T>,
        dir: UnitVec2<T>,
        t_min: T,
    ) -> Option<BoundaryHit<T>> {
        let mut best: Option<BoundaryHit<T>> = None;
        for (alpha, comp) in self.components.iter().enumerate() {
            for (i, seg) in comp.segments.iter().enumerate() {
                if let Some(h) = ray_intersect(seg, origin, dir, t_min) {
                    if best.as_ref().is_none_or(|b| h.t < b.t) {
                        best = Some(BoundaryHit {
                            component: alpha,
                            segment: i,
                            s: comp.reduce(comp.offsets[i] + h.local_arclength),
                            point: h.point,
                            t: h.t,
                        });
                    }
                }
            }
        }
        best
    }

    /// Arclength distance (mod perimeter) from `s` to the nearest corner of
    /// component `alpha`, or `None` when the component has no corners.
    pub fn corner_distance(&self, alpha: usize, s: T) -> Option<T> {
        let comp = &self.components[alpha];
        let p = comp.perimeter;
        comp.corners
            .iter()
            .map(|&c| {
                let d = rem_euclid(s - c, p);
                d.min(p - d)
            })
            .fold(None, |acc: Option<T>, d| Some(acc.map_or(d, |a| a.min(d))))
    }
}
