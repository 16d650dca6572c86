//! Footpoint increments and their Birkhoff averages: rotation numbers on
//! simply connected tables and per-component rotation vectors on multiply
//! connected ones.

use crate::domain::Domain;
use crate::error::RotationError;
use crate::liouville::pairwise_sum;
use crate::map::{orbit, PhasePoint};
use crate::scalar::{cast, rem_euclid, Real};

/// Finite-N estimate of the footpoint gain and rotation number along one
/// orbit.
#[derive(Clone, Copy, Debug)]
pub struct RotationEstimate<T> {
    /// Mean footpoint gain per step, in `[0, |boundary|]`.
    pub upsilon: T,
    /// `upsilon / |boundary|`, in `[0, 1]`.
    pub rho: T,
    /// Steps actually averaged (less than requested iff singular).
    pub steps: usize,
    /// `|rho_N - rho_{N/2}|`: a convergence indicator, not an error bound.
    pub half_width: T,
    pub terminated_singular: bool,
}

/// Finite-N estimate of the footpoint gain vector and rotation vector, one
/// entry per boundary component.
#[derive(Clone, Debug)]
pub struct RotationVectorEstimate<T> {
    /// Per-component mean gain per step, in `[0, |component|]`.
    pub upsilon: Vec<T>,
    /// `upsilon[a] / |component a|`, each in `[0, 1]`.
    pub rho: Vec<T>,
    /// Number of orbit footpoints on each component.
    pub visits: Vec<usize>,
    pub steps: usize,
    pub half_width: Vec<T>,
    pub terminated_singular: bool,
}

/// Arclength increment from the footpoint of `z` to the footpoint of
/// `z_next` along the positively oriented component, in `[0, perimeter)`.
/// Both points must lie on the same component.
pub fn footpoint_increment<T: Real>(
    dom: &Domain<T>,
    z: &PhasePoint<T>,
    z_next: &PhasePoint<T>,
) -> Result<T, RotationError> {
    if z.component != z_next.component {
        return Err(RotationError::ComponentMismatch {
            a: z.component,
            b: z_next.component,
        });
    }
    let p = dom
        .perimeter(z.component)
        .expect("phase point component valid for this domain");
    Ok(rem_euclid(z_next.s - z.s, p))
}

/// Rotation number estimate over `n` steps on a simply connected table
/// (`q = 1`). If the orbit hits a singularity after `m < n` steps, the
/// average uses the `m` completed steps and the singular flag is set.
pub fn rotation_number<T: Real>(
    dom: &Domain<T>,
    z: &PhasePoint<T>,
    n: usize,
) -> Result<RotationEstimate<T>, RotationError> {
    if dom.num_components() != 1 {
        return Err(RotationError::NotSimplyConnected {
            q: dom.num_components(),
        });
    }
    if n < 1 {
        return Err(RotationError::TooFewSteps { min: 1, got: n });
    }
    let p = dom.total_perimeter();
    let mut incs: Vec<T> = Vec::with_capacity(n);
    let summary = orbit(dom, z, n, |_, a, b, _| {
        incs.push(rem_euclid(b.s - a.s, p));
    });
    let m = summary.steps_completed;
    let (upsilon, rho) = average_gain(&incs, m, p);
    let m_half = m / 2;
    let (_, rho_half) = average_gain(&incs[..m_half], m_half, p);
    Ok(RotationEstimate {
        upsilon,
        rho,
        steps: m,
        half_width: (rho - rho_half).abs(),
        terminated_singular: !summary.completed(),
    })
}

fn average_gain<T: Real>(incs: &[T], m: usize, p: T) -> (T, T) {
    if m == 0 {
        return (T::zero(), T::zero());
    }
    let upsilon = pairwise_sum(&incs[..m]) / cast::<T>(m as f64);
    (upsilon, upsilon / p)
}

/// Per-component sums of increments between consecutive visits, divided by
/// the total step count (not the visit count).
fn vector_estimate_of_points<T: Real>(
    dom: &Domain<T>,
    points: &[(usize, T)],
) -> (Vec<T>, Vec<T>, Vec<usize>) {
    let q = dom.num_components();
    let steps = points.len().saturating_sub(1);
    let mut incs: Vec<Vec<T>> = vec![Vec::new(); q];
    let mut visits = vec![0usize; q];
    let mut last: Vec<Option<T>> = vec![None; q];
    for &(alpha, s) in points {
        visits[alpha] += 1;
        let p_alpha = dom.perimeter(alpha).expect("component in range");
        if let Some(prev) = last[alpha] {
            incs[alpha].push(rem_euclid(s - prev, p_alpha));
        }
        last[alpha] = Some(s);
    }
    let mut upsilon = Vec::with_capacity(q);
    let mut rho = Vec::with_capacity(q);
    for (alpha, alpha_incs) in incs.iter().enumerate() {
        let p_alpha = dom.perimeter(alpha).expect("component in range");
        let u = if steps == 0 {
            T::zero()
        } else {
            pairwise_sum(alpha_incs) / cast::<T>(steps as f64)
        };
        upsilon.push(u);
        rho.push(u / p_alpha);
    }
    (upsilon, rho, visits)
}

/// Rotation vector estimate over `n` steps: for each boundary component,
/// the increments between its consecutive visit footpoints are summed and
/// divided by the total step count, then normalized by the component
/// perimeter. Components never visited get zero gain.
pub fn rotation_vector<T: Real>(
    dom: &Domain<T>,
    z: &PhasePoint<T>,
    n: usize,
) -> Result<RotationVectorEstimate<T>, RotationError> {
    if n < 1 {
        return Err(RotationError::TooFewSteps { min: 1, got: n });
    }
    let mut points: Vec<(usize, T)> = Vec::with_capacity(n + 1);
    points.push((z.component, z.s));
    let summary = orbit(dom, z, n, |_, _, b, _| {
        points.push((b.component, b.s));
    });
    let m = summary.steps_completed;
    let (upsilon, rho, visits) = vector_estimate_of_points(dom, &points);
    let (_, rho_half, _) = vector_estimate_of_points(dom, &points[..m / 2 + 1]);
    let half_width = rho
        .iter()
        .zip(rho_half.iter())
        .map(|(a, b)| (*a - *b).abs())
        .collect();
    Ok(RotationVectorEstimate {
        upsilon,
        rho,
        visits,
        steps: m,
        half_width,
        terminated_singular: !summary.completed(),
    })
}

/// Total rotation number of a multiply connected table: the sum of the
/// per-component rotation numbers. Collapses to the plain rotation number
/// when `q = 1`.
pub fn rotation_number_total<T: Real>(v: &RotationVectorEstimate<T>) -> T {
    let mut acc = T::zero();
    for r in &v.rho {
        acc += *r;
    }
    acc
}

/// Forward and reversed rotation number estimates over the same `n`-chord
/// window.
///
/// The forward estimate averages the increments of `z, phi z, ..., phi^n z`.
/// The reversed estimate applies the same estimator to the time-reversed
/// window — by the reflection law this is the orbit of the reversed final
/// chord, `sigma(phi^n z)`, whose footpoints retrace the forward window
/// backwards. Chord-for-chord the increments are complementary, so the two
/// values sum to 1 up to finite-N boundary terms of size `2/n`.
///
/// Requires a simply connected table and an `n`-step regular orbit.
pub fn reversed_estimate_check<T: Real>(
    dom: &Domain<T>,
    z: &PhasePoint<T>,
    n: usize,
) -> Result<(T, T), RotationError> {
    if dom.num_components() != 1 {
        return Err(RotationError::NotSimplyConnected {
            q: dom.num_components(),
        });
    }
    if n < 2 {
        return Err(RotationError::TooFewSteps { min: 2, got: n });
    }
    let p = dom.total_perimeter();
    let mut s_seq: Vec<T> = Vec::with_capacity(n + 1);
    s_seq.push(z.s);
    let summary = orbit(dom, z, n, |_, _, b, _| s_seq.push(b.s));
    if !summary.completed() {
        return Err(RotationError::SingularOrbit {
            steps: summary.steps_completed,
        });
    }
    let fwd: Vec<T> = s_seq
        .windows(2)
        .map(|w| rem_euclid(w[1] - w[0], p))
        .collect();
    let rev: Vec<T> = s_seq
        .windows(2)
        .rev()
        .map(|w| rem_euclid(w[0] - w[1], p))
        .collect();
    let rho_fwd = pairwise_sum(&fwd) / (cast::<T>(n as f64) * p);
    let rho_rev = pairwise_sum(&rev) / (cast::<T>(n as f64) * p);
    Ok((rho_fwd, rho_rev))
}
