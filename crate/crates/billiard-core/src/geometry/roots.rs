//! Real-root solvers for low-degree polynomials, used by the closed-form
//! segment intersection tests.

use crate::scalar::{cast, Real};

/// Up to four real roots, ascending.
#[derive(Clone, Copy, Debug)]
pub struct Roots<T> {
    vals: [T; 4],
    n: usize,
}

impl<T: Real> Roots<T> {
    pub fn none() -> Self {
        Self {
            vals: [T::zero(); 4],
            n: 0,
        }
    }

    pub fn push(&mut self, r: T) {
        debug_assert!(self.n < 4);
        self.vals[self.n] = r;
        self.n += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.vals[..self.n].iter().copied()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn sort(&mut self) {
        self.vals[..self.n].sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    }
}

/// Real roots of `a x^2 + b x + c`, numerically stable form. A discriminant
/// within `tangent_tol * scale` of zero collapses to a single (double) root.
pub fn solve_quadratic<T: Real>(a: T, b: T, c: T) -> Roots<T> {
    let mut out = Roots::none();
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == T::zero() {
        return out;
    }
    if a.abs() <= scale * T::epsilon() * cast(4.0) {
        // Effectively linear.
        if b.abs() > scale * T::epsilon() * cast(4.0) {
            out.push(-c / b);
        }
        return out;
    }
    let disc = b * b - cast::<T>(4.0) * a * c;
    let disc_scale = (b * b).max((a * c).abs() * cast(4.0));
    if disc < -disc_scale * cast(1e-12) {
        return out;
    }
    if disc <= disc_scale * cast(1e-12) {
        // Double root: tangency collapse.
        out.push(-b / (cast::<T>(2.0) * a));
        return out;
    }
    let sq = disc.sqrt();
    let q = if b >= T::zero() {
        -(b + sq) / cast(2.0)
    } else {
        -(b - sq) / cast(2.0)
    };
    out.push(q / a);
    if q != T::zero() {
        out.push(c / q);
    } else {
        out.push(T::zero());
    }
    out.sort();
    out
}

/// Real roots of the monic cubic `x^3 + a x^2 + b x + c`.
pub fn solve_cubic_monic<T: Real>(a: T, b: T, c: T) -> Roots<T> {
    let mut out = Roots::none();
    let third = T::one() / cast(3.0);
    // Depress: x = y - a/3.
    let shift = a * third;
    let p = b - a * a * third;
    let q = c + (cast::<T>(2.0) * a * a * a - cast::<T>(9.0) * a * b) / cast(27.0);

    let half_q = q / cast(2.0);
    let third_p = p * third;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let scale = half_q
        .abs()
        .max(third_p.abs().powi(3))
        .max(T::min_positive_value());
    if disc > scale * cast(1e-14) {
        // One real root (Cardano).
        let sq = disc.sqrt();
        let u = (-half_q + sq).cbrt();
        let v = (-half_q - sq).cbrt();
        out.push(u + v - shift);
    } else if disc < -scale * cast(1e-14) {
        // Three distinct real roots (trigonometric form).
        let m = (-third_p).sqrt();
        let arg = (-half_q / (m * m * m)).max(-T::one()).min(T::one());
        let phi = arg.acos() * third;
        let two = cast::<T>(2.0);
        let tau_third = T::FRAC_PI_3() * two;
        out.push(two * m * phi.cos() - shift);
        out.push(two * m * (phi - tau_third).cos() - shift);
        out.push(two * m * (phi + tau_third).cos() - shift);
    } else {
        // Double / triple root region.
        if half_q.abs() <= scale * cast(1e-14) {
            out.push(-shift);
        } else {
            let u = (-half_q).cbrt();
            out.push(cast::<T>(2.0) * u - shift);
            out.push(-u - shift);
        }
    }
    out.sort();
    out
}

/// Real roots of `c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0` via Ferrari's method,
/// deflating gracefully when leading coefficients vanish.
pub fn solve_quartic<T: Real>(c4: T, c3: T, c2: T, c1: T, c0: T) -> Roots<T> {
    let scale = c4
        .abs()
        .max(c3.abs())
        .max(c2.abs())
        .max(c1.abs())
        .max(c0.abs());
    if scale == T::zero() {
        return Roots::none();
    }
    let small = scale * T::epsilon() * cast(64.0);
    if c4.abs() <= small {
        if c3.abs() <= small {
            return solve_quadratic(c2, c1, c0);
        }
        return solve_cubic_monic(c2 / c3, c1 / c3, c0 / c3);
    }

    let b = c3 / c4;
    let c = c2 / c4;
    let d = c1 / c4;
    let e = c0 / c4;

    // Depress: x = y - b/4.
    let quarter = T::one() / cast(4.0);
    let b4 = b * quarter;
    let b2 = b * b;
    let p = c - cast::<T>(3.0) / cast::<T>(8.0) * b2;
    let q = d - b * c / cast(2.0) + b2 * b / cast(8.0);
    let r = e - b * d * quarter + b2 * c / cast(16.0) - cast::<T>(3.0) * b2 * b2 / cast(256.0);

    let mut ys = Roots::none();
    let q_small = q.abs() <= (p.abs().max(r.abs()) + T::one()) * T::epsilon() * cast(64.0);
    if q_small {
        // Biquadratic.
        for u in solve_quadratic(T::one(), p, r).iter() {
            if u > T::zero() {
                ys.push(u.sqrt());
                ys.push(-u.sqrt());
            } else if u.abs() <= (p.abs() + r.abs() + T::one()) * cast(1e-13) {
                ys.push(T::zero());
            }
        }
    } else {
        // Resolvent: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0.
        let a2 = p;
        let a1 = (p * p * cast::<T>(2.0) - cast::<T>(8.0) * r) / cast(8.0);
        let a0 = -q * q / cast(8.0);
        let mut m_best: Option<T> = None;
        for m in solve_cubic_monic(a2, a1, a0).iter() {
            if m > T::zero() && m_best.is_none_or(|mb| m > mb) {
                m_best = Some(m);
            }
        }
        let m = match m_best {
            Some(m) => m,
            None => return Roots::none(),
        };
        let s = (cast::<T>(2.0) * m).sqrt();
        let half_p_m = p / cast(2.0) + m;
        let qs = q / (cast::<T>(2.0) * s);
        for (lin, cst) in [(-s, half_p_m + qs), (s, half_p_m - qs)] {
            for y in solve_quadratic(T::one(), lin, cst).iter() {
                if ys.len() < 4 {
                    ys.push(y);
                }
            }
        }
    }

    // Undo the shift, polish with Newton on the original quartic, dedupe.
    let eval = |x: T| (((c4 * x + c3) * x + c2) * x + c1) * x + c0;
    let deriv =
        |x: T| ((cast::<T>(4.0) * c4 * x + cast::<T>(3.0) * c3) * x + cast::<T>(2.0) * c2) * x + c1;
    let mut out: Roots<T> = Roots::none();
    for y in ys.iter() {
        let mut x = y - b4;
        for _ in 0..3 {
            let f = eval(x);
            let df = deriv(x);
            if df.abs() > T::min_positive_value() {
                let step = f / df;
                if step.is_finite() {
                    x -= step;
                }
            }
        }
        if !x.is_finite() {
            continue;
        }
        let dup = out
            .iter()
            .any(|prev| (prev - x).abs() <= (T::one() + prev.abs().max(x.abs())) * cast::<T>(1e-9));
        if !dup && out.len() < 4 {
            out.push(x);
        }
    }
    out.sort();
    out
}
