//! The invariant phase-space measure with density `sin(theta) ds dtheta`:
//! total mass, exact inverse-CDF sampling, and Monte Carlo integration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Domain;
use crate::error::LiouvilleError;
use crate::map::PhasePoint;
use crate::scalar::{cast, tol, Real};

/// A Monte Carlo estimate of a normalized phase-space integral. `mean` and
/// `std_error` have one entry per output dimension of the integrand.
#[derive(Clone, Debug)]
pub struct MCEstimate<T> {
    pub mean: Vec<T>,
    pub std_error: Vec<T>,
    pub n_samples: usize,
    /// Samples discarded because the integrand reported a singular orbit.
    pub n_singular_discarded: usize,
}

impl<T: Real> MCEstimate<T> {
    /// Mean and standard error of a one-dimensional estimate.
    pub fn scalar(&self) -> (T, T) {
        assert_eq!(self.mean.len(), 1, "scalar() on a vector estimate");
        (self.mean[0], self.std_error[0])
    }
}

/// Density of the invariant measure at a phase point: `sin(theta)`.
pub fn liouville_density<T: Real>(z: &PhasePoint<T>) -> T {
    z.theta.sin()
}

/// Total mass of the phase space: `2 |boundary|`, exact.
pub fn total_mass<T: Real>(dom: &Domain<T>) -> T {
    cast::<T>(2.0) * dom.total_perimeter()
}

/// Inverse CDF of the normalized angular density `sin(theta) / 2`.
fn theta_from_uniform<T: Real>(u: T) -> T {
    (T::one() - cast::<T>(2.0) * u).acos()
}

/// Draw one phase point distributed by the invariant measure: the footpoint
/// uniform in global arclength (components weighted by perimeter), the angle
/// by the exact inverse CDF `theta = arccos(1 - 2u)`. Draws with `theta`
/// within 1e-9 of `{0, pi}` are rejected and redrawn.
pub fn sample<T: Real, R: Rng>(dom: &Domain<T>, rng: &mut R) -> PhasePoint<T> {
    let eps = tol::<T>(1e-9);
    loop {
        let gu: T = cast(rng.gen::<f64>());
        let tu: T = cast(rng.gen::<f64>());
        let theta = theta_from_uniform(tu);
        if theta < eps || theta > T::PI() - eps {
            continue;
        }
        let mut g = gu * dom.total_perimeter();
        let mut component = dom.num_components() - 1;
        for (idx, c) in dom.components().iter().enumerate() {
            if g < c.perimeter() || idx + 1 == dom.num_components() {
                component = idx;
                break;
            }
            g -= c.perimeter();
        }
        let s = dom.components()[component].reduce(g);
        return PhasePoint {
            component,
            s,
            theta,
        };
    }
}

/// The RNG substream for sample `index` under `master_seed`. Each sample
/// draws from its own stream, so estimates are independent of evaluation
/// order and parallel schedule.
pub fn substream_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Recursive pairwise summation (order-independent, low error growth).
pub(crate) fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    if xs.len() <= 8 {
        let mut acc = T::zero();
        for &x in xs {
            acc += x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// Monte Carlo estimate of the normalized integral of `f` over the phase
/// space with `m` samples.
///
/// `f` writes its (dim-dimensional) value into the provided buffer and
/// returns `false` to report a singular evaluation; such samples are redrawn
/// from the same substream and counted. More than 1% singular draws abort
/// with a geometry-suspicion error.
pub fn mc_integrate<T: Real>(
    dom: &Domain<T>,
    dim: usize,
    mut f: impl FnMut(&PhasePoint<T>, &mut [T]) -> bool,
    m: usize,
    master_seed: u64,
) -> Result<MCEstimate<T>, LiouvilleError> {
    if m < 2 {
        return Err(LiouvilleError::TooFewSamples { min: 2, got: m });
    }
    assert!(dim >= 1);
    let mut values = vec![T::zero(); m * dim];
    let mut buf = vec![T::zero(); dim];
    let mut n_singular = 0usize;
    for i in 0..m {
        let mut rng = substream_rng(master_seed, i as u64);
        let mut redraws = 0usize;
        loop {
            let z = sample(dom, &mut rng);
            if f(&z, &mut buf) {
                values[i * dim..(i + 1) * dim].copy_from_slice(&buf);
                break;
            }
            n_singular += 1;
            redraws += 1;
            if redraws >= 1000 {
                return Err(LiouvilleError::TooManySingular {
                    singular: n_singular,
                    accepted: i,
                });
            }
        }
    }
    if n_singular * 100 > m + n_singular {
        return Err(LiouvilleError::TooManySingular {
            singular: n_singular,
            accepted: m,
        });
    }

    let mut mean = Vec::with_capacity(dim);
    let mut std_error = Vec::with_capacity(dim);
    let mut col = vec![T::zero(); m];
    let m_t = cast::<T>(m as f64);
    for d in 0..dim {
        for i in 0..m {
            col[i] = values[i * dim + d];
        }
        let mu = pairwise_sum(&col) / m_t;
        for c in col.iter_mut() {
            let dev = *c - mu;
            *c = dev * dev;
        }
        let var = pairwise_sum(&col) / cast::<T>((m - 1) as f64);
        mean.push(mu);
        std_error.push((var / m_t).sqrt());
    }
    Ok(MCEstimate {
        mean,
        std_error,
        n_samples: m,
        n_singular_discarded: n_singular,
    })
}

/// Scalar-integrand convenience wrapper; `None` reports a singular sample.
pub fn mc_integrate_scalar<T: Real>(
    dom: &Domain<T>,
    mut f: impl FnMut(&PhasePoint<T>) -> Option<T>,
    m: usize,
    master_seed: u64,
) -> Result<MCEstimate<T>, LiouvilleError> {
    mc_integrate(
        dom,
        1,
        |z, out| match f(z) {
            Some(v) => {
                out[0] = v;
                true
            }
            None => false,
        },
        m,
        master_seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::builtin;
    use crate::geometry::point::Point2;
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn density_values() {
        let dom = builtin::circle(1.0f64).unwrap();
        let z = PhasePoint::new(&dom, 0, 0.0, FRAC_PI_2).unwrap();
        assert_eq!(liouville_density(&z), 1.0);
        let z = PhasePoint::new(&dom, 0, 0.0, PI / 6.0).unwrap();
        assert!((liouville_density(&z) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn total_mass_values() {
        assert!((total_mass(&builtin::circle(1.0f64).unwrap()) - 4.0 * PI).abs() < 1e-12);
        let square = builtin::polygon(&[
            Point2::new(0.0f64, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!((total_mass(&square) - 8.0).abs() < 1e-12);
        let ann = builtin::concentric_annulus(1.0f64, 0.5).unwrap();
        assert!((total_mass(&ann) - 6.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn inverse_cdf_endpoints_and_median() {
        assert!((theta_from_uniform(0.5f64) - FRAC_PI_2).abs() < 1e-15);
        assert!(theta_from_uniform(1e-12f64) < 1e-5);
        assert!(theta_from_uniform(1.0f64 - 1e-12) > PI - 1e-5);
    }

    #[test]
    fn sample_mean_of_sin_theta_is_pi_over_4() {
        // E[sin theta] under the sin-density is pi/4; Var = 2/3 - pi^2/16.
        let dom = builtin::circle(1.0f64).unwrap();
        let est = mc_integrate_scalar(&dom, |z| Some(z.theta.sin()), 100_000, 7).unwrap();
        let (mean, se) = est.scalar();
        assert!(
            (mean - PI / 4.0).abs() < 3.0 * se,
            "mean {mean}, se {se}, target {}",
            PI / 4.0
        );
        assert_eq!(est.n_singular_discarded, 0);
    }

    #[test]
    fn constant_integrand_is_exact() {
        let dom = builtin::circle(1.0f64).unwrap();
        let est = mc_integrate_scalar(&dom, |_| Some(1.0), 1000, 3).unwrap();
        let (mean, se) = est.scalar();
        assert_eq!(mean, 1.0);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn seed_determinism() {
        let dom = builtin::ellipse(2.0f64, 1.0).unwrap();
        let a = mc_integrate_scalar(&dom, |z| Some(z.theta.sin()), 500, 42).unwrap();
        let b = mc_integrate_scalar(&dom, |z| Some(z.theta.sin()), 500, 42).unwrap();
        assert_eq!(a.mean[0].to_bits(), b.mean[0].to_bits());
        assert_eq!(a.std_error[0].to_bits(), b.std_error[0].to_bits());
    }

    #[test]
    fn singular_samples_are_redrawn_and_counted() {
        let dom = builtin::circle(1.0f64).unwrap();
        // Reject a null set proxy: nothing; then a 100% rejector must abort.
        let err = mc_integrate_scalar(&dom, |_| None::<f64>, 10, 1);
        assert!(matches!(err, Err(LiouvilleError::TooManySingular { .. })));
    }

    #[test]
    fn too_few_samples() {
        let dom = builtin::circle(1.0f64).unwrap();
        assert!(matches!(
            mc_integrate_scalar(&dom, |_| Some(1.0), 1, 1),
            Err(LiouvilleError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn component_choice_proportional_to_perimeter() {
        let dom = builtin::concentric_annulus(1.0f64, 0.5).unwrap();
        let mut rng = substream_rng(11, 0);
        let mut inner = 0usize;
        let n = 30_000;
        for _ in 0..n {
            if sample(&dom, &mut rng).component == 1 {
                inner += 1;
            }
        }
        // Inner perimeter fraction is 1/3; binomial 5-sigma band.
        let frac = inner as f64 / n as f64;
        let sigma = ((1.0 / 3.0) * (2.0 / 3.0) / n as f64).sqrt();
        assert!((frac - 1.0 / 3.0).abs() < 5.0 * sigma, "frac {frac}");
    }
}
