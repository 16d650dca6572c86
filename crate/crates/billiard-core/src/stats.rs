//! Small statistics helpers for the experiment commands and test suites.

use crate::scalar::{cast, Real};

/// Two-sample Kolmogorov-Smirnov statistic: the supremum distance between
/// the empirical CDFs of `a` and `b`.
pub fn two_sample_ks<T: Real>(a: &[T], b: &[T]) -> T {
    assert!(!a.is_empty() && !b.is_empty(), "ks needs nonempty samples");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite sample"));
    b.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite sample"));
    let (n, m) = (a.len(), b.len());
    let (nt, mt) = (cast::<T>(n as f64), cast::<T>(m as f64));
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = T::zero();
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        let gap = (cast::<T>(i as f64) / nt - cast::<T>(j as f64) / mt).abs();
        d = d.max(gap);
    }
    d
}

/// Critical value of the two-sample KS statistic at the 99.9% level
/// (`alpha = 0.001`): `c(alpha) * sqrt((n + m) / (n m))` with
/// `c = sqrt(ln(2 / alpha) / 2)`.
pub fn ks_threshold_999<T: Real>(n: usize, m: usize) -> T {
    let c = cast::<T>(1.949_474_603_520_405);
    let (nt, mt) = (cast::<T>(n as f64), cast::<T>(m as f64));
    c * ((nt + mt) / (nt * mt)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_distance() {
        let a = [0.1f64, 0.4, 0.7, 0.9];
        assert_eq!(two_sample_ks(&a, &a), 0.0);
    }

    #[test]
    fn disjoint_samples_have_distance_one() {
        let a = [0.0f64, 0.1, 0.2];
        let b = [1.0f64, 1.1, 1.2];
        assert!((two_sample_ks(&a, &b) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn known_small_case() {
        // F_a jumps at {1, 3}, F_b at {2, 4}; max gap is 1/2.
        let a = [1.0f64, 3.0];
        let b = [2.0f64, 4.0];
        assert!((two_sample_ks(&a, &b) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn threshold_magnitude() {
        // n = m = 1e5: 1.9495 * sqrt(2e-5) ~ 8.72e-3.
        let thr: f64 = ks_threshold_999(100_000, 100_000);
        assert!((thr - 8.718e-3).abs() < 1e-5);
    }
}
