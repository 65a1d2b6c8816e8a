//! Bracketing bisection on a monotone predicate.

/// Upper bound on halvings; a finite f64 bracket collapses well before this.
pub const MAX_ITERATIONS: usize = 200;

/// Shrinks `[lo, hi]` around the point where `left_of_root` switches from
/// `true` to `false`.
///
/// The predicate must be monotone on the bracket: `true` for every point left of
/// the switch, `false` to the right. Neither endpoint is evaluated. Iteration stops
/// once `hi - lo <= tol` or the midpoint can no longer be distinguished from an
/// endpoint in floating point; pass `tol = 0.0` to bisect to full precision.
///
/// Returns the final `(lo, hi)`. `lo` keeps the "left of root" property and is the
/// original `lo` if the predicate never returned `true`.
pub fn bisect<E, F>(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    mut left_of_root: F,
) -> Result<(f64, f64), E>
where
    F: FnMut(f64) -> Result<bool, E>,
{
    debug_assert!(lo <= hi);
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if left_of_root(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn square_root_of_two() {
        let (lo, hi) = bisect::<Infallible, _>(1.0, 2.0, 0.0, |x| Ok(x * x < 2.0)).unwrap();
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
        assert!(hi - lo <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn honours_tolerance() {
        let mut calls = 0;
        let (lo, hi) = bisect::<Infallible, _>(0.0, 1024.0, 1.0, |x| {
            calls += 1;
            Ok(x < 300.0)
        })
        .unwrap();
        assert!(hi - lo <= 1.0);
        assert!(lo < 300.0 && hi >= 300.0);
        assert_eq!(calls, 10);
    }

    #[test]
    fn predicate_never_true_keeps_lo() {
        let (lo, _) = bisect::<Infallible, _>(5.0, 6.0, 0.0, |_| Ok(false)).unwrap();
        assert_eq!(lo, 5.0);
    }

    #[test]
    fn propagates_errors() {
        let r: Result<_, &str> = bisect(0.0, 1.0, 0.0, |_| Err("boom"));
        assert_eq!(r, Err("boom"));
    }
}
