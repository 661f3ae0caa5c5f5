//! Bisection root finding.
//!
//! All transcendental conditions in this crate are solved by plain bisection:
//! every bracket comes from a monotonicity argument, so a validated sign
//! change makes convergence unconditional. No Newton steps anywhere.

use crate::error::{Error, Result};

/// Absolute bracket-width tolerance used by every root solve in the crate.
pub const ROOT_TOL: f64 = 1e-12;

/// Finds the root of `f` inside `[lo, hi]` by bisection.
///
/// Fails with [`Error::BadBracket`] when `f(lo)` and `f(hi)` do not have
/// opposite signs. The returned abscissa is accurate to `tol` (bracket
/// half-width).
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() * f_hi.signum() > 0.0 {
        return Err(Error::BadBracket { lo, hi, f_lo, f_hi });
    }
    // 200 halvings put the bracket below f64 resolution for any sane input.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_lo.signum() * f_mid.signum() <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
