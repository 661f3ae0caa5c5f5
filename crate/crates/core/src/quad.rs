//! Midpoint quadrature on (0, ell*pi).
//!
//! Every integrand in the normal-form machinery is a trigonometric polynomial
//! in x/ell, for which the composite midpoint rule on a uniform grid is exact
//! up to rounding, so these helpers double as spectral-accuracy quadrature.

use num_complex::Complex64;

/// Cell-centered midpoint nodes of a uniform n-cell grid on (0, length).
pub fn midpoint_nodes(n: usize, length: f64) -> Vec<f64> {
    let dx = length / n as f64;
    (0..n).map(|i| (i as f64 + 0.5) * dx).collect()
}

/// Composite midpoint rule for a real integrand on (0, length).
pub fn integrate<F: Fn(f64) -> f64>(f: F, length: f64, n: usize) -> f64 {
    let dx = length / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * dx)).sum::<f64>() * dx
}

/// Composite midpoint rule for a complex integrand on (0, length).
pub fn integrate_c<F: Fn(f64) -> Complex64>(f: F, length: f64, n: usize) -> Complex64 {
    let dx = length / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * dx)).sum::<Complex64>() * dx
}
