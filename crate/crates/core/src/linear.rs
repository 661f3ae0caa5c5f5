//! Linear stability of the constant equilibrium.
//!
//! Perturbations of (lambda, lambda) decompose over the Neumann cosine modes
//! cos(n x / ell). Mode n evolves under a 2x2 Jacobian whose eigenvalues
//! solve `mu^2 - T_n(lambda) mu + D_n(lambda) = 0`; the equilibrium is
//! locally asymptotically stable exactly when `T_n < 0` and `D_n > 0` for
//! every n >= 0. The nonlocal competition term acts only on mode 0, which is
//! why `T_0`/`D_0` differ structurally from the n >= 1 family and why mode-1
//! oscillatory instabilities (absent in the pointwise-competition model) can
//! occur at all.
//!
//! Three auxiliary curves organize the analysis:
//!
//! * `p_ratio(lambda)` -- the d1/d2 threshold below which some mode
//!   determinant can turn negative (Turing-type instability);
//! * `p_trace(lambda) = lambda (1 - beta lambda)/(1 + lambda)` -- the
//!   reaction part of the n >= 1 traces, so `T_n = p_trace - c - (d1+d2)
//!   n^2/ell^2`;
//! * `p_trace0(lambda) = lambda (1 - beta - 2 beta lambda)/(1 + lambda)` --
//!   the reaction part of the mode-0 trace, `T_0 = p_trace0 - c`. The
//!   identity `p_trace0 = p_trace - beta*lambda` holds for all lambda.

use crate::error::{Error, Result};
use crate::model::{check_lambda, ModelParams};
use crate::roots::{bisect, ROOT_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Reaction part of the n >= 1 mode traces: `lambda (1-beta lambda)/(1+lambda)`.
pub fn p_trace(lambda: f64, beta: f64) -> f64 {
    lambda * (1.0 - beta * lambda) / (1.0 + lambda)
}

/// Derivative of [`p_trace`]: `(1 - 2 beta lambda - beta lambda^2)/(1+lambda)^2`.
pub fn p_trace_deriv(lambda: f64, beta: f64) -> f64 {
    (1.0 - 2.0 * beta * lambda - beta * lambda * lambda) / ((1.0 + lambda) * (1.0 + lambda))
}

/// Reaction part of the mode-0 trace: `lambda (1 - beta - 2 beta lambda)/(1+lambda)`.
pub fn p_trace0(lambda: f64, beta: f64) -> f64 {
    lambda * (1.0 - beta - 2.0 * beta * lambda) / (1.0 + lambda)
}

/// Derivative of [`p_trace0`]: `(1 - beta - 4 beta lambda - 2 beta lambda^2)/(1+lambda)^2`.
pub fn p_trace0_deriv(lambda: f64, beta: f64) -> f64 {
    (1.0 - beta - 4.0 * beta * lambda - 2.0 * beta * lambda * lambda)
        / ((1.0 + lambda) * (1.0 + lambda))
}

/// Diffusion-ratio threshold curve:
/// `(1 - beta lambda)/c * (1 - sqrt(1/(lambda+1)))^2`.
///
/// All mode determinants stay positive at a given lambda iff
/// `d1/d2 > p_ratio(lambda)`.
pub fn p_ratio(lambda: f64, beta: f64, c: f64) -> f64 {
    let s = 1.0 - (1.0 / (lambda + 1.0)).sqrt();
    (1.0 - beta * lambda) / c * s * s
}

/// Index into the auxiliary curve family of Eq.-style p1/p2/p3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PCurve {
    /// Diffusion-ratio threshold ([`p_ratio`]).
    Ratio,
    /// n >= 1 trace reaction part ([`p_trace`]).
    Trace,
    /// Mode-0 trace reaction part ([`p_trace0`]).
    Trace0,
}

/// Evaluates one of the three auxiliary curves with domain checking.
pub fn p_curve(which: PCurve, lambda: f64, beta: f64, c: f64) -> Result<f64> {
    check_lambda(lambda, beta)?;
    Ok(match which {
        PCurve::Ratio => p_ratio(lambda, beta, c),
        PCurve::Trace => p_trace(lambda, beta),
        PCurve::Trace0 => p_trace0(lambda, beta),
    })
}

/// Locations of the maxima of the three auxiliary curves on (0, 1/beta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoints {
    /// Argmax of [`p_ratio`]; found by bisection of its derivative's sign
    /// change (the curve increases then decreases).
    pub ratio_max: f64,
    /// Argmax of [`p_trace`]: `sqrt((beta+1)/beta) - 1`, in closed form.
    pub trace_max: f64,
    /// Argmax of [`p_trace0`]: `sqrt((beta+1)/(2 beta)) - 1`, defined for
    /// beta <= 1 (for beta > 1 the curve is negative and decreasing on the
    /// whole interval).
    pub trace0_max: Option<f64>,
}

/// Computes the critical points of the three auxiliary curves.
///
/// `ratio_max` solves `beta (1 - sqrt(1/(lambda+1))) =
/// (1 - beta lambda)(lambda+1)^{-3/2}`; the left side grows from 0 and the
/// right side falls to 0 on (0, 1/beta), so the bracket is guaranteed.
pub fn critical_points(beta: f64) -> CriticalPoints {
    let stationarity = |lambda: f64| {
        beta * (1.0 - (1.0 / (lambda + 1.0)).sqrt())
            - (1.0 - beta * lambda) * (lambda + 1.0).powf(-1.5)
    };
    let hi = 1.0 / beta;
    let ratio_max = bisect(stationarity, 1e-12, hi - 1e-12 * hi, ROOT_TOL)
        .expect("p_ratio stationarity changes sign on (0, 1/beta)");
    let trace_max = ((beta + 1.0) / beta).sqrt() - 1.0;
    let trace0_max = if beta <= 1.0 {
        Some(((beta + 1.0) / (2.0 * beta)).sqrt() - 1.0)
    } else {
        None
    };
    CriticalPoints { ratio_max, trace_max, trace0_max }
}

/// Trace of the mode-n Jacobian at (lambda, lambda).
///
/// `T_0 = -c + p_trace0(lambda)`; for n >= 1,
/// `T_n = -c + p_trace(lambda) - (d1+d2) n^2/ell^2`.
pub fn mode_trace(n: u32, lambda: f64, params: &ModelParams) -> Result<f64> {
    check_lambda(lambda, params.beta)?;
    Ok(mode_trace_unchecked(n, lambda, params))
}

pub(crate) fn mode_trace_unchecked(n: u32, lambda: f64, params: &ModelParams) -> f64 {
    if n == 0 {
        -params.c + p_trace0(lambda, params.beta)
    } else {
        let k2 = (n as f64 / params.ell).powi(2);
        -params.c + p_trace(lambda, params.beta) - (params.d1 + params.d2) * k2
    }
}

/// Determinant of the mode-n Jacobian at (lambda, lambda).
///
/// `D_0 = beta c lambda + c (1-beta lambda)/(1+lambda)`; for n >= 1 this is
/// [`det_quadratic`] evaluated at `p = n^2/ell^2`.
pub fn mode_det(n: u32, lambda: f64, params: &ModelParams) -> Result<f64> {
    check_lambda(lambda, params.beta)?;
    Ok(mode_det_unchecked(n, lambda, params))
}

pub(crate) fn mode_det_unchecked(n: u32, lambda: f64, params: &ModelParams) -> f64 {
    if n == 0 {
        params.beta * params.c * lambda
            + params.c * (1.0 - params.beta * lambda) / (1.0 + lambda)
    } else {
        det_quadratic_unchecked((n as f64 / params.ell).powi(2), lambda, params)
    }
}

/// The n >= 1 determinant as a quadratic in the squared wavenumber p:
/// `D(lambda, p) = c(1-beta lambda)/(1+lambda) + [d1 c - d2 p_trace(lambda)] p
/// + d1 d2 p^2`.
pub fn det_quadratic(lambda: f64, p: f64, params: &ModelParams) -> Result<f64> {
    check_lambda(lambda, params.beta)?;
    if !(p >= 0.0) {
        return Err(Error::domain("p", p, "[0, inf)"));
    }
    Ok(det_quadratic_unchecked(p, lambda, params))
}

fn det_quadratic_unchecked(p: f64, lambda: f64, params: &ModelParams) -> f64 {
    params.c * (1.0 - params.beta * lambda) / (1.0 + lambda)
        + (params.d1 * params.c - params.d2 * p_trace(lambda, params.beta)) * p
        + params.d1 * params.d2 * p * p
}

/// Both roots of `mu^2 - T_n mu + D_n = 0` for mode n.
///
/// Returns a complex-conjugate pair when the discriminant is negative.
pub fn mode_eigenvalues(n: u32, lambda: f64, params: &ModelParams) -> Result<(Complex64, Complex64)> {
    let t = mode_trace(n, lambda, params)?;
    let d = mode_det_unchecked(n, lambda, params);
    let disc = t * t / 4.0 - d;
    if disc >= 0.0 {
        let root = disc.sqrt();
        Ok((
            Complex64::new(t / 2.0 + root, 0.0),
            Complex64::new(t / 2.0 - root, 0.0),
        ))
    } else {
        let omega = (-disc).sqrt();
        Ok((
            Complex64::new(t / 2.0, omega),
            Complex64::new(t / 2.0, -omega),
        ))
    }
}

/// Why a mode fails the stability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailReason {
    TraceNonnegative,
    DetNonpositive,
}

/// One failing mode with its reason.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeFailure {
    pub mode: u32,
    pub reason: FailReason,
}

/// Outcome of the finite mode scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub failing_modes: Vec<ModeFailure>,
    /// All modes 0..=n_checked were tested; beyond it the tail certificate
    /// of [`mode_cutoff`] guarantees T_n < 0 and D_n > 0.
    pub n_checked: u32,
}

/// Smallest cutoff N such that every mode n > N is certifiably stable for
/// every lambda in (0, 1/beta).
///
/// With q = n^2/ell^2 and P = max p_trace = p_trace(trace_max):
/// `(d1+d2) q > P` forces `T_n < -c`, and `d1 q > P` forces
/// `d1 c q + d1 d2 q^2 > d2 P q >= d2 p_trace q`, hence `D_n > 0`.
/// The second bound dominates, giving `N = ceil(ell sqrt(P/d1))`.
pub fn mode_cutoff(params: &ModelParams) -> u32 {
    let cps = critical_points(params.beta);
    let peak = p_trace(cps.trace_max, params.beta);
    let n = params.ell * (peak / params.d1).sqrt();
    n.ceil() as u32 + 1
}

/// Tests `T_n < 0` and `D_n > 0` for all modes up to the tail certificate
/// cutoff, reporting every failure.
pub fn classify_equilibrium(lambda: f64, params: &ModelParams) -> Result<StabilityVerdict> {
    check_lambda(lambda, params.beta)?;
    let n_checked = mode_cutoff(params);
    let mut failing_modes = Vec::new();
    for n in 0..=n_checked {
        if mode_trace_unchecked(n, lambda, params) >= 0.0 {
            failing_modes.push(ModeFailure { mode: n, reason: FailReason::TraceNonnegative });
        }
        if mode_det_unchecked(n, lambda, params) <= 0.0 {
            failing_modes.push(ModeFailure { mode: n, reason: FailReason::DetNonpositive });
        }
    }
    Ok(StabilityVerdict { stable: failing_modes.is_empty(), failing_modes, n_checked })
}
