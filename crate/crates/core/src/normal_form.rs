//! Center-manifold normal form at a mode-1 Hopf point.
//!
//! Shifting the equilibrium to the origin and splitting off the critical
//! eigenspace of the linearization reduces the dynamics near the crossing to
//! `z' = i omega z + g(z, zbar)` on a two-dimensional center manifold. For
//! this system every quadratic coefficient of g vanishes (the cube of
//! cos(x/ell) integrates to zero), so the first Lyapunov quantity is carried
//! entirely by `g21`:
//!
//! * `c1 = g21 / 2` decides everything;
//! * `mu2 = -Re(c1) / alpha'(lambda*)` gives the bifurcation direction
//!   (orbits exist to the right of lambda* iff mu2 > 0);
//! * `beta2 = Re(g21)` gives orbital stability (stable iff negative).
//!
//! The computation needs the critical eigenpair, the quadratic response
//! profiles w20 and w11 (a constant part plus a cos(2x/ell) part each, found
//! by two 2x2 resolvent solves), and one long cubic assembly. The same
//! assembly evaluated on the closed-form ell -> infinity ingredients yields
//! the large-domain limits, for which independent closed forms of the real
//! parts are also provided; [`AsymptoticLimits`] carries both routes so they
//! can be cross-checked.

use crate::error::{Error, Result};
use crate::hopf::{HopfPoint, Branch};
use crate::linear::{mode_det_unchecked, mode_trace_unchecked, p_trace};
use crate::model::{b_from_lambda, check_lambda, ModelParams};
use crate::quad::integrate_c;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Nodes used for the normalization-residual quadrature.
const QUAD_NODES: usize = 10_000;

/// Residual tolerance for the eigenpair normalization identities.
const NORMALIZATION_TOL: f64 = 1e-10;

/// Magnitude below which a resolvent denominator counts as resonant.
const RESONANCE_TOL: f64 = 1e-12;

fn i_omega(omega: f64) -> Complex64 {
    Complex64::new(0.0, omega)
}

/// Critical eigenpair data at a mode-1 Hopf point.
///
/// The right eigenvector is `q = (1, eigvec_v) cos(x/ell)` with eigenvalue
/// `i omega`; the adjoint eigenvector is `q* = 2/(ell pi conj(normalizer))
/// (1, adjvec_v) cos(x/ell)`, scaled so that `<q*, q> = 1` and
/// `<q*, conj q> = 0` in the L2 inner product (conjugate-linear in the first
/// slot).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    /// The Hopf crossing lambda*.
    pub lambda: f64,
    /// Crossing frequency, `sqrt(D_1(lambda*))`.
    pub omega: f64,
    /// Predator component of the right eigenvector:
    /// `c / (i omega + d2/ell^2 + c)`.
    pub eigvec_v: Complex64,
    /// Predator component of the adjoint eigenvector:
    /// `(1 - beta lambda*) / (i omega - d2/ell^2 - c)`.
    pub adjvec_v: Complex64,
    /// Normalization constant `1 + eigvec_v * conj(adjvec_v)`.
    pub normalizer: Complex64,
}

/// Builds and verifies the critical eigenpair at a mode-1 Hopf point.
///
/// The normalization identities are re-checked by midpoint quadrature with
/// [`QUAD_NODES`] nodes; a residual above [`NORMALIZATION_TOL`] reports the
/// point as degenerate rather than silently proceeding.
pub fn eigen_data(point: &HopfPoint, params: &ModelParams) -> Result<EigenData> {
    if point.mode != 1 {
        return Err(Error::domain(
            "mode",
            point.mode as f64,
            "mode-1 Hopf point required",
        ));
    }
    check_lambda(point.lambda, params.beta)?;
    let det = mode_det_unchecked(1, point.lambda, params);
    if det <= 0.0 {
        return Err(Error::Degenerate {
            lambda: point.lambda,
            what: format!("D_1 = {det} <= 0, crossing is not oscillatory"),
        });
    }
    let omega = det.sqrt();
    let diff_v = params.d2 / (params.ell * params.ell);
    let denom = i_omega(omega) + Complex64::new(diff_v + params.c, 0.0);
    let eigvec_v = Complex64::new(params.c, 0.0) / denom;
    let adjvec_v = Complex64::new(1.0 - params.beta * point.lambda, 0.0)
        / (i_omega(omega) - Complex64::new(diff_v + params.c, 0.0));
    let normalizer = Complex64::new(1.0, 0.0)
        - Complex64::new(params.c * (1.0 - params.beta * point.lambda), 0.0) / (denom * denom);

    let ed = EigenData { lambda: point.lambda, omega, eigvec_v, adjvec_v, normalizer };
    let (self_product, conj_product) = normalization_residuals(&ed, params);
    if (self_product - 1.0).norm() > NORMALIZATION_TOL || conj_product.norm() > NORMALIZATION_TOL {
        return Err(Error::Degenerate {
            lambda: point.lambda,
            what: format!(
                "eigenpair normalization residuals |<q*,q>-1| = {:.3e}, |<q*,conj q>| = {:.3e}",
                (self_product - 1.0).norm(),
                conj_product.norm()
            ),
        });
    }
    Ok(ed)
}

/// Quadrature values of `<q*, q>` and `<q*, conj q>`.
pub fn normalization_residuals(ed: &EigenData, params: &ModelParams) -> (Complex64, Complex64) {
    let length = params.ell * PI;
    let scale = Complex64::new(2.0 / length, 0.0) / ed.normalizer;
    let profile = |x: f64| (x / params.ell).cos();
    let self_product = integrate_c(
        |x| {
            let cs = profile(x);
            scale * (Complex64::new(1.0, 0.0) + ed.adjvec_v.conj() * ed.eigvec_v) * cs * cs
        },
        length,
        QUAD_NODES,
    );
    let conj_product = integrate_c(
        |x| {
            let cs = profile(x);
            scale * (Complex64::new(1.0, 0.0) + ed.adjvec_v.conj() * ed.eigvec_v.conj()) * cs * cs
        },
        length,
        QUAD_NODES,
    );
    (self_product, conj_product)
}

/// Quadratic forcing amplitudes: the z^2/2 forcing of the stable complement
/// is `(h20_u, h20_v) cos^2(x/ell)` and the z zbar forcing is
/// `(h11_u, h11_v) cos^2(x/ell)`. The latter pair is real by conjugate
/// symmetry (`h11_v = -(2c/lambda) |1 - eigvec_v|^2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForcing {
    pub h20_u: Complex64,
    pub h20_v: Complex64,
    pub h11_u: f64,
    pub h11_v: f64,
}

/// Evaluates the quadratic forcing amplitudes from the eigenpair.
pub fn quadratic_forcing(ed: &EigenData, params: &ModelParams) -> QuadraticForcing {
    let lambda = ed.lambda;
    let beta = params.beta;
    let c = params.c;
    let one_m = 1.0 - beta * lambda;
    let q2 = ed.eigvec_v;
    let h20_u = Complex64::new(2.0 * one_m / ((1.0 + lambda) * (1.0 + lambda)), 0.0)
        - q2 * (2.0 * one_m / (lambda * (1.0 + lambda)));
    let h20_v = (Complex64::new(1.0, 0.0) - q2) * (Complex64::new(1.0, 0.0) - q2)
        * (-2.0 * c / lambda);
    let h11_u = 2.0 * one_m / ((1.0 + lambda) * (1.0 + lambda))
        - one_m / (lambda * (1.0 + lambda)) * 2.0 * q2.re;
    let h11_v = -2.0 * c / lambda * (Complex64::new(1.0, 0.0) - q2).norm_sqr();
    QuadraticForcing { h20_u, h20_v, h11_u, h11_v }
}

/// Quadratic response of the stable complement:
/// `w20 = w20_cos * cos(2x/ell) + w20_const` and
/// `w11 = w11_cos * cos(2x/ell) + w11_const` (each entry a (u, v) pair).
/// The w11 parts solve real systems and are real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterManifoldCoeffs {
    pub forcing: QuadraticForcing,
    pub w20_cos: [Complex64; 2],
    pub w20_const: [Complex64; 2],
    pub w11_cos: [f64; 2],
    pub w11_const: [f64; 2],
}

/// Solves the four 2x2 resolvent systems for the quadratic response.
///
/// cos^2 splits into its mean and a cos(2x/ell) part, so
/// `(2 i omega - L) w20 = h20` decouples into the mode-2 and mode-0 symbol
/// systems (denominators `-4 omega^2 - 2 i T_n omega + D_n`, n = 2 and 0),
/// and `-L w11 = h11` into real systems with determinants D_2 and D_0.
/// A denominator smaller than [`RESONANCE_TOL`] aborts as degenerate.
pub fn center_manifold(ed: &EigenData, params: &ModelParams) -> Result<CenterManifoldCoeffs> {
    let forcing = quadratic_forcing(ed, params);
    let lambda = ed.lambda;
    let omega = ed.omega;
    let beta = params.beta;
    let c = params.c;
    let one_m = 1.0 - beta * lambda;
    let ell2 = params.ell * params.ell;

    let t2 = mode_trace_unchecked(2, lambda, params);
    let d2_det = mode_det_unchecked(2, lambda, params);
    let t0 = mode_trace_unchecked(0, lambda, params);
    let d0_det = mode_det_unchecked(0, lambda, params);

    let osc_den2 = Complex64::new(-4.0 * omega * omega + d2_det, -2.0 * t2 * omega);
    let osc_den0 = Complex64::new(-4.0 * omega * omega + d0_det, -2.0 * t0 * omega);
    for (name, mag) in [
        ("2 i omega vs mode-2 spectrum", osc_den2.norm()),
        ("2 i omega vs mode-0 spectrum", osc_den0.norm()),
        ("mode-2 determinant", d2_det.abs()),
        ("mode-0 determinant", d0_det.abs()),
    ] {
        if mag < RESONANCE_TOL {
            return Err(Error::Degenerate {
                lambda,
                what: format!("resonant denominator ({name}), |den| = {mag:.3e}"),
            });
        }
    }

    let two_i_omega = i_omega(2.0 * omega);
    let h20 = (forcing.h20_u, forcing.h20_v);
    // Mode-2 block of (2 i omega - L)^{-1} applied to h20/2.
    let w20_cos = [
        (h20.0 * (two_i_omega + Complex64::new(4.0 * params.d2 / ell2 + c, 0.0))
            - h20.1 * one_m)
            / osc_den2
            * 0.5,
        (h20.1 * (two_i_omega + Complex64::new(4.0 * params.d1 / ell2 - p_trace(lambda, beta), 0.0))
            + h20.0 * c)
            / osc_den2
            * 0.5,
    ];
    // Mode-0 block; the (1,1) symbol entry picks up the nonlocal term.
    let w20_const = [
        (h20.0 * (two_i_omega + Complex64::new(c, 0.0)) - h20.1 * one_m) / osc_den0 * 0.5,
        (h20.1 * (two_i_omega - Complex64::new(crate::linear::p_trace0(lambda, beta), 0.0))
            + h20.0 * c)
            / osc_den0
            * 0.5,
    ];
    let (h11_u, h11_v) = (forcing.h11_u, forcing.h11_v);
    let w11_cos = [
        0.5 * (h11_u * (4.0 * params.d2 / ell2 + c) - h11_v * one_m) / d2_det,
        0.5 * (h11_v * (4.0 * params.d1 / ell2 - p_trace(lambda, beta)) + h11_u * c) / d2_det,
    ];
    let w11_const = [
        0.5 * (h11_u * c - h11_v * one_m) / d0_det,
        0.5 * (-h11_v * crate::linear::p_trace0(lambda, beta) + h11_u * c) / d0_det,
    ];

    Ok(CenterManifoldCoeffs { forcing, w20_cos, w20_const, w11_cos, w11_const })
}

/// The three groups of the cubic coefficient:
/// `g21 = quad_w11 + cubic_direct + quad_w20`, where the first pairs the
/// quadratic nonlinearity with w11, the last pairs it with w20, and
/// `cubic_direct` collects the bare cubic terms (all cos^4 integrals).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct G21Breakdown {
    pub quad_w11: Complex64,
    pub cubic_direct: Complex64,
    pub quad_w20: Complex64,
    pub total: Complex64,
}

/// Ingredients of the cubic assembly, shared by the finite-ell and
/// large-ell evaluations.
struct AssemblyInput {
    lambda: f64,
    beta: f64,
    c: f64,
    normalizer: Complex64,
    eigvec_v: Complex64,
    adjvec_v_conj: Complex64,
    w20_cos: [Complex64; 2],
    w20_const: [Complex64; 2],
    w11_cos: [Complex64; 2],
    w11_const: [Complex64; 2],
}

/// Evaluates the post-integration cubic assembly. All spatial integrals have
/// already been collapsed through `int cos^2 = ell pi/2`,
/// `int cos^2 cos(2x/ell) = ell pi/4`, `int cos^4 = 3 ell pi/8`.
fn assemble_g21(input: &AssemblyInput) -> G21Breakdown {
    let AssemblyInput { lambda, beta, c, normalizer, eigvec_v: q2, adjvec_v_conj: qs, .. } = *input;
    let one_m = 1.0 - beta * lambda;
    let one_p = 1.0 + lambda;
    // (1 - beta lambda)/(lambda (1 + lambda)); at the large-ell point this
    // equals c/lambda^2 through the crossing identity.
    let k1 = one_m / (lambda * one_p);
    let edge = 2.0 * lambda / one_p; // 2 lambda/(1+lambda), the u^2 weight ratio
    let [b1, b2] = input.w11_cos;
    let [b3, b4] = input.w11_const;
    let [a1, a2] = input.w20_cos;
    let [a3, a4] = input.w20_const;

    let quad_w11 = ((b1 * edge - b2 - q2 * b1) * k1
        + (b3 * edge - b4 - q2 * b3) * (2.0 * k1)
        - b3 * (2.0 * beta)
        - qs * (Complex64::new(1.0, 0.0) - q2) * (b1 - b2) * (2.0 * c / lambda)
        - qs * (Complex64::new(1.0, 0.0) - q2) * (b3 - b4) * (4.0 * c / lambda))
        / normalizer;

    let q2c = q2.conj();
    let cubic_direct = (Complex64::new(-6.0 * one_m / (one_p * one_p * one_p), 0.0)
        + (q2c + q2 * 2.0) * (2.0 * one_m / (lambda * one_p * one_p))
        - qs * (q2c + q2 * 2.0) * (4.0 * c / (lambda * lambda))
        + qs * (6.0 * c / (lambda * lambda))
        + qs * (q2 * q2 + q2 * q2c * 2.0) * (2.0 * c / (lambda * lambda)))
        * 0.75
        / normalizer;

    let edge_minus_q2c = Complex64::new(edge, 0.0) - q2c;
    let quad_w20 = ((edge_minus_q2c * a1 - a2) * (k1 / 2.0)
        + (edge_minus_q2c * a3 - a4) * k1
        - a3 * beta
        - qs * (Complex64::new(1.0, 0.0) - q2c) * (a1 - a2) * (c / lambda)
        - qs * (Complex64::new(1.0, 0.0) - q2c) * (a3 - a4) * (2.0 * c / lambda))
        / normalizer;

    G21Breakdown {
        quad_w11,
        cubic_direct,
        quad_w20,
        total: quad_w11 + cubic_direct + quad_w20,
    }
}

/// Computes the cubic coefficient with its three-part breakdown at a mode-1
/// Hopf point. The quadratic coefficients g20, g11, g02 vanish identically
/// for this system and are not returned.
pub fn g21_parts(point: &HopfPoint, params: &ModelParams) -> Result<G21Breakdown> {
    let ed = eigen_data(point, params)?;
    let cm = center_manifold(&ed, params)?;
    Ok(assemble_g21(&AssemblyInput {
        lambda: ed.lambda,
        beta: params.beta,
        c: params.c,
        normalizer: ed.normalizer,
        eigvec_v: ed.eigvec_v,
        adjvec_v_conj: ed.adjvec_v.conj(),
        w20_cos: cm.w20_cos,
        w20_const: cm.w20_const,
        w11_cos: [Complex64::new(cm.w11_cos[0], 0.0), Complex64::new(cm.w11_cos[1], 0.0)],
        w11_const: [Complex64::new(cm.w11_const[0], 0.0), Complex64::new(cm.w11_const[1], 0.0)],
    }))
}

/// The cubic normal-form coefficient `g21` at a mode-1 Hopf point.
pub fn g21_finite(point: &HopfPoint, params: &ModelParams) -> Result<Complex64> {
    Ok(g21_parts(point, params)?.total)
}

/// Which side of lambda* the bifurcating orbits occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Orbits exist for lambda > lambda* (mu2 > 0).
    Forward,
    /// Orbits exist for lambda < lambda* (mu2 < 0).
    Backward,
}

/// Orbital stability of the bifurcating periodic solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitStability {
    Stable,
    Unstable,
}

/// Direction and stability data of the bifurcating spatially nonhomogeneous
/// periodic solutions at one mode-1 Hopf point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfNormalForm {
    pub lambda: f64,
    pub b_equivalent: f64,
    pub g21: Complex64,
    /// `g21/2`; the quadratic coefficients vanish identically.
    pub c1: Complex64,
    /// `-Re(c1)/alpha'(lambda*)`; positive means orbits on the right of
    /// lambda*.
    pub mu2: f64,
    /// `Re(g21)`; negative means orbitally asymptotically stable orbits.
    pub beta2: f64,
    pub direction: Direction,
    pub orbit_stability: OrbitStability,
}

/// Assembles the full normal-form verdict at a mode-1 Hopf point.
pub fn normal_form(point: &HopfPoint, params: &ModelParams) -> Result<HopfNormalForm> {
    let g21 = g21_finite(point, params)?;
    let c1 = g21 / 2.0;
    if point.transversality == 0.0 || !point.transversality.is_finite() {
        return Err(Error::Degenerate {
            lambda: point.lambda,
            what: "zero transversality, crossing speed vanishes".into(),
        });
    }
    let mu2 = -c1.re / point.transversality;
    let beta2 = g21.re;
    if beta2 == 0.0 {
        return Err(Error::Degenerate {
            lambda: point.lambda,
            what: "Re(g21) = 0, first Lyapunov quantity degenerate".into(),
        });
    }
    Ok(HopfNormalForm {
        lambda: point.lambda,
        b_equivalent: point.b_equivalent,
        g21,
        c1,
        mu2,
        beta2,
        direction: if mu2 > 0.0 { Direction::Forward } else { Direction::Backward },
        orbit_stability: if beta2 < 0.0 { OrbitStability::Stable } else { OrbitStability::Unstable },
    })
}

/// Closed-form large-domain limits of every normal-form ingredient, plus the
/// assembled cubic parts for cross-checking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLimits {
    pub branch: Branch,
    /// Limit of the crossing lambda*: the root of `p_trace(lambda) = c` on
    /// the chosen side of the trace peak.
    pub lambda: f64,
    pub b_equivalent: f64,
    /// Limit frequency; satisfies `lambda * omega^2 = c^2`.
    pub omega: f64,
    pub eigvec_v: Complex64,
    pub adjvec_v: Complex64,
    pub normalizer: Complex64,
    /// Limits of the quadratic forcing amplitudes (h20_u, h20_v, h11_u,
    /// h11_v); h11_u tends to zero.
    pub forcing: [Complex64; 4],
    pub w20_cos: [Complex64; 2],
    pub w20_const: [Complex64; 2],
    pub w11_cos: [f64; 2],
    pub w11_const: [f64; 2],
    /// Assembled limits of the three cubic groups.
    pub quad_w11: Complex64,
    pub cubic_direct: Complex64,
    pub quad_w20: Complex64,
    /// Independent closed forms of the real parts of the three groups.
    pub re_parts_closed: [f64; 3],
    /// Closed form of `Re(g21)` in the limit; the sign decides stability of
    /// the bifurcating orbits for large domains.
    pub re_g21: f64,
}

impl AsymptoticLimits {
    /// Assembled `Re(g21)` (sum of the three groups); agrees with
    /// [`AsymptoticLimits::re_g21`] up to rounding.
    pub fn re_g21_assembled(&self) -> f64 {
        (self.quad_w11 + self.cubic_direct + self.quad_w20).re
    }
}

/// Evaluates the large-domain limits for the chosen branch.
///
/// Exists iff `(1-c)^2 > 4 beta c`, i.e. the trace peak clears c. The limit
/// crossing solves `beta lambda^2 + (c-1) lambda + c = 0`; the plus branch
/// is the root above the trace peak. The minus root is computed from the
/// root product `c/beta` to avoid cancellation.
pub fn limits_infinity(beta: f64, c: f64, branch: Branch) -> Result<AsymptoticLimits> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain("beta", beta, "(0, inf)"));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain("c", c, "(0, inf)"));
    }
    let disc = (1.0 - c) * (1.0 - c) - 4.0 * beta * c;
    if disc <= 0.0 {
        return Err(Error::domain(
            "c",
            c,
            format!("below the p_trace peak (need (1-c)^2 > 4 beta c, got disc = {disc})"),
        ));
    }
    let root_plus = ((1.0 - c) + disc.sqrt()) / (2.0 * beta);
    let lambda = match branch {
        Branch::Plus => root_plus,
        Branch::Minus => (c / beta) / root_plus,
    };
    let one_p = 1.0 + lambda;
    let one_m = 1.0 - beta * lambda; // equals c (1+lambda)/lambda at the limit
    let omega = (c * one_m / one_p).sqrt();

    let eigvec_v = Complex64::new(lambda / one_p, -c / (omega * one_p));
    let adjvec_v = Complex64::new(-1.0, -omega / c);
    let normalizer = Complex64::new(2.0 / one_p, 2.0 * c / (omega * one_p));

    let h20_u = Complex64::new(0.0, 2.0 * omega / (lambda * one_p));
    let h20_v = Complex64::new(1.0 - lambda, 2.0 * c / omega) * (-2.0 * c / (lambda * one_p * one_p));
    let h11_u = Complex64::new(0.0, 0.0);
    let h11_v = Complex64::new(-2.0 * c / (lambda * one_p), 0.0);

    let w2 = omega * omega;
    let a1 = Complex64::new(1.0 / (3.0 * lambda), -c / (lambda * omega * one_p));
    let a2 = Complex64::new(
        (lambda - 5.0) / (3.0 * one_p * one_p),
        -c * (5.0 * lambda - 1.0) / (3.0 * lambda * omega * one_p * one_p),
    );
    let osc_den0 = Complex64::new(-3.0 * w2 + beta * c * lambda, 2.0 * beta * lambda * omega);
    let a3 = a1 * (-3.0 * w2) / osc_den0;
    // The constant-mode w20 v-component keeps a forcing correction
    // beta lambda h20_v / 2 in the limit.
    let a4 = (a2 * (-3.0 * w2) + h20_v * (beta * lambda / 2.0)) / osc_den0;

    let d0_lim = w2 + beta * c * lambda;
    let b1 = 1.0 / lambda;
    let b2 = 1.0 / one_p;
    let b3 = c * c / (lambda * lambda * d0_lim);
    let b4 = c * (c - beta * lambda) / (lambda * one_p * d0_lim);

    let parts = assemble_g21(&AssemblyInput {
        lambda,
        beta,
        c,
        normalizer,
        eigvec_v,
        adjvec_v_conj: adjvec_v.conj(),
        w20_cos: [a1, a2],
        w20_const: [a3, a4],
        w11_cos: [Complex64::new(b1, 0.0), Complex64::new(b2, 0.0)],
        w11_const: [Complex64::new(b3, 0.0), Complex64::new(b4, 0.0)],
    });

    // Independent closed forms of the real parts.
    let l2 = lambda * lambda;
    let re_quad_w11 =
        7.0 * c / (2.0 * l2 * one_p) + c * (w2 - beta * c * lambda) / (l2 * one_p * d0_lim);
    let re_cubic_direct = -3.0 * c / (4.0 * lambda * one_p * one_p) - 3.0 * c / (2.0 * l2 * one_p);
    let fold = (-3.0 * w2 + beta * c * lambda).powi(2) + 4.0 * beta * beta * l2 * w2;
    let re_quad_w20 = -9.0 * c / (4.0 * l2 * one_p)
        + beta * c * c / (2.0 * l2 * one_p) * (beta * c * lambda * (lambda + 4.0) - w2 * (lambda - 2.0))
            / fold;
    let re_g21 = -3.0 * c / (4.0 * lambda * one_p * one_p) - c / (4.0 * l2 * one_p)
        + c * (w2 - beta * c * lambda) / (l2 * one_p * d0_lim)
        + beta * c * c / (2.0 * l2 * one_p) * (beta * c * lambda * (lambda + 4.0) - w2 * (lambda - 2.0))
            / fold;

    Ok(AsymptoticLimits {
        branch,
        lambda,
        b_equivalent: b_from_lambda(beta, lambda)?,
        omega,
        eigvec_v,
        adjvec_v,
        normalizer,
        forcing: [h20_u, h20_v, h11_u, h11_v],
        w20_cos: [a1, a2],
        w20_const: [a3, a4],
        w11_cos: [b1, b2],
        w11_const: [b3, b4],
        quad_w11: parts.quad_w11,
        cubic_direct: parts.cubic_direct,
        quad_w20: parts.quad_w20,
        re_parts_closed: [re_quad_w11, re_cubic_direct, re_quad_w20],
        re_g21,
    })
}
