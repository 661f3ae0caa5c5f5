//! Bifurcation analysis and simulation for a diffusive Holling-Tanner
//! predator-prey model whose prey competition acts through the spatial
//! average of the prey density on (0, ell*pi).
//!
//! The crate locates and classifies Hopf bifurcations of the constant
//! coexistence state, computes the direction and orbital stability of the
//! bifurcating periodic solutions from center-manifold normal-form data
//! (at finite domain scale and in the large-domain limit), and verifies the
//! predictions with a method-of-lines PDE simulator that also handles the
//! classical pointwise-competition variant for contrast.
//!
//! Module map:
//!
//! * [`model`] -- parameters, rescaling, the coexistence equilibrium;
//! * [`linear`] -- per-mode characteristic data and the stability verdict;
//! * [`hopf`] -- crossing points, scale thresholds, regime classification;
//! * [`normal_form`] -- `g21`, `c1`, `mu2`, `beta2`, and the large-domain
//!   limits;
//! * [`sim`] -- IMEX/explicit simulator with orbit diagnostics;
//! * [`quad`], [`roots`] -- shared numerical helpers.

pub mod error;
pub mod hopf;
pub mod linear;
pub mod model;
pub mod normal_form;
pub mod quad;
pub mod roots;
pub mod sim;

pub use error::{Error, Result};
pub use hopf::{
    ell_thresholds, hopf_points_mode0, hopf_points_mode1, regime_classify, transversality, Branch,
    EllThresholds, HopfPoint, Interval, Profile, RegimeReport, TheoremCase,
};
pub use linear::{
    classify_equilibrium, critical_points, det_quadratic, mode_det, mode_eigenvalues, mode_trace,
    CriticalPoints, FailReason, ModeFailure, StabilityVerdict,
};
pub use model::{b_from_lambda, equilibrium_from_b, Equilibrium, ModelParams, RawParams};
pub use normal_form::{
    eigen_data, g21_finite, g21_parts, limits_infinity, normal_form, AsymptoticLimits, Direction,
    EigenData, G21Breakdown, HopfNormalForm, OrbitStability,
};
pub use sim::{
    diagnose, init_state, mode_amplitude, nonlocal_mean, run, step, Attractor, IcSpec, ModelKind,
    OrbitDiagnostics, RunOutput, Scheme, SimConfig, SimState, Simulator, Snapshot,
};
