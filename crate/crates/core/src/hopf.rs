//! Hopf bifurcation points, spatial-scale thresholds, and the regime map.
//!
//! A mode-n Hopf candidate is a lambda where `T_n(lambda) = 0` while
//! `D_n(lambda) > 0` and no other mode's trace or determinant vanishes; the
//! eigenvalue pair of mode n then crosses the imaginary axis with speed
//! `alpha'(lambda) = T_n'(lambda)/2`. Mode-0 crossings produce spatially
//! homogeneous oscillations; mode-1 crossings produce profiles proportional
//! to cos(x/ell) and are the primary objects of this crate. Modes n >= 2 can
//! also cross, but only at parameters where mode 1 is already unstable; they
//! are reported separately and never analyzed further.
//!
//! Everything here is driven by the two trace reaction curves: mode-1
//! crossings exist iff the peak of `p_trace` clears `c + (d1+d2)/ell^2`,
//! which rearranges into the threshold `ell_1` on the spatial scale; mode-0
//! crossings exist iff `beta < 1` and the peak of `p_trace0` clears `c`.

use crate::error::{Error, Result};
use crate::linear::{
    critical_points, mode_det_unchecked, mode_trace_unchecked, p_ratio, p_trace, p_trace0,
    p_trace0_deriv, p_trace_deriv, classify_equilibrium,
};
use crate::model::{b_from_lambda, ModelParams};
use crate::roots::{bisect, ROOT_TOL};
use serde::{Deserialize, Serialize};

/// Inset used when bracketing roots against interval endpoints or curve
/// maxima, where the defining functions degenerate.
const BRACKET_INSET: f64 = 1e-9;

/// Tolerance below which a nominally nonzero quantity (another mode's trace,
/// a transversality speed) is treated as a degenerate coincidence.
const DEGENERACY_TOL: f64 = 1e-10;

/// Which of the two crossings of a trace-zero pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The crossing above the trace peak (larger lambda, smaller b).
    Plus,
    /// The crossing below the trace peak.
    Minus,
}

/// Spatial profile of the bifurcating periodic solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Mode-0 oscillation, constant in space.
    Homogeneous,
    /// Mode n >= 1 oscillation, leading spatial content cos(n x/ell).
    Nonhomogeneous,
}

/// One Hopf bifurcation candidate of the constant equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfPoint {
    /// Crossing value of the bifurcation parameter.
    pub lambda: f64,
    /// Spatial mode whose eigenvalue pair crosses the axis.
    pub mode: u32,
    /// Crossing frequency, `sqrt(D_mode(lambda))`.
    pub omega: f64,
    /// Crossing speed `alpha'(lambda)` of the eigenvalue real part; equals
    /// half the derivative of the relevant trace reaction curve.
    pub transversality: f64,
    pub profile: Profile,
    /// The same point in b-coordinates.
    pub b_equivalent: f64,
}

impl HopfPoint {
    fn at(mode: u32, lambda: f64, params: &ModelParams) -> Result<HopfPoint> {
        let det = mode_det_unchecked(mode, lambda, params);
        if det <= 0.0 {
            return Err(Error::Degenerate {
                lambda,
                what: format!("mode-{mode} determinant {det} <= 0 at trace crossing"),
            });
        }
        Ok(HopfPoint {
            lambda,
            mode,
            omega: det.sqrt(),
            transversality: transversality(mode, lambda, params),
            profile: if mode == 0 { Profile::Homogeneous } else { Profile::Nonhomogeneous },
            b_equivalent: b_from_lambda(params.beta, lambda)?,
        })
    }
}

/// Crossing speed of the eigenvalue real part at a mode-n trace zero:
/// `p_trace'(lambda)/2` for n >= 1, `p_trace0'(lambda)/2` for n = 0.
pub fn transversality(mode: u32, lambda: f64, params: &ModelParams) -> f64 {
    if mode == 0 {
        p_trace0_deriv(lambda, params.beta) / 2.0
    } else {
        p_trace_deriv(lambda, params.beta) / 2.0
    }
}

/// The two mode-1 trace zeros, when they exist.
///
/// Present iff `T_1(trace_max) > 0`, i.e. `c < p_trace(trace_max)` and
/// `ell > ell_1`; threshold equality counts as absent. The roots straddle
/// the trace peak, `0 < lambda_minus < trace_max < lambda_plus < 1/beta`.
pub fn hopf_points_mode1(params: &ModelParams) -> Result<Option<(HopfPoint, HopfPoint)>> {
    params.validate()?;
    trace_zero_pair(1, params)
}

/// The two mode-0 trace zeros, when they exist (requires `beta < 1` and
/// `c < p_trace0(trace0_max)`); they straddle the peak of `p_trace0`.
pub fn hopf_points_mode0(params: &ModelParams) -> Result<Option<(HopfPoint, HopfPoint)>> {
    params.validate()?;
    if params.beta >= 1.0 {
        return Ok(None);
    }
    trace_zero_pair(0, params)
}

/// Bisects the two zeros of `T_mode` around the relevant trace peak.
fn trace_zero_pair(mode: u32, params: &ModelParams) -> Result<Option<(HopfPoint, HopfPoint)>> {
    let cps = critical_points(params.beta);
    let peak = if mode == 0 {
        match cps.trace0_max {
            Some(l) if l > 0.0 => l,
            _ => return Ok(None),
        }
    } else {
        cps.trace_max
    };
    if mode_trace_unchecked(mode, peak, params) <= 0.0 {
        return Ok(None);
    }
    let hi = params.lambda_max();
    let f = |l: f64| mode_trace_unchecked(mode, l, params);
    let lo_end = BRACKET_INSET * hi;
    let hi_end = hi * (1.0 - BRACKET_INSET);
    let minus = bisect(&f, lo_end, peak, ROOT_TOL)?;
    let plus = bisect(&f, peak, hi_end, ROOT_TOL)?;
    Ok(Some((HopfPoint::at(mode, minus, params)?, HopfPoint::at(mode, plus, params)?)))
}

/// Spatial-scale thresholds controlling which crossings exist at mode 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllThresholds {
    /// `ell_1 = sqrt((d1+d2)/(p_trace(trace_max) - c))`; mode-1 crossings
    /// exist exactly for ell above it. Absent when `c >= p_trace(trace_max)`.
    pub ell_1: Option<f64>,
    /// `sqrt((d1+d2)/(beta*lambda_0_plus))`: above it, the upper mode-0
    /// crossing sits inside the mode-1 unstable window. Absent without
    /// mode-0 crossings.
    pub ell_tilde_plus: Option<f64>,
    /// `sqrt((d1+d2)/(beta*lambda_0_minus))`: above it, both mode-0
    /// crossings sit inside the mode-1 window.
    pub ell_tilde_minus: Option<f64>,
}

/// Computes the three thresholds (independent of the configured ell).
pub fn ell_thresholds(params: &ModelParams) -> Result<EllThresholds> {
    params.validate()?;
    let cps = critical_points(params.beta);
    let gap = p_trace(cps.trace_max, params.beta) - params.c;
    let dsum = params.d1 + params.d2;
    let ell_1 = (gap > 0.0).then(|| (dsum / gap).sqrt());
    let (ell_tilde_plus, ell_tilde_minus) = match mode0_trace_zeros(params)? {
        Some((minus, plus)) => (
            Some((dsum / (params.beta * plus)).sqrt()),
            Some((dsum / (params.beta * minus)).sqrt()),
        ),
        None => (None, None),
    };
    Ok(EllThresholds { ell_1, ell_tilde_plus, ell_tilde_minus })
}

/// Mode-0 trace zeros as bare lambdas (they do not depend on ell).
fn mode0_trace_zeros(params: &ModelParams) -> Result<Option<(f64, f64)>> {
    if params.beta >= 1.0 {
        return Ok(None);
    }
    let cps = critical_points(params.beta);
    let peak = match cps.trace0_max {
        Some(l) if l > 0.0 => l,
        _ => return Ok(None),
    };
    if params.c >= p_trace0(peak, params.beta) {
        return Ok(None);
    }
    let hi = params.lambda_max();
    let f = |l: f64| mode_trace_unchecked(0, l, params);
    let minus = bisect(&f, BRACKET_INSET * hi, peak, ROOT_TOL)?;
    let plus = bisect(&f, peak, hi * (1.0 - BRACKET_INSET), ROOT_TOL)?;
    Ok(Some((minus, plus)))
}

/// Which statement of the stability/bifurcation case analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremCase {
    /// `d1/d2 <= p_ratio(ratio_max)`: some mode determinant may vanish and
    /// the oscillatory case analysis does not apply. Reported, not guessed.
    #[serde(rename = "none")]
    OutsideAnalyzedRegime,
    #[serde(rename = "2.4(i)")]
    StableHighBeta,
    #[serde(rename = "2.4(ii)")]
    Mode1WindowHighBeta,
    #[serde(rename = "2.5(i)")]
    StableLowBeta,
    #[serde(rename = "2.5(ii)")]
    Mode1WindowLowBeta,
    #[serde(rename = "2.6(i1)")]
    Mode0WindowWide,
    #[serde(rename = "2.6(i2)")]
    MixedWindowWideUpper,
    #[serde(rename = "2.6(i3)")]
    Mode1EnclosesWide,
    #[serde(rename = "2.6(ii1)")]
    Mode0WindowNarrow,
    #[serde(rename = "2.6(ii2)")]
    DisjointWindows,
    #[serde(rename = "2.6(ii3)")]
    MixedWindowNarrow,
    #[serde(rename = "2.6(ii4)")]
    Mode1EnclosesNarrow,
}

/// Open lambda interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Full linear regime classification at fixed parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub theorem_case: TheoremCase,
    /// Open intervals on which (lambda, lambda) is locally asymptotically
    /// stable. Together with `unstable_intervals` they partition
    /// (0, 1/beta) up to the bifurcation points.
    pub stable_intervals: Vec<Interval>,
    pub unstable_intervals: Vec<Interval>,
    /// All mode-0/1 crossings satisfying the Hopf conditions, ordered by
    /// lambda. Interval endpoints are drawn from these.
    pub hopf_points: Vec<HopfPoint>,
    /// Trace zeros of modes n >= 2. They occur while mode 1 is already
    /// unstable, so they never lead the bifurcation; listed for completeness.
    pub higher_mode_points: Vec<HopfPoint>,
    /// Set when a strict inequality of the case analysis held only within
    /// [`DEGENERACY_TOL`]-level slack (threshold equality); the report then
    /// describes the non-bifurcating side.
    pub degenerate_boundary: bool,
}

/// Classifies the parameter set into its stability/bifurcation case.
///
/// Requires `d1/d2 > p_ratio(ratio_max)` (all mode determinants positive for
/// every lambda); otherwise the report carries
/// [`TheoremCase::OutsideAnalyzedRegime`] and no intervals.
pub fn regime_classify(params: &ModelParams) -> Result<RegimeReport> {
    params.validate()?;
    let cps = critical_points(params.beta);
    let lambda_hi = params.lambda_max();

    if params.d1 / params.d2 <= p_ratio(cps.ratio_max, params.beta, params.c) {
        return Ok(RegimeReport {
            theorem_case: TheoremCase::OutsideAnalyzedRegime,
            stable_intervals: Vec::new(),
            unstable_intervals: Vec::new(),
            hopf_points: Vec::new(),
            higher_mode_points: Vec::new(),
            degenerate_boundary: false,
        });
    }

    let mode1 = hopf_points_mode1(params)?;
    let mode0 = hopf_points_mode0(params)?;
    let thresholds = ell_thresholds(params)?;
    let mut degenerate = near_threshold(params, &thresholds);

    let high_beta = params.beta >= 1.0;
    let (theorem_case, stable, unstable) = match (&mode0, &mode1) {
        (None, None) => {
            let case = if high_beta { TheoremCase::StableHighBeta } else { TheoremCase::StableLowBeta };
            (case, vec![Interval::new(0.0, lambda_hi)], Vec::new())
        }
        (None, Some((m1m, m1p))) => {
            let case = if high_beta {
                TheoremCase::Mode1WindowHighBeta
            } else {
                TheoremCase::Mode1WindowLowBeta
            };
            (
                case,
                vec![Interval::new(0.0, m1m.lambda), Interval::new(m1p.lambda, lambda_hi)],
                vec![Interval::new(m1m.lambda, m1p.lambda)],
            )
        }
        (Some((m0m, m0p)), mode1) => {
            classify_mode0_present(params, &cps, m0m, m0p, mode1, &mut degenerate)
        }
    };

    let mut hopf_points: Vec<HopfPoint> = Vec::new();
    if let Some((m, p)) = mode0 {
        hopf_points.push(m);
        hopf_points.push(p);
    }
    if let Some((m, p)) = mode1 {
        hopf_points.push(m);
        hopf_points.push(p);
    }
    hopf_points.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    for pt in &hopf_points {
        // Hopf condition: the *other* candidate mode's trace must not vanish
        // at the same parameter value.
        let other = 1 - pt.mode.min(1);
        let t_other = mode_trace_unchecked(other, pt.lambda, params);
        if t_other.abs() < DEGENERACY_TOL || pt.transversality.abs() < DEGENERACY_TOL {
            degenerate = true;
        }
    }

    Ok(RegimeReport {
        theorem_case,
        stable_intervals: stable,
        unstable_intervals: unstable,
        hopf_points,
        higher_mode_points: higher_mode_trace_zeros(params)?,
        degenerate_boundary: degenerate,
    })
}

/// Case analysis when mode-0 crossings exist (beta < 1, c below the
/// `p_trace0` peak). The sub-case is decided by where the mode-0 window sits
/// relative to the trace peak and by ell against the tilde thresholds.
fn classify_mode0_present(
    params: &ModelParams,
    cps: &crate::linear::CriticalPoints,
    m0m: &HopfPoint,
    m0p: &HopfPoint,
    mode1: &Option<(HopfPoint, HopfPoint)>,
    degenerate: &mut bool,
) -> (TheoremCase, Vec<Interval>, Vec<Interval>) {
    let lambda_hi = params.lambda_max();
    let wide = m0p.lambda >= cps.trace_max; // upper mode-0 crossing beyond the trace peak
    if (m0p.lambda - cps.trace_max).abs() < DEGENERACY_TOL {
        *degenerate = true;
    }
    // T_1 at the mode-0 crossings decides the interleaving; positive trace
    // means the crossing lies inside the mode-1 window. Equivalent to
    // comparing ell against the tilde thresholds.
    let mode0_only_case = if wide { TheoremCase::Mode0WindowWide } else { TheoremCase::Mode0WindowNarrow };
    let mode0_window = (
        mode0_only_case,
        vec![Interval::new(0.0, m0m.lambda), Interval::new(m0p.lambda, lambda_hi)],
        vec![Interval::new(m0m.lambda, m0p.lambda)],
    );
    let Some((m1m, m1p)) = mode1 else {
        return mode0_window;
    };

    // T_1 at a mode-0 crossing is positive exactly when that crossing sits
    // inside the mode-1 window; equivalent to comparing ell against the
    // tilde thresholds (upper inside <=> ell > ell_tilde_plus, lower inside
    // <=> ell > ell_tilde_minus).
    let upper_inside = mode_trace_unchecked(1, m0p.lambda, params) > 0.0;
    let lower_inside = mode_trace_unchecked(1, m0m.lambda, params) > 0.0;

    match (wide, upper_inside, lower_inside) {
        // Mode-1 window strictly inside the mode-0 window.
        (true, false, false) => mode0_window,
        // Windows overlap: one unstable stretch from the lower mode-0
        // crossing through the upper mode-1 crossing.
        (true, true, false) | (false, true, false) => (
            if wide { TheoremCase::MixedWindowWideUpper } else { TheoremCase::MixedWindowNarrow },
            vec![Interval::new(0.0, m0m.lambda), Interval::new(m1p.lambda, lambda_hi)],
            vec![Interval::new(m0m.lambda, m1p.lambda)],
        ),
        // Mode-1 window encloses the mode-0 window.
        (_, true, true) => (
            if wide { TheoremCase::Mode1EnclosesWide } else { TheoremCase::Mode1EnclosesNarrow },
            vec![Interval::new(0.0, m1m.lambda), Interval::new(m1p.lambda, lambda_hi)],
            vec![Interval::new(m1m.lambda, m1p.lambda)],
        ),
        // Disjoint windows: two separate unstable intervals.
        (false, false, false) => (
            TheoremCase::DisjointWindows,
            vec![
                Interval::new(0.0, m0m.lambda),
                Interval::new(m0p.lambda, m1m.lambda),
                Interval::new(m1p.lambda, lambda_hi),
            ],
            vec![
                Interval::new(m0m.lambda, m0p.lambda),
                Interval::new(m1m.lambda, m1p.lambda),
            ],
        ),
        // Lower crossing inside but upper outside contradicts the threshold
        // ordering ell_tilde_plus < ell_tilde_minus; only reachable through
        // rounding at a threshold tie. Flag it and report the mode-0 window.
        (_, false, true) => {
            *degenerate = true;
            mode0_window
        }
    }
}

/// Detects threshold equality (within bisection-level slack) between ell and
/// the scale thresholds, or between c and the trace-curve peaks.
fn near_threshold(params: &ModelParams, thresholds: &EllThresholds) -> bool {
    let cps = critical_points(params.beta);
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0);
    if rel(params.c, p_trace(cps.trace_max, params.beta)) {
        return true;
    }
    if params.beta < 1.0 {
        if let Some(peak) = cps.trace0_max {
            if peak > 0.0 && rel(params.c, p_trace0(peak, params.beta)) {
                return true;
            }
        }
    }
    [thresholds.ell_1, thresholds.ell_tilde_plus, thresholds.ell_tilde_minus]
        .iter()
        .flatten()
        .any(|&t| rel(params.ell, t))
}

/// Trace zeros of modes n >= 2 (present once ell exceeds n * ell_1). These
/// crossings happen while T_1 > 0, so the equilibrium is already unstable
/// and they are not primary bifurcations.
fn higher_mode_trace_zeros(params: &ModelParams) -> Result<Vec<HopfPoint>> {
    let cps = critical_points(params.beta);
    let hi = params.lambda_max();
    let mut points = Vec::new();
    for n in 2.. {
        if mode_trace_unchecked(n, cps.trace_max, params) <= 0.0 {
            break;
        }
        let f = |l: f64| mode_trace_unchecked(n, l, params);
        let minus = bisect(&f, BRACKET_INSET * hi, cps.trace_max, ROOT_TOL)?;
        let plus = bisect(&f, cps.trace_max, hi * (1.0 - BRACKET_INSET), ROOT_TOL)?;
        points.push(HopfPoint::at(n, minus, params)?);
        points.push(HopfPoint::at(n, plus, params)?);
    }
    points.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(points)
}

/// Convenience: re-validate a report by sampling the claimed intervals and
/// comparing with the per-lambda mode scan. Used by the property suites.
pub fn verify_report_consistency(
    report: &RegimeReport,
    params: &ModelParams,
    samples_per_interval: usize,
) -> Result<Vec<(f64, bool, bool)>> {
    let mut mismatches = Vec::new();
    for (interval, expect_stable) in report
        .stable_intervals
        .iter()
        .map(|i| (i, true))
        .chain(report.unstable_intervals.iter().map(|i| (i, false)))
    {
        for k in 0..samples_per_interval {
            let frac = (k as f64 + 0.5) / samples_per_interval as f64;
            let lambda = interval.lo + frac * interval.width();
            let verdict = classify_equilibrium(lambda, params)?;
            if verdict.stable != expect_stable {
                mismatches.push((lambda, expect_stable, verdict.stable));
            }
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::mode_trace;

    fn example1(ell: f64) -> ModelParams {
        ModelParams::new(0.8, 1.0, 1.5, 1.2, 0.1, ell).unwrap()
    }

    fn example2(ell: f64) -> ModelParams {
        ModelParams::new(0.4, 0.6, 0.2, 0.5, 0.2, ell).unwrap()
    }

    #[test]
    fn mode1_points_match_quadratic_limits() {
        // At very large ell the crossings approach the roots of
        // p_trace(lambda) = c: for beta=0.2, c=0.2 these are 2 -/+ sqrt(3).
        let p = example2(1e6);
        let (minus, plus) = hopf_points_mode1(&p).unwrap().unwrap();
        assert!((minus.lambda - (2.0 - 3.0_f64.sqrt())).abs() < 1e-5);
        assert!((plus.lambda - (2.0 + 3.0_f64.sqrt())).abs() < 1e-5);

        let p = example1(1e6);
        let (minus, plus) = hopf_points_mode1(&p).unwrap().unwrap();
        assert!((minus.lambda - 0.1472).abs() < 1e-4);
        assert!((plus.lambda - 0.4528).abs() < 1e-4);
    }

    #[test]
    fn mode1_points_straddle_trace_peak_and_vanish_traces() {
        let p = example1(10.0);
        let cps = critical_points(p.beta);
        let (minus, plus) = hopf_points_mode1(&p).unwrap().unwrap();
        assert!(0.0 < minus.lambda && minus.lambda < cps.trace_max);
        assert!(cps.trace_max < plus.lambda && plus.lambda < p.lambda_max());
        for pt in [&minus, &plus] {
            assert!(mode_trace(1, pt.lambda, &p).unwrap().abs() < 1e-10);
            assert!(pt.omega > 0.0);
        }
        assert!(minus.transversality > 0.0);
        assert!(plus.transversality < 0.0);
    }

    #[test]
    fn mode1_points_absent_when_c_dominates() {
        // c above the p_trace peak (0.127 for beta=1.5).
        let p = ModelParams::new(0.8, 1.0, 1.5, 1.2, 0.5, 10.0).unwrap();
        assert!(hopf_points_mode1(&p).unwrap().is_none());
        // c below the peak but domain too small.
        let p = example1(1.0);
        assert!(hopf_points_mode1(&p).unwrap().is_none());
    }

    #[test]
    fn mode0_points_absent_for_high_beta() {
        assert!(hopf_points_mode0(&example1(10.0)).unwrap().is_none());
    }

    #[test]
    fn mode0_points_for_second_example() {
        // beta=0.2, c=0.2 < p_trace0 peak (~0.2144): zeros at 0.5 and 1
        // (roots of 2 lambda^2 - 3 lambda + 1 = 0).
        let p = example2(10.0);
        let (minus, plus) = hopf_points_mode0(&p).unwrap().unwrap();
        assert!((minus.lambda - 0.5).abs() < 1e-10);
        assert!((plus.lambda - 1.0).abs() < 1e-10);
        assert_eq!(minus.profile, Profile::Homogeneous);
        assert!(minus.transversality > 0.0 && plus.transversality < 0.0);
    }

    #[test]
    fn mode0_points_exist_for_tiny_c() {
        // c -> 0+ with beta < 1: crossings approach {0, root of
        // 1 - beta - 2 beta lambda = 0}.
        let p = ModelParams::new(1.0, 1.0, 0.4, 1.0, 1e-6, 5.0).unwrap();
        let (minus, plus) = hopf_points_mode0(&p).unwrap().unwrap();
        assert!(minus.lambda < 1e-4);
        let upper_limit = (1.0 - p.beta) / (2.0 * p.beta);
        assert!((plus.lambda - upper_limit).abs() < 1e-3);
    }

    #[test]
    fn thresholds_closed_form_and_ordering() {
        let p = example2(10.0);
        let th = ell_thresholds(&p).unwrap();
        let cps = critical_points(p.beta);
        let expected_ell1 = ((p.d1 + p.d2) / (p_trace(cps.trace_max, p.beta) - p.c)).sqrt();
        assert!((th.ell_1.unwrap() - expected_ell1).abs() < 1e-12);
        // Zeros at 0.5 and 1.0 give sqrt(1/0.2) and sqrt(1/0.1).
        assert!((th.ell_tilde_plus.unwrap() - 5.0_f64.sqrt()).abs() < 1e-9);
        assert!((th.ell_tilde_minus.unwrap() - 10.0_f64.sqrt()).abs() < 1e-9);
        assert!(th.ell_1.unwrap() < th.ell_tilde_plus.unwrap());
        assert!(th.ell_tilde_plus.unwrap() < th.ell_tilde_minus.unwrap());
    }

    #[test]
    fn threshold_absent_at_equality() {
        // c exactly at the p_trace peak: ell_1 undefined, no division blowup.
        let beta = 1.5;
        let cps = critical_points(beta);
        let c = p_trace(cps.trace_max, beta);
        let p = ModelParams::new(0.8, 1.0, beta, 1.2, c, 10.0).unwrap();
        let th = ell_thresholds(&p).unwrap();
        assert!(th.ell_1.is_none());
        assert!(hopf_points_mode1(&p).unwrap().is_none());
    }

    #[test]
    fn transversality_matches_trace_derivative() {
        // alpha'(lambda) = T_n'(lambda)/2 via central differences on T_n.
        let p = example1(10.0);
        let (minus, plus) = hopf_points_mode1(&p).unwrap().unwrap();
        for pt in [minus, plus] {
            let h = 1e-6;
            let fd = (mode_trace(1, pt.lambda + h, &p).unwrap()
                - mode_trace(1, pt.lambda - h, &p).unwrap())
                / (2.0 * h)
                / 2.0;
            assert!(
                (pt.transversality - fd).abs() <= 1e-6 * fd.abs().max(1e-3),
                "analytic {} vs fd {}",
                pt.transversality,
                fd
            );
        }
        // At the trace peak the speed would vanish.
        let cps = critical_points(p.beta);
        assert!(transversality(1, cps.trace_max, &p).abs() < 1e-12);
    }

    #[test]
    fn regime_example1_is_mode1_window() {
        let report = regime_classify(&example1(10.0)).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::Mode1WindowHighBeta);
        assert_eq!(report.stable_intervals.len(), 2);
        assert_eq!(report.unstable_intervals.len(), 1);
        assert_eq!(report.hopf_points.len(), 2);
        assert!(report.stable_intervals[1].hi - 2.0 / 3.0 < 1e-12);
        assert!(!report.degenerate_boundary);
        assert!(verify_report_consistency(&report, &example1(10.0), 50)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn regime_stable_when_c_large() {
        let p = ModelParams::new(0.8, 1.0, 1.5, 1.2, 0.5, 10.0).unwrap();
        let report = regime_classify(&p).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::StableHighBeta);
        assert_eq!(report.stable_intervals.len(), 1);
        assert!(report.unstable_intervals.is_empty());
        assert!(report.hopf_points.is_empty());
    }

    #[test]
    fn regime_example2_large_ell_mode1_encloses() {
        // beta=0.2, c=0.2, ell=10 > ell_tilde_minus = sqrt(10).
        let report = regime_classify(&example2(10.0)).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::Mode1EnclosesNarrow);
        assert_eq!(report.hopf_points.len(), 4);
        // Ordering: lambda_1- < lambda_0- < lambda_0+ < trace_max < lambda_1+.
        let l: Vec<f64> = report.hopf_points.iter().map(|p| p.lambda).collect();
        let modes: Vec<u32> = report.hopf_points.iter().map(|p| p.mode).collect();
        assert_eq!(modes, vec![1, 0, 0, 1]);
        let cps = critical_points(0.2);
        assert!(l[0] < l[1] && l[1] < l[2] && l[2] < cps.trace_max && cps.trace_max < l[3]);
        assert!(verify_report_consistency(&report, &example2(10.0), 50)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn regime_cases_sweep_all_narrow_subcases() {
        // beta=0.2, c=0.2: ell_1 ~ 2.131, tilde+ ~ 2.236, tilde- ~ 3.162.
        for (ell, expect) in [
            (2.0, TheoremCase::Mode0WindowNarrow),
            (2.2, TheoremCase::DisjointWindows),
            (2.7, TheoremCase::MixedWindowNarrow),
            (10.0, TheoremCase::Mode1EnclosesNarrow),
        ] {
            let p = example2(ell);
            let report = regime_classify(&p).unwrap();
            assert_eq!(report.theorem_case, expect, "ell = {ell}");
            // Literal ordering chains per case.
            let l: Vec<f64> = report.hopf_points.iter().map(|q| q.lambda).collect();
            assert!(l.windows(2).all(|w| w[0] < w[1]));
            match expect {
                TheoremCase::DisjointWindows => {
                    let modes: Vec<u32> = report.hopf_points.iter().map(|q| q.mode).collect();
                    assert_eq!(modes, vec![0, 0, 1, 1]);
                    assert_eq!(report.unstable_intervals.len(), 2);
                }
                TheoremCase::MixedWindowNarrow => {
                    let modes: Vec<u32> = report.hopf_points.iter().map(|q| q.mode).collect();
                    assert_eq!(modes, vec![0, 1, 0, 1]);
                }
                _ => {}
            }
            assert!(
                verify_report_consistency(&report, &p, 50).unwrap().is_empty(),
                "interval mismatch at ell = {ell}"
            );
        }
    }

    #[test]
    fn regime_cases_sweep_wide_subcases() {
        // beta=0.05, c=0.1, d1=3, d2=1: upper mode-0 crossing (8.38) beyond
        // the trace peak (3.58); tilde+ ~ 3.09, tilde- ~ 25.9.
        for (ell, expect) in [
            (2.5, TheoremCase::Mode0WindowWide),
            (10.0, TheoremCase::MixedWindowWideUpper),
            (30.0, TheoremCase::Mode1EnclosesWide),
        ] {
            let p = ModelParams::new(3.0, 1.0, 0.05, 1.0, 0.1, ell).unwrap();
            let report = regime_classify(&p).unwrap();
            assert_eq!(report.theorem_case, expect, "ell = {ell}");
            assert!(
                verify_report_consistency(&report, &p, 50).unwrap().is_empty(),
                "interval mismatch at ell = {ell}"
            );
        }
    }

    #[test]
    fn regime_low_beta_no_mode0() {
        // beta=0.2, c=0.25 above the p_trace0 peak but below the p_trace
        // peak: pure mode-1 window.
        let p = ModelParams::new(0.4, 0.6, 0.2, 0.5, 0.25, 10.0).unwrap();
        let report = regime_classify(&p).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::Mode1WindowLowBeta);
        assert!(verify_report_consistency(&report, &p, 50).unwrap().is_empty());
        // Small ell: stable everywhere.
        let p = ModelParams::new(0.4, 0.6, 0.2, 0.5, 0.25, 1.5).unwrap();
        let report = regime_classify(&p).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::StableLowBeta);
    }

    #[test]
    fn regime_outside_analyzed_region_is_reported() {
        // Tiny d1/d2 violates the determinant premise.
        let p = ModelParams::new(1e-4, 1.0, 0.4, 1.0, 0.08, 10.0).unwrap();
        let report = regime_classify(&p).unwrap();
        assert_eq!(report.theorem_case, TheoremCase::OutsideAnalyzedRegime);
        assert!(report.stable_intervals.is_empty() && report.hopf_points.is_empty());
    }

    #[test]
    fn higher_modes_reported_not_primary() {
        // Large ell: several higher-mode trace zeros exist.
        let p = example1(30.0);
        let report = regime_classify(&p).unwrap();
        assert!(!report.higher_mode_points.is_empty());
        for pt in &report.higher_mode_points {
            assert!(pt.mode >= 2);
            // Mode 1 is already unstable where a higher mode crosses.
            assert!(mode_trace(1, pt.lambda, &p).unwrap() > 0.0);
        }
        // They nest strictly inside the mode-1 window.
        let (m1m, m1p) = hopf_points_mode1(&p).unwrap().unwrap();
        for pt in &report.higher_mode_points {
            assert!(m1m.lambda < pt.lambda && pt.lambda < m1p.lambda);
        }
    }

    #[test]
    fn mode1_crossings_approach_limit_monotonically_in_ell() {
        let base = example1(10.0);
        let th = ell_thresholds(&base).unwrap();
        let ell1 = th.ell_1.unwrap();
        let mut prev_minus = f64::INFINITY;
        let mut prev_plus = 0.0;
        for ell in [ell1 * 1.01, 10.0, 100.0, 1000.0] {
            let p = base.with_ell(ell).unwrap();
            let (minus, plus) = hopf_points_mode1(&p).unwrap().unwrap();
            assert!(minus.lambda < prev_minus && plus.lambda > prev_plus);
            prev_minus = minus.lambda;
            prev_plus = plus.lambda;
        }
        assert!((prev_minus - 0.1472).abs() < 1e-3);
        assert!((prev_plus - 0.4528).abs() < 1e-3);
    }
}
