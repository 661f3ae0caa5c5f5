//! Method-of-lines simulator for the nonlocal system and its pointwise
//! (local) counterpart.
//!
//! Space is a uniform cell-centered grid on (0, ell*pi); no-flux boundaries
//! enter through ghost-cell reflection, which keeps the three-point Laplacian
//! second order and makes the discrete mean of a constant field exact. Time
//! stepping is IMEX by default: diffusion implicit (one tridiagonal solve per
//! field per step), reaction and the nonlocal mean explicit. The mean is a
//! bounded rank-one term, so it carries no stiffness; diffusion is the only
//! stiff part.
//!
//! The `v^2/u` kinetics are singular at u = 0; any cell dropping below
//! [`BLOWUP_FLOOR`] aborts the run with a diagnostic instead of continuing
//! into garbage.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Prey floor below which the kinetics count as blown up.
pub const BLOWUP_FLOOR: f64 = 1e-8;

/// Probe oscillation below which a tail classifies as steady.
const STEADY_TOL: f64 = 1e-8;

/// Relative spread allowed between consecutive peak intervals.
const PERIOD_MATCH: f64 = 0.01;

/// Relative spread allowed between consecutive peak amplitudes.
const AMPLITUDE_MATCH: f64 = 0.02;

/// Number of cosine-mode amplitudes tracked by the diagnostics.
pub const TRACKED_MODES: usize = 5;

/// Time integrator choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Implicit diffusion, explicit reaction and nonlocal mean.
    Imex,
    /// Fully explicit Euler; subject to the diffusive CFL bound.
    Explicit,
}

/// Which competition term the prey equation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Competition through the spatial mean of u.
    Nonlocal,
    /// Classical pointwise competition `u (1 - beta u)`.
    Local,
}

/// Initial condition specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IcSpec {
    /// `u = v = value` everywhere.
    Constant { value: f64 },
    /// Preset 1: `u = 0.5 + 0.05 x^2/(ell pi)^2`, `v = 0.5 + 0.05 cos^2 x`.
    Fig1,
    /// Preset 2: `u = 3 + 0.5 x^2/(ell pi)^2`, `v = 3 + 0.5 cos^2 x`.
    Fig2,
    /// `u = base + amplitude_u cos(mode x/ell)`, same for v.
    ModePerturbation {
        base: f64,
        amplitude_u: f64,
        amplitude_v: f64,
        mode: u32,
    },
    /// Explicit cell values (lengths must equal `n_cells`).
    Profiles { u: Vec<f64>, v: Vec<f64> },
}

/// Discretization and run-control parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n_cells: usize,
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub model: ModelKind,
    /// Leading fraction of the run discarded before diagnostics.
    pub transient_fraction: f64,
    /// Grid index of the probe signal (default 0: the boundary cell, where
    /// the mode-1 amplitude is extremal).
    pub probe_index: usize,
    /// Snapshot cadence in steps.
    pub sample_every: usize,
}

impl SimConfig {
    /// Defaults scaled to the domain: 25.6 cells per unit of ell (256 at
    /// ell = 10), dt = 0.01, IMEX, nonlocal.
    pub fn defaults_for(params: &ModelParams) -> SimConfig {
        let n_cells = ((25.6 * params.ell).round() as usize).max(32);
        let steps = (3000.0 / 0.01) as usize;
        SimConfig {
            n_cells,
            dt: 0.01,
            t_end: 3000.0,
            scheme: Scheme::Imex,
            model: ModelKind::Nonlocal,
            transient_fraction: 0.3,
            probe_index: 0,
            sample_every: (steps / 400).max(1),
        }
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        if self.n_cells < 32 {
            return Err(Error::Config(format!("n_cells = {} < 32", self.n_cells)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Config(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_end > self.dt) {
            return Err(Error::Config(format!(
                "t_end = {} must exceed dt = {}",
                self.t_end, self.dt
            )));
        }
        if !(self.transient_fraction > 0.0 && self.transient_fraction < 1.0) {
            return Err(Error::Config(format!(
                "transient_fraction = {} outside (0, 1)",
                self.transient_fraction
            )));
        }
        if self.probe_index >= self.n_cells {
            return Err(Error::Config(format!(
                "probe_index = {} >= n_cells = {}",
                self.probe_index, self.n_cells
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::Config("sample_every must be >= 1".into()));
        }
        if self.scheme == Scheme::Explicit {
            let dx = params.ell * PI / self.n_cells as f64;
            let bound = dx * dx / (2.0 * params.d1.max(params.d2));
            if self.dt > bound {
                return Err(Error::Config(format!(
                    "explicit scheme violates the diffusive CFL bound: dt = {} > {bound}",
                    self.dt
                )));
            }
        }
        Ok(())
    }

    pub fn dx(&self, params: &ModelParams) -> f64 {
        params.ell * PI / self.n_cells as f64
    }
}

/// Discretized fields at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Samples the initial condition at the cell centers, rejecting
/// non-positive data.
pub fn init_state(config: &SimConfig, ic: &IcSpec, params: &ModelParams) -> Result<SimState> {
    config.validate(params)?;
    let n = config.n_cells;
    let dx = config.dx(params);
    let length = params.ell * PI;
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dx).collect();
    let (u, v): (Vec<f64>, Vec<f64>) = match ic {
        IcSpec::Constant { value } => (vec![*value; n], vec![*value; n]),
        IcSpec::Fig1 => (
            xs.iter().map(|&x| 0.5 + 0.05 * x * x / (length * length)).collect(),
            xs.iter().map(|&x| 0.5 + 0.05 * x.cos() * x.cos()).collect(),
        ),
        IcSpec::Fig2 => (
            xs.iter().map(|&x| 3.0 + 0.5 * x * x / (length * length)).collect(),
            xs.iter().map(|&x| 3.0 + 0.5 * x.cos() * x.cos()).collect(),
        ),
        IcSpec::ModePerturbation { base, amplitude_u, amplitude_v, mode } => (
            xs.iter().map(|&x| base + amplitude_u * (*mode as f64 * x / params.ell).cos()).collect(),
            xs.iter().map(|&x| base + amplitude_v * (*mode as f64 * x / params.ell).cos()).collect(),
        ),
        IcSpec::Profiles { u, v } => {
            if u.len() != n || v.len() != n {
                return Err(Error::Config(format!(
                    "profile lengths ({}, {}) do not match n_cells = {n}",
                    u.len(),
                    v.len()
                )));
            }
            (u.clone(), v.clone())
        }
    };
    for (name, field) in [("u", &u), ("v", &v)] {
        if let Some(&bad) = field.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
            return Err(Error::domain("initial data", bad, format!("{name} > 0 everywhere")));
        }
    }
    Ok(SimState { t: 0.0, u, v })
}

/// Spatial mean `(1/(ell pi)) \int u dx` on the cell-centered grid; exact
/// for constant fields.
pub fn nonlocal_mean(u: &[f64]) -> f64 {
    u.iter().sum::<f64>() / u.len() as f64
}

/// Cosine-mode amplitude `c_n = (2 - delta_{n0})/(ell pi) \int u cos(n x/ell) dx`.
pub fn mode_amplitude(u: &[f64], n: u32, ell: f64) -> f64 {
    let len = u.len() as f64;
    let dx = ell * PI / len;
    let weight = if n == 0 { 1.0 } else { 2.0 };
    let sum: f64 = u
        .iter()
        .enumerate()
        .map(|(i, &ui)| ui * ((n as f64) * ((i as f64 + 0.5) * dx) / ell).cos())
        .sum();
    weight * sum * dx / (ell * PI)
}

/// Cached Thomas factorization of `(I - r * Lap)` with reflecting ends.
struct Tridiag {
    off: f64,
    upper_scaled: Vec<f64>,
    inv_diag: Vec<f64>,
}

impl Tridiag {
    fn new(n: usize, r: f64) -> Tridiag {
        let mut upper_scaled = vec![0.0; n];
        let mut inv_diag = vec![0.0; n];
        let diag = |i: usize| if i == 0 || i == n - 1 { 1.0 + r } else { 1.0 + 2.0 * r };
        let off = -r;
        let mut denom = diag(0);
        inv_diag[0] = 1.0 / denom;
        upper_scaled[0] = off / denom;
        for i in 1..n {
            denom = diag(i) - off * upper_scaled[i - 1];
            inv_diag[i] = 1.0 / denom;
            if i < n - 1 {
                upper_scaled[i] = off * inv_diag[i];
            }
        }
        Tridiag { off, upper_scaled, inv_diag }
    }

    fn solve_in_place(&self, d: &mut [f64]) {
        let n = d.len();
        d[0] *= self.inv_diag[0];
        for i in 1..n {
            d[i] = (d[i] - self.off * d[i - 1]) * self.inv_diag[i];
        }
        for i in (0..n - 1).rev() {
            d[i] -= self.upper_scaled[i] * d[i + 1];
        }
    }
}

/// Reusable stepper with cached diffusion factorizations and scratch space.
pub struct Simulator {
    params: ModelParams,
    config: SimConfig,
    solver_u: Tridiag,
    solver_v: Tridiag,
    rate_u: Vec<f64>,
    rate_v: Vec<f64>,
}

impl Simulator {
    pub fn new(params: &ModelParams, config: &SimConfig) -> Result<Simulator> {
        config.validate(params)?;
        let dx = config.dx(params);
        let n = config.n_cells;
        Ok(Simulator {
            params: *params,
            config: *config,
            solver_u: Tridiag::new(n, config.dt * params.d1 / (dx * dx)),
            solver_v: Tridiag::new(n, config.dt * params.d2 / (dx * dx)),
            rate_u: vec![0.0; n],
            rate_v: vec![0.0; n],
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Advances the state by one dt.
    pub fn step(&mut self, state: &mut SimState) -> Result<()> {
        let p = &self.params;
        let n = self.config.n_cells;
        debug_assert_eq!(state.u.len(), n);

        if let Some(&umin) = state.u.iter().min_by(|a, b| a.total_cmp(b)) {
            if umin < BLOWUP_FLOOR || !umin.is_finite() {
                return Err(Error::Blowup {
                    t: state.t,
                    what: format!("min u = {umin} at the v^2/u singularity guard"),
                });
            }
        }

        let mean_u = nonlocal_mean(&state.u);
        for i in 0..n {
            let (u, v) = (state.u[i], state.v[i]);
            let competition = match self.config.model {
                ModelKind::Nonlocal => mean_u,
                ModelKind::Local => u,
            };
            self.rate_u[i] = u * (1.0 - p.beta * competition) - p.b * u * v / (u + 1.0);
            self.rate_v[i] = p.c * v * (1.0 - v / u);
        }

        let dt = self.config.dt;
        match self.config.scheme {
            Scheme::Imex => {
                for i in 0..n {
                    state.u[i] += dt * self.rate_u[i];
                    state.v[i] += dt * self.rate_v[i];
                }
                self.solver_u.solve_in_place(&mut state.u);
                self.solver_v.solve_in_place(&mut state.v);
            }
            Scheme::Explicit => {
                let dx = self.config.dx(p);
                let (ru, rv) = (p.d1 / (dx * dx), p.d2 / (dx * dx));
                let lap = |f: &[f64], i: usize| {
                    let left = if i == 0 { f[0] } else { f[i - 1] };
                    let right = if i == n - 1 { f[n - 1] } else { f[i + 1] };
                    left - 2.0 * f[i] + right
                };
                for i in 0..n {
                    self.rate_u[i] += ru * lap(&state.u, i);
                    self.rate_v[i] += rv * lap(&state.v, i);
                }
                for i in 0..n {
                    state.u[i] += dt * self.rate_u[i];
                    state.v[i] += dt * self.rate_v[i];
                }
            }
        }
        state.t += dt;
        Ok(())
    }
}

/// One-shot convenience step (builds the factorization each call; use
/// [`Simulator`] for loops).
pub fn step(state: &SimState, config: &SimConfig, params: &ModelParams) -> Result<SimState> {
    let mut sim = Simulator::new(params, config)?;
    let mut next = state.clone();
    sim.step(&mut next)?;
    Ok(next)
}

/// Long-run attractor classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attractor {
    Steady,
    Periodic,
    Undetermined,
}

/// Tail diagnostics of a completed run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDiagnostics {
    pub converged_to: Attractor,
    /// Mean peak-to-peak interval of the probe, when periodic.
    pub period: Option<f64>,
    /// Half the probe's tail oscillation band.
    pub amplitude_u: f64,
    /// Time-averaged |c_n| of the prey field over the final period (over the
    /// whole tail when no period was found), for n = 0..4.
    pub mode_amp: [f64; TRACKED_MODES],
}

/// Field snapshot kept at the sampling cadence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Everything a completed run returns.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub snapshots: Vec<Snapshot>,
    /// Probe signal u(probe) at every step (element 0 is the initial value).
    pub probe_u: Vec<f64>,
    pub diagnostics: OrbitDiagnostics,
    pub final_state: SimState,
}

/// Integrates to t_end, then classifies the post-transient tail.
///
/// Blow-ups propagate as errors carrying the failure time; data gathered up
/// to that point is discarded here (the CLI layer retains partial CSV).
pub fn run(params: &ModelParams, config: &SimConfig, ic: &IcSpec) -> Result<RunOutput> {
    let mut sim = Simulator::new(params, config)?;
    let mut state = init_state(config, ic, params)?;
    let steps = (config.t_end / config.dt).round() as usize;

    // Mode amplitudes are tracked on a stride that caps the series length.
    let mode_stride = (steps / 100_000).max(1);

    let mut probe_u = Vec::with_capacity(steps + 1);
    let mut snapshots = Vec::new();
    let mut modes: Vec<(f64, [f64; TRACKED_MODES])> = Vec::new();

    let record_modes = |state: &SimState, modes: &mut Vec<(f64, [f64; TRACKED_MODES])>| {
        let mut amps = [0.0; TRACKED_MODES];
        for (n, amp) in amps.iter_mut().enumerate() {
            *amp = mode_amplitude(&state.u, n as u32, params.ell);
        }
        modes.push((state.t, amps));
    };

    probe_u.push(state.u[config.probe_index]);
    snapshots.push(Snapshot { t: state.t, u: state.u.clone(), v: state.v.clone() });
    record_modes(&state, &mut modes);

    for k in 1..=steps {
        sim.step(&mut state)?;
        probe_u.push(state.u[config.probe_index]);
        if k % config.sample_every == 0 || k == steps {
            snapshots.push(Snapshot { t: state.t, u: state.u.clone(), v: state.v.clone() });
        }
        if k % mode_stride == 0 {
            record_modes(&state, &mut modes);
        }
    }

    let diagnostics = diagnose(&probe_u, config.dt, config.transient_fraction, &modes);
    Ok(RunOutput { snapshots, probe_u, diagnostics, final_state: state })
}

/// Classifies the probe tail: steady below [`STEADY_TOL`] oscillation;
/// periodic when the last six three-point peaks have intervals within 1%
/// and amplitudes within 2% of their means; undetermined otherwise.
pub fn diagnose(
    probe: &[f64],
    dt: f64,
    transient_fraction: f64,
    modes: &[(f64, [f64; TRACKED_MODES])],
) -> OrbitDiagnostics {
    let start = ((probe.len() as f64) * transient_fraction) as usize;
    let tail = &probe[start.min(probe.len() - 1)..];
    let tail_t0 = start as f64 * dt;
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let osc = hi - lo;
    let amplitude_u = osc / 2.0;

    let mode_average = |t_from: f64, modes: &[(f64, [f64; TRACKED_MODES])]| {
        let mut acc = [0.0; TRACKED_MODES];
        let mut count = 0usize;
        for (t, amps) in modes {
            if *t >= t_from {
                for (a, b) in acc.iter_mut().zip(amps) {
                    *a += b.abs();
                }
                count += 1;
            }
        }
        if count > 0 {
            for a in acc.iter_mut() {
                *a /= count as f64;
            }
        }
        acc
    };

    if osc < STEADY_TOL {
        return OrbitDiagnostics {
            converged_to: Attractor::Steady,
            period: None,
            amplitude_u,
            mode_amp: mode_average(tail_t0, modes),
        };
    }

    // Three-point local maxima of the tail.
    let mut peaks: Vec<usize> = Vec::new();
    for i in 1..tail.len().saturating_sub(1) {
        if tail[i] > tail[i - 1] && tail[i] > tail[i + 1] {
            peaks.push(i);
        }
    }
    if peaks.len() >= 6 {
        let last = &peaks[peaks.len() - 6..];
        let intervals: Vec<f64> = last.windows(2).map(|w| (w[1] - w[0]) as f64 * dt).collect();
        let mean_interval = intervals.iter().sum::<f64>() / intervals.len() as f64;
        // Peak amplitude as prominence over the preceding trough; a decaying
        // oscillation fails the 2% match on these even when a mean offset
        // would mask it.
        let heights: Vec<f64> = last
            .iter()
            .map(|&i| {
                let from = i.saturating_sub((1.2 * mean_interval / dt) as usize);
                let trough = tail[from..i].iter().fold(f64::INFINITY, |m, &x| m.min(x));
                tail[i] - trough
            })
            .collect();
        let mean_height = heights.iter().sum::<f64>() / heights.len() as f64;
        let intervals_ok = intervals
            .iter()
            .all(|iv| (iv - mean_interval).abs() <= PERIOD_MATCH * mean_interval);
        let heights_ok = mean_height > 0.0
            && heights
                .iter()
                .all(|h| (h - mean_height).abs() <= AMPLITUDE_MATCH * mean_height);
        if intervals_ok && heights_ok {
            let t_final = (probe.len() - 1) as f64 * dt;
            return OrbitDiagnostics {
                converged_to: Attractor::Periodic,
                period: Some(mean_interval),
                amplitude_u,
                mode_amp: mode_average(t_final - mean_interval, modes),
            };
        }
    }

    OrbitDiagnostics {
        converged_to: Attractor::Undetermined,
        period: None,
        amplitude_u,
        mode_amp: mode_average(tail_t0, modes),
    }
}
