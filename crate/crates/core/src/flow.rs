//! Radial Cauchy problem `u_t + F(D²u) = 0`, the rescaling `T_σ`, and the
//! continuous rescaling flow whose stationary state is `(α⁺, φ⁺)`.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::mesh::{ProfileField, RadialGrid};
use crate::operator::OperatorSpec;
use crate::radial::{EigenResult, Method};
use crate::stencil::RadialStencil;

/// Radial solution `u(·, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicState {
    pub t: f64,
    pub values: ProfileField,
}

/// Largest stable explicit step `h²/(2nΛ)`.
pub fn cfl_bound(spec: &OperatorSpec, grid: &RadialGrid) -> f64 {
    let h = grid.h();
    h * h / (2.0 * grid.dim() as f64 * spec.bounds().Lambda())
}

/// Forward Euler for `u_t + F_h(u) = 0` with `u(R_max) = 0`.
#[derive(Debug, Clone)]
pub struct ExplicitStepper {
    grid: RadialGrid,
    stencil: RadialStencil,
    bound: f64,
    work: Vec<f64>,
}

impl ExplicitStepper {
    pub fn new(spec: &OperatorSpec, grid: &RadialGrid) -> Self {
        Self {
            grid: *grid,
            stencil: RadialStencil::new(spec, grid, false),
            bound: cfl_bound(spec, grid),
            work: vec![0.0; grid.len()],
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn cfl_bound(&self) -> f64 {
        self.bound
    }

    /// Advance `u` in place by `dt`.
    pub fn step_in_place(&mut self, u: &mut [f64], dt: f64) -> Result<()> {
        if !(dt >= 0.0) || dt > self.bound * (1.0 + 1e-12) {
            return Err(Error::CflViolation { dt, bound: self.bound });
        }
        let rows = self.stencil.rows();
        self.stencil.apply(u, &mut self.work);
        for (x, w) in u[..rows].iter_mut().zip(&self.work) {
            *x -= dt * w;
        }
        u[rows] = 0.0;
        Ok(())
    }

    pub fn step(&mut self, state: &ParabolicState, dt: f64) -> Result<ParabolicState> {
        if state.values.grid != self.grid {
            return Err(Error::InvalidArgument("state lives on a different grid".into()));
        }
        let mut values = state.values.clone();
        self.step_in_place(&mut values.values, dt)?;
        Ok(ParabolicState { t: state.t + dt, values })
    }
}

/// One explicit step; fails with [`Error::CflViolation`] above `h²/(2nΛ)`.
pub fn step_explicit(spec: &OperatorSpec, state: &ParabolicState, dt: f64) -> Result<ParabolicState> {
    ExplicitStepper::new(spec, &state.values.grid).step(state, dt)
}

/// Origin values along a run plus full profiles at requested times.
#[derive(Debug, Clone, Default)]
pub struct ParabolicTrace {
    pub snapshots: Vec<(f64, f64)>,
    pub cstar_estimates: Vec<(f64, f64)>,
    pub profile_snapshots: Vec<ParabolicState>,
}

impl ParabolicTrace {
    fn record(&mut self, t: f64, u0: f64, alpha: Option<f64>) {
        self.snapshots.push((t, u0));
        if let Some(a) = alpha {
            self.cstar_estimates.push((t, t.powf(a) * u0));
        }
    }

    /// Profile recorded at time `t`, if any.
    pub fn profile_at(&self, t: f64) -> Option<&ParabolicState> {
        self.profile_snapshots.iter().find(|s| (s.t - t).abs() <= 1e-9 * t.max(1.0))
    }

    /// CSV with header `t,u0,cstar_est`; the last column is empty when no
    /// exponent was supplied.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,u0,cstar_est")?;
        for (k, (t, u0)) in self.snapshots.iter().enumerate() {
            match self.cstar_estimates.get(k) {
                Some((_, c)) => writeln!(out, "{t:.16e},{u0:.16e},{c:.16e}")?,
                None => writeln!(out, "{t:.16e},{u0:.16e},")?,
            }
        }
        Ok(())
    }

    /// Write `profile_t<time>.csv` for every stored profile; returns the paths.
    pub fn write_profiles(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut paths = Vec::new();
        for s in &self.profile_snapshots {
            let path = dir.join(profile_file_name(s.t));
            let file = std::fs::File::create(&path)?;
            s.values.write_csv(std::io::BufWriter::new(file))?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// `profile_t<time>.csv`.
pub fn profile_file_name(t: f64) -> String {
    format!("profile_t{t}.csv")
}

fn check_data(g: &ProfileField, t_final: f64, snapshot_times: &[f64]) -> Result<()> {
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidArgument(format!("t_final must be positive, got {t_final}")));
    }
    if g.values.iter().any(|v| !(*v >= 0.0)) || g.values.iter().all(|v| *v == 0.0) {
        return Err(Error::InvalidArgument("initial data must be nonnegative and not identically zero".into()));
    }
    if snapshot_times.windows(2).any(|w| w[1] <= w[0]) || snapshot_times.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::InvalidArgument("snapshot times must be positive and increasing".into()));
    }
    Ok(())
}

/// March `u` from `t` to `target` with steps no larger than `dt`, landing
/// exactly on `target`.
fn march(
    stepper: &mut ExplicitStepper,
    u: &mut [f64],
    t: &mut f64,
    target: f64,
    dt: f64,
    trace: &mut ParabolicTrace,
    alpha: Option<f64>,
) -> Result<()> {
    while *t < target {
        let remaining = target - *t;
        let (step, next) = if remaining <= dt * (1.0 + 1e-9) { (remaining, target) } else { (dt, *t + dt) };
        stepper.step_in_place(u, step)?;
        *t = next;
        trace.record(*t, u[0], alpha);
    }
    Ok(())
}

/// Evolve `g` on its own grid with `dt = 0.9·h²/(2nΛ)`, recording the origin
/// value after every step and full profiles at `snapshot_times`.
pub fn evolve_cauchy(
    spec: &OperatorSpec,
    g: &ProfileField,
    t_final: f64,
    snapshot_times: &[f64],
    alpha: Option<f64>,
) -> Result<ParabolicTrace> {
    check_data(g, t_final, snapshot_times)?;
    let mut stepper = ExplicitStepper::new(spec, &g.grid);
    let dt = 0.9 * stepper.cfl_bound();
    let mut u = g.values.clone();
    *u.last_mut().unwrap() = 0.0;
    let mut t = 0.0;
    let mut trace = ParabolicTrace::default();
    for &ts in snapshot_times.iter().filter(|&&ts| ts <= t_final) {
        march(&mut stepper, &mut u, &mut t, ts, dt, &mut trace, alpha)?;
        trace.profile_snapshots.push(ParabolicState { t, values: ProfileField::new(g.grid, u.clone())? });
    }
    march(&mut stepper, &mut u, &mut t, t_final, dt, &mut trace, alpha)?;
    Ok(trace)
}

/// Like [`evolve_cauchy`], but at every `t = 4^j ≥ 1` the spacing and the
/// truncation radius double (values injected onto the even nodes, zero
/// beyond the old radius). The node count stays fixed while the resolution
/// relative to the diffusive scale `√t` is preserved, so long runs cost a
/// fixed amount per factor of four in time.
pub fn evolve_cauchy_dyadic(
    spec: &OperatorSpec,
    g: &ProfileField,
    t_final: f64,
    snapshot_times: &[f64],
    alpha: Option<f64>,
) -> Result<ParabolicTrace> {
    check_data(g, t_final, snapshot_times)?;
    let mut grid = g.grid;
    let mut stepper = ExplicitStepper::new(spec, &grid);
    let mut u = g.values.clone();
    *u.last_mut().unwrap() = 0.0;
    let mut t = 0.0;
    let mut trace = ParabolicTrace::default();
    let mut pending: Vec<f64> = snapshot_times.iter().copied().filter(|&s| s <= t_final).collect();
    pending.reverse();
    let mut stage_end = 1.0f64;
    while t < t_final {
        let target = stage_end.min(t_final);
        while let Some(&ts) = pending.last() {
            if ts > target {
                break;
            }
            let dt = 0.9 * stepper.cfl_bound();
            march(&mut stepper, &mut u, &mut t, ts, dt, &mut trace, alpha)?;
            trace.profile_snapshots.push(ParabolicState { t, values: ProfileField::new(grid, u.clone())? });
            pending.pop();
        }
        let dt = 0.9 * stepper.cfl_bound();
        march(&mut stepper, &mut u, &mut t, target, dt, &mut trace, alpha)?;
        if t >= t_final {
            break;
        }
        grid = RadialGrid::new(2.0 * grid.r_max(), grid.intervals(), grid.dim())?;
        let n = grid.intervals();
        u = (0..=n).map(|i| if 2 * i <= n { u[2 * i] } else { 0.0 }).collect();
        stepper = ExplicitStepper::new(spec, &grid);
        stage_end *= 4.0;
    }
    Ok(trace)
}

/// `σ^α u(σ^{1/2} r)` on the grid of `u`.
pub fn rescale_state(u: &ProfileField, sigma: f64, alpha: f64) -> ProfileField {
    rescale_state_onto(u, sigma, alpha, &u.grid)
}

/// `σ^α u(σ^{1/2} r)` sampled on `target` by monotone cubic interpolation;
/// zero where `σ^{1/2} r` leaves the source grid.
pub fn rescale_state_onto(u: &ProfileField, sigma: f64, alpha: f64, target: &RadialGrid) -> ProfileField {
    let interp = MonotoneCubic::new(u);
    let scale = sigma.powf(alpha);
    let stretch = sigma.sqrt();
    target.sample(|r| scale * interp.eval(stretch * r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowOptions {
    pub s_final: f64,
    pub tol: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self { s_final: 20.0, tol: 1e-6 }
    }
}

const KINK_REFRESH: usize = 8;

/// Relax `φ_s = −F(D²φ) + ½ y·Dφ + α(s)φ` with `α(s)` chosen so that
/// `φ(0, s) = 1`, starting from `e^{−r²/(8Λ)}`.
pub fn normalized_rescaled_flow(spec: &OperatorSpec, grid: &RadialGrid, opts: FlowOptions) -> Result<EigenResult> {
    if !(opts.s_final >= 1.0) {
        return Err(Error::InvalidArgument(format!("s_final must be at least 1, got {}", opts.s_final)));
    }
    let mut stencil = RadialStencil::new(spec, grid, true);
    let h = grid.h();
    let dt_max = 0.9 * h * h / (2.0 * grid.dim() as f64 * spec.bounds().Lambda() + h * grid.r_max() / 2.0);
    let per_unit = (1.0 / dt_max).ceil() as usize;
    let dt = 1.0 / per_unit as f64;
    let total = (opts.s_final * per_unit as f64).ceil() as usize;
    let rows = stencil.rows();
    let b = 1.0 / (8.0 * spec.bounds().Lambda());
    let mut phi: Vec<f64> = grid.nodes().map(|r| (-b * r * r).exp()).collect();
    phi[rows] = 0.0;
    let mut g = vec![0.0; rows];
    let mut alpha = 0.0;
    let mut earlier = phi.clone();
    let mut bracket = (f64::INFINITY, f64::NEG_INFINITY);
    let mut source = vec![0.0; grid.len()];
    for step in 0..total {
        if step % KINK_REFRESH == 0 && step > 0 {
            for (s, p) in source.iter_mut().zip(&phi) {
                *s = alpha * p;
            }
            stencil.set_kink_correction(&phi, &source);
        }
        stencil.apply(&phi, &mut g);
        alpha = g[0] / phi[0];
        for i in 0..rows {
            phi[i] -= dt * (g[i] - alpha * phi[i]);
        }
        if step + per_unit >= total {
            bracket = (bracket.0.min(alpha), bracket.1.max(alpha));
        }
        if step + 1 + per_unit == total {
            earlier.copy_from_slice(&phi);
        }
        if !alpha.is_finite() {
            return Err(Error::NoConvergence { iterations: step, lo: bracket.0, hi: bracket.1, defect: f64::NAN });
        }
    }
    let defect = phi.iter().zip(&earlier).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if !(defect <= opts.tol) {
        return Err(Error::NoConvergence { iterations: total, lo: bracket.0, hi: bracket.1, defect });
    }
    Ok(EigenResult {
        operator: spec.clone(),
        alpha,
        profile: ProfileField::new(*grid, phi)?,
        method: Method::RescaledFlow,
        iterations: total,
        residual: defect,
        bracket,
    })
}

/// Collapse of `u^σ = T_σ u` onto `C*_σ φ` at `t = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub sigmas: Vec<f64>,
    pub cstar: Vec<f64>,
    pub sup_rel_err: Vec<f64>,
    /// `|C*_{k+1} − C*_k| / C*_{k+1}` for consecutive sigmas.
    #[serde(skip)]
    pub cauchy_diffs: Vec<f64>,
    #[serde(skip)]
    pub trace: ParabolicTrace,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Radius on which rescaled solutions are compared with the profile.
pub const COLLAPSE_RADIUS: f64 = 3.0;

/// Evolve `g` to every `σ` (dyadic coarsening, see [`evolve_cauchy_dyadic`]),
/// rescale to `t = 1` on the grid of `phi`, and measure
/// `sup_{r ≤ 3} |u^σ − C*_σ φ| / C*_σ` with `C*_σ = u^σ(0, 1)`.
pub fn convergence_report(
    spec: &OperatorSpec,
    g: &ProfileField,
    alpha: f64,
    phi: &ProfileField,
    sigmas: &[f64],
) -> Result<ConvergenceReport> {
    let t_final = *sigmas.last().ok_or_else(|| Error::InvalidArgument("no sigmas given".into()))?;
    let trace = evolve_cauchy_dyadic(spec, g, t_final, sigmas, Some(alpha))?;
    collapse_report(trace, alpha, phi, sigmas)
}

/// The measurement half of [`convergence_report`] for a trace that holds a
/// profile at every `σ`.
pub fn collapse_report(trace: ParabolicTrace, alpha: f64, phi: &ProfileField, sigmas: &[f64]) -> Result<ConvergenceReport> {
    let mut cstar = Vec::new();
    let mut errs = Vec::new();
    for &sigma in sigmas {
        let state = trace
            .profile_at(sigma)
            .ok_or_else(|| Error::InvalidArgument(format!("trace has no profile at t={sigma}")))?;
        let rescaled = rescale_state_onto(&state.values, sigma, alpha, &phi.grid);
        let c = rescaled.values[0] / phi.values[0];
        let err = phi
            .grid
            .nodes()
            .zip(rescaled.values.iter().zip(&phi.values))
            .take_while(|(r, _)| *r <= COLLAPSE_RADIUS + 1e-12)
            .fold(0.0f64, |m, (_, (u, p))| m.max((u - c * p).abs()))
            / c;
        cstar.push(c);
        errs.push(err);
    }
    let cauchy_diffs = cstar.windows(2).map(|w| (w[1] - w[0]).abs() / w[1]).collect();
    Ok(ConvergenceReport { sigmas: sigmas.to_vec(), cstar, sup_rel_err: errs, cauchy_diffs, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_kernel_step() {
        let grid = RadialGrid::new(12.0, 1200, 2).unwrap();
        let spec = OperatorSpec::heat();
        let state = ParabolicState { t: 1.0, values: grid.sample(|r| (-r * r / 4.0).exp()) };
        let trace_g = state.values.clone();
        let tr = evolve_cauchy(&spec, &trace_g, 0.1, &[0.1], None).unwrap();
        let end = &tr.profile_snapshots[0].values;
        let exact = grid.sample(|r| (-r * r / 4.4).exp() / 1.1);
        assert!(end.sup_distance(&exact, 12.0) < 1e-4);
        assert!((tr.snapshots.last().unwrap().0 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn zero_stays_zero_and_cfl_enforced() {
        let grid = RadialGrid::new(4.0, 100, 1).unwrap();
        let spec = OperatorSpec::barenblatt(0.5).unwrap();
        let s = ParabolicState { t: 0.0, values: ProfileField::zeros(grid) };
        let bound = cfl_bound(&spec, &grid);
        let next = step_explicit(&spec, &s, bound).unwrap();
        assert!(next.values.values.iter().all(|v| *v == 0.0));
        assert!(matches!(step_explicit(&spec, &s, 1.01 * bound), Err(Error::CflViolation { .. })));
    }

    #[test]
    fn bump_stays_nonnegative() {
        let grid = RadialGrid::new(6.0, 300, 3).unwrap();
        for spec in [OperatorSpec::pucci_plus(1.0, 3.0).unwrap(), OperatorSpec::pucci_minus(1.0, 3.0).unwrap()] {
            let mut st = ExplicitStepper::new(&spec, &grid);
            let mut u: Vec<f64> = grid.nodes().map(|r| if r < 1.0 { 1.0 } else { 0.0 }).collect();
            let mut prev = 1.0;
            for _ in 0..2000 {
                st.step_in_place(&mut u, st.cfl_bound()).unwrap();
                assert!(u.iter().all(|v| *v >= 0.0));
                let m = u.iter().fold(0.0f64, |a, b| a.max(*b));
                assert!(m <= prev + 1e-15);
                prev = m;
            }
        }
    }

    #[test]
    fn rescale_identity_and_linearity() {
        let grid = RadialGrid::new(8.0, 800, 1).unwrap();
        let u = grid.sample(|r| (-r * r / 2.0).exp());
        assert_eq!(rescale_state(&u, 1.0, 0.7), u);
        let a = rescale_state(&u.scaled(3.0), 4.0, 0.5);
        let b = rescale_state(&u, 4.0, 0.5).scaled(3.0);
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() <= 1e-15 * y.abs().max(1e-300));
        }
    }

    #[test]
    fn heat_kernel_rescaling_is_invariant() {
        let grid = RadialGrid::new(40.0, 4000, 1).unwrap();
        let base = RadialGrid::new(10.0, 1000, 1).unwrap();
        for sigma in [2.0f64, 9.0, 16.0] {
            let kernel = grid.sample(|r| sigma.powf(-0.5) * (-r * r / (4.0 * sigma)).exp());
            let back = rescale_state_onto(&kernel, sigma, 0.5, &base);
            let expect = base.sample(|r| (-r * r / 4.0).exp());
            assert!(back.sup_distance(&expect, 10.0) < 1e-7);
        }
    }

    #[test]
    fn heat_flow_recovers_gaussian() {
        let grid = RadialGrid::new(12.0, 600, 2).unwrap();
        let res = normalized_rescaled_flow(&OperatorSpec::heat(), &grid, FlowOptions::default()).unwrap();
        assert!((res.alpha - 1.0).abs() < 1e-3);
        let exact = grid.sample(|r| (-r * r / 4.0).exp());
        assert!(res.profile.sup_distance(&exact, 12.0) < 1e-3);
        assert_eq!(res.profile.values[0], 1.0);
    }

    #[test]
    fn dyadic_run_lands_on_snapshots() {
        let grid = RadialGrid::new(8.0, 400, 1).unwrap();
        let g = grid.sample(|r| (-r * r).exp());
        let tr = evolve_cauchy_dyadic(&OperatorSpec::heat(), &g, 16.0, &[2.0, 4.0, 16.0], Some(0.5)).unwrap();
        let times: Vec<f64> = tr.profile_snapshots.iter().map(|s| s.t).collect();
        assert_eq!(times, vec![2.0, 4.0, 16.0]);
        assert_eq!(tr.profile_snapshots[2].values.grid.r_max(), 8.0 * 4.0);
        assert!(tr.snapshots.windows(2).all(|w| w[1].0 > w[0].0));
        // heat mass conservation: t^{1/2} u(0,t) → ∫g / (4π)^{1/2} = 1/2
        let (_, c) = *tr.cstar_estimates.last().unwrap();
        assert!((c - 0.5 * (16.0f64 / 16.25).sqrt()).abs() < 1e-3, "{c}");
    }
}
