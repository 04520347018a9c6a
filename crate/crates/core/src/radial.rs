//! Radial shooting for the eigen-equation `F(D²φ) − ½ r φ′ = αφ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{ProfileField, RadialGrid};
use crate::operator::{radial_hessian_spectrum, Control, ControlSet, Extremum, OperatorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Shooting,
    PowerIteration,
    RescaledFlow,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Shooting => "shooting",
            Method::PowerIteration => "power_iteration",
            Method::RescaledFlow => "rescaled_flow",
        }
    }
}

/// An exponent together with its normalized profile.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub operator: OperatorSpec,
    pub alpha: f64,
    pub profile: ProfileField,
    pub method: Method,
    pub iterations: usize,
    pub residual: f64,
    pub bracket: (f64, f64),
}

#[derive(Serialize)]
struct GridJson {
    #[serde(rename = "R_max")]
    r_max: f64,
    #[serde(rename = "N")]
    n: usize,
}

#[derive(Serialize)]
struct EigenJson<'a> {
    operator: String,
    n: usize,
    lambda: f64,
    #[serde(rename = "Lambda")]
    upper: f64,
    alpha: f64,
    method: &'a str,
    iterations: usize,
    residual: f64,
    grid: GridJson,
}

impl EigenResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        let b = self.operator.bounds();
        let grid = self.profile.grid;
        serde_json::to_value(EigenJson {
            operator: self.operator.to_string(),
            n: grid.dim(),
            lambda: b.lambda(),
            upper: b.Lambda(),
            alpha: self.alpha,
            method: self.method.as_str(),
            iterations: self.iterations,
            residual: self.residual,
            grid: GridJson { r_max: grid.r_max(), n: grid.intervals() },
        })
        .expect("plain data serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    CrossesZero { r_cross: f64 },
    SlowDecay,
    FastDecay,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOutcome {
    pub classification: Classification,
    pub final_r: f64,
    pub final_log_derivative: f64,
}

impl ShootingOutcome {
    pub fn crosses_zero(&self) -> bool {
        matches!(self.classification, Classification::CrossesZero { .. })
    }
}

struct Trajectory {
    outcome: ShootingOutcome,
    values: Vec<f64>,
}

fn second_derivative(cs: &ControlSet, dim: usize, alpha: f64, r: f64, phi: f64, slope: f64) -> Result<f64> {
    let mu = cs.invert_radial(alpha * phi + 0.5 * r * slope, slope / r, dim);
    if !mu.is_finite() {
        return Err(Error::NonMonotoneInversion { r, reason: format!("curvature {mu} for phi={phi}, phi'={slope}") });
    }
    Ok(mu)
}

/// Control active at the origin, where all curvature eigenvalues coincide
/// and are negative.
fn origin_control(cs: &ControlSet, dim: usize) -> Control {
    let mut best = cs.controls[0];
    for c in &cs.controls[1..] {
        let better = match cs.extremum {
            Extremum::Sup => c.trace_weight(dim) > best.trace_weight(dim),
            Extremum::Inf => c.trace_weight(dim) < best.trace_weight(dim),
        };
        if better {
            best = *c;
        }
    }
    best
}

/// Even power series of the solution near the origin under the origin
/// control: `φ = Σ a_k r^{2k}` with `a_0 = 1`. Returns `(φ(r), φ′(r))`.
fn origin_series(c: Control, dim: usize, alpha: f64, r: f64) -> (f64, f64) {
    let m = (dim - 1) as f64;
    let r2 = r * r;
    let mut a = 1.0;
    let mut pow = 1.0;
    let mut phi = 1.0;
    let mut slope = 0.0;
    for k in 0..12 {
        let kf = k as f64;
        a *= -(kf + alpha) / ((2.0 * kf + 2.0) * (c.radial * (2.0 * kf + 1.0) + c.tangential * m));
        slope += a * (2.0 * kf + 2.0) * pow * r;
        pow *= r2;
        let term = a * pow;
        phi += term;
        if term.abs() < 1e-18 * phi.abs() {
            break;
        }
    }
    (phi, slope)
}

fn rk4_step(cs: &ControlSet, dim: usize, alpha: f64, r: f64, y: f64, z: f64, h: f64) -> Result<(f64, f64)> {
    let f = |r: f64, y: f64, z: f64| -> Result<(f64, f64)> { Ok((z, second_derivative(cs, dim, alpha, r, y, z)?)) };
    let (k1y, k1z) = f(r, y, z)?;
    let (k2y, k2z) = f(r + 0.5 * h, y + 0.5 * h * k1y, z + 0.5 * h * k1z)?;
    let (k3y, k3z) = f(r + 0.5 * h, y + 0.5 * h * k2y, z + 0.5 * h * k2z)?;
    let (k4y, k4z) = f(r + h, y + h * k3y, z + h * k3z)?;
    Ok((y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y), z + h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)))
}

const MAX_SPLIT_DEPTH: u32 = 24;

/// One RK4 step, bisected recursively wherever the active control changes
/// inside it so the kink in the right-hand side is confined to a tiny step.
#[allow(clippy::too_many_arguments)]
fn step_across_switches(
    cs: &ControlSet,
    dim: usize,
    alpha: f64,
    r: f64,
    y: f64,
    z: f64,
    h: f64,
    depth: u32,
) -> Result<(f64, f64)> {
    let (y1, z1) = rk4_step(cs, dim, alpha, r, y, z, h)?;
    if depth >= MAX_SPLIT_DEPTH || cs.controls.len() == 1 {
        return Ok((y1, z1));
    }
    let branch = |r: f64, y: f64, z: f64| cs.active_branch(alpha * y + 0.5 * r * z, z / r, dim);
    if branch(r, y, z) == branch(r + h, y1, z1) {
        return Ok((y1, z1));
    }
    let (ym, zm) = step_across_switches(cs, dim, alpha, r, y, z, 0.5 * h, depth + 1)?;
    step_across_switches(cs, dim, alpha, r + 0.5 * h, ym, zm, 0.5 * h, depth + 1)
}

fn integrate(spec: &OperatorSpec, grid: &RadialGrid, alpha: f64) -> Result<Trajectory> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let cs = spec.control_set();
    let dim = grid.dim();
    let h = grid.h();
    let n_int = grid.intervals();
    let (mut phi, mut slope) = origin_series(origin_control(&cs, dim), dim, alpha, h);
    let mut values = Vec::with_capacity(grid.len());
    values.push(1.0);
    values.push(phi);
    let upper = spec.bounds().Lambda();
    for i in 1..n_int {
        let r = grid.r(i);
        let prev = phi;
        (phi, slope) = step_across_switches(&cs, dim, alpha, r, phi, slope, h, 0)?;
        let r_next = grid.r(i + 1);
        if !phi.is_finite() || phi.abs() > 1e300 || !slope.is_finite() {
            return Err(Error::Overflow { r: r_next });
        }
        values.push(phi);
        if phi <= 0.0 {
            let r_cross = r + h * prev / (prev - phi);
            return Ok(Trajectory {
                outcome: ShootingOutcome {
                    classification: Classification::CrossesZero { r_cross },
                    final_r: r_next,
                    final_log_derivative: slope / phi,
                },
                values,
            });
        }
    }
    let r = grid.r_max();
    let log_derivative = slope / phi;
    let classification =
        if log_derivative <= -r / (4.0 * upper) { Classification::FastDecay } else { Classification::SlowDecay };
    Ok(Trajectory { outcome: ShootingOutcome { classification, final_r: r, final_log_derivative: log_derivative }, values })
}

/// Integrate the radial eigen-ODE outward from the origin with `φ(0) = 1`
/// and classify the solution on `[0, R_max]`.
pub fn shoot(spec: &OperatorSpec, grid: &RadialGrid, alpha: f64) -> Result<ShootingOutcome> {
    Ok(integrate(spec, grid, alpha)?.outcome)
}

/// Outward trajectory sampled on the grid, up to and including the first
/// nonpositive node.
pub fn shoot_values(spec: &OperatorSpec, grid: &RadialGrid, alpha: f64) -> Result<(ShootingOutcome, Vec<f64>)> {
    let t = integrate(spec, grid, alpha)?;
    Ok((t.outcome, t.values))
}

/// Bisect on the decay class between the universal exponent bounds.
pub fn find_alpha_shooting(spec: &OperatorSpec, grid: &RadialGrid, tol: f64) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    let (a_lo, a_hi) = spec.bounds().exponent_interval(grid.dim());
    let mut lo = a_lo * (1.0 - 1e-6);
    let mut hi = a_hi * (1.0 + 1e-6);
    let mut lo_traj = integrate(spec, grid, lo)?;
    let mut hi_traj = integrate(spec, grid, hi)?;
    if lo_traj.outcome.crosses_zero() || !hi_traj.outcome.crosses_zero() {
        return Err(Error::BracketFailure {
            lo,
            hi,
            detail: format!("{:?} / {:?}", lo_traj.outcome.classification, hi_traj.outcome.classification),
        });
    }
    let mut iterations = 0;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let t = integrate(spec, grid, mid)?;
        if t.outcome.crosses_zero() {
            hi = mid;
            hi_traj = t;
        } else {
            lo = mid;
            lo_traj = t;
        }
        iterations += 1;
    }
    let alpha = 0.5 * (lo + hi);
    let values = splice_tail(spec, grid, alpha, &lo_traj.values, &hi_traj.values)?;
    let profile = ProfileField::new(*grid, values)?;
    let residual = eigen_residual(spec, alpha, &profile);
    Ok(EigenResult {
        operator: spec.clone(),
        alpha,
        profile,
        method: Method::Shooting,
        iterations,
        residual,
        bracket: (lo, hi),
    })
}

/// Replace the part of the positive trajectory where it separates from the
/// crossing one by the Gaussian-decaying solution, obtained by integrating
/// the log-derivative `L = φ′/φ` inward from far out.
fn splice_tail(spec: &OperatorSpec, grid: &RadialGrid, alpha: f64, lo: &[f64], hi: &[f64]) -> Result<Vec<f64>> {
    let n_int = grid.intervals();
    let valid_hi = hi.len() - 1;
    let mut m = valid_hi.min(n_int);
    for i in 1..valid_hi.min(lo.len()) {
        if (lo[i] - hi[i]).abs() > 1e-6 * lo[i] {
            m = i;
            break;
        }
    }
    m = m.min(valid_hi.saturating_sub(1)).max(1);
    let cs = spec.control_set();
    let dim = grid.dim();
    let c_tail = -cs.eval_radial(1.0, 0.0, dim);
    let r_m = grid.r(m);
    let r_ext = (r_m * r_m + 160.0 * c_tail).sqrt().max(grid.r_max());
    let g = |r: f64, l: f64| -> Result<(f64, f64)> {
        let mu = second_derivative(&cs, dim, alpha, r, 1.0, l)?;
        Ok((mu - l * l, l))
    };
    let rk4_back = |r0: f64, r1: f64, l: &mut f64, ell: &mut f64| -> Result<()> {
        let span = r0 - r1;
        let steps = ((span * r0 / (2.0 * c_tail)).ceil() as usize).max(1);
        let dr = -span / steps as f64;
        let mut r = r0;
        for _ in 0..steps {
            let (a1, b1) = g(r, *l)?;
            let (a2, b2) = g(r + 0.5 * dr, *l + 0.5 * dr * a1)?;
            let (a3, b3) = g(r + 0.5 * dr, *l + 0.5 * dr * a2)?;
            let (a4, b4) = g(r + dr, *l + dr * a3)?;
            *l += dr / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            *ell += dr / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
            r += dr;
        }
        Ok(())
    };
    let mut l = -r_ext / (2.0 * c_tail);
    let mut ell = 0.0;
    let mut logs = vec![0.0; n_int + 1];
    rk4_back(r_ext, grid.r(n_int), &mut l, &mut ell)?;
    logs[n_int] = ell;
    for i in (m..n_int).rev() {
        rk4_back(grid.r(i + 1), grid.r(i), &mut l, &mut ell)?;
        logs[i] = ell;
    }
    let mut values = lo[..m].to_vec();
    values.extend((m..=n_int).map(|i| lo[m] * (logs[i] - logs[m]).exp()));
    Ok(values)
}

/// Sup of `|F(D²φ) − ½ r φ′ − αφ|` with centred differences over all nodes
/// except the outermost 5%.
pub fn eigen_residual(spec: &OperatorSpec, alpha: f64, profile: &ProfileField) -> f64 {
    let grid = profile.grid;
    let u = &profile.values;
    let h = grid.h();
    let dim = grid.dim();
    let last = ((0.95 * grid.intervals() as f64).floor() as usize).min(grid.intervals() - 1);
    let origin_curv = 2.0 * (u[1] - u[0]) / (h * h);
    let mut worst = (spec.eval(&vec![origin_curv; dim]) - alpha * u[0]).abs();
    for i in 1..last {
        let r = grid.r(i);
        let d2 = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        let d1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
        let f = spec.eval(&radial_hessian_spectrum(d2, d1 / r, dim));
        worst = worst.max((f - 0.5 * r * d1 - alpha * u[i]).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heat_grid(dim: usize) -> RadialGrid {
        RadialGrid::new(12.0, 1200, dim).unwrap()
    }

    #[test]
    fn heat_gaussian_branch() {
        let (_, values) = shoot_values(&OperatorSpec::heat(), &heat_grid(2), 1.0).unwrap();
        assert!((values[200] - (-1.0f64).exp()).abs() < 1e-6);
        let g = RadialGrid::new(8.0, 800, 2).unwrap();
        let out = shoot(&OperatorSpec::heat(), &g, 1.0).unwrap();
        assert_eq!(out.classification, Classification::FastDecay);
    }

    #[test]
    fn heat_super_and_subcritical() {
        let g = heat_grid(2);
        let heat = OperatorSpec::heat();
        assert!(shoot(&heat, &g, 1.2).unwrap().crosses_zero());
        let sub = shoot(&heat, &g, 0.8).unwrap();
        assert_eq!(sub.classification, Classification::SlowDecay);
        assert!((sub.final_log_derivative + 2.0 * 0.8 / 12.0).abs() < 0.05);
    }

    #[test]
    fn heat_exponents_and_profile() {
        for dim in 1..=3 {
            let res = find_alpha_shooting(&OperatorSpec::heat(), &heat_grid(dim), 1e-10).unwrap();
            assert!((res.alpha - dim as f64 / 2.0).abs() < 1e-8, "{}", res.alpha);
            assert_eq!(res.profile.values[0], 1.0);
            for (r, v) in res.profile.grid.nodes().zip(&res.profile.values) {
                assert!(*v > 0.0);
                assert!((v - (-r * r / 4.0).exp()).abs() < 1e-7, "r={r} {v}");
            }
        }
    }

    #[test]
    fn linear_exponent_independent_of_coefficient() {
        for c in [0.5, 2.0] {
            let g = RadialGrid::new(16.0, 1600, 2).unwrap();
            let res = find_alpha_shooting(&OperatorSpec::linear(c).unwrap(), &g, 1e-9).unwrap();
            assert!((res.alpha - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn residual_examples() {
        let g = heat_grid(2);
        let gauss = g.sample(|r| (-r * r / 4.0).exp());
        assert!(eigen_residual(&OperatorSpec::heat(), 1.0, &gauss) <= 1e-4);
        let ones = g.sample(|_| 1.0);
        assert_eq!(eigen_residual(&OperatorSpec::heat(), 1.0, &ones), 1.0);
    }

    #[test]
    fn bracket_failure_on_tiny_domain() {
        let g = RadialGrid::new(0.5, 50, 1).unwrap();
        assert!(matches!(
            find_alpha_shooting(&OperatorSpec::heat(), &g, 1e-6),
            Err(Error::BracketFailure { .. })
        ));
    }
}
