//! The solution operator `𝒜 : v ↦ u` of `F(D²u) − ½ y·Du = v` with zero
//! data at `R_max`, and its fixed ray `φ = α 𝒜(φ)`.

use crate::error::{Error, Result};
use crate::mesh::{ProfileField, RadialGrid};
use crate::operator::OperatorSpec;
use crate::radial::{eigen_residual, EigenResult, Method};
use crate::stencil::RadialStencil;

pub const MAX_POLICY_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct ResolventResult {
    pub u: ProfileField,
    pub policy_sweeps: usize,
    /// `max_i |F_h(u)_i − v_i| / a_ii`, the residual of the diagonally
    /// scaled system under the converged policy.
    pub linear_residual: f64,
    pub policy: Vec<usize>,
}

/// Discrete resolvent with a reusable stencil and a warm-started policy.
#[derive(Debug, Clone)]
pub struct Resolvent {
    grid: RadialGrid,
    stencil: RadialStencil,
    policy: Option<Vec<usize>>,
}

impl Resolvent {
    pub fn new(spec: &OperatorSpec, grid: &RadialGrid) -> Self {
        Self { grid: *grid, stencil: RadialStencil::new(spec, grid, true), policy: None }
    }

    pub fn apply(&mut self, v: &ProfileField) -> Result<ResolventResult> {
        if v.grid.len() != self.grid.len() {
            return Err(Error::InvalidArgument("right-hand side lives on a different grid".into()));
        }
        let rows = self.stencil.rows();
        let mut u = vec![0.0; self.grid.len()];
        let mut policy = match self.policy.take() {
            Some(p) => p,
            None => {
                let mut p = vec![0; rows];
                self.stencil.improve_policy(&v.values, &mut p);
                p
            }
        };
        let mut sweeps = 0;
        loop {
            if sweeps == MAX_POLICY_SWEEPS {
                return Err(Error::PolicyCycle { sweeps });
            }
            self.stencil.solve_policy(&policy, &v.values, &mut u)?;
            sweeps += 1;
            if self.stencil.improve_policy(&u, &mut policy) == 0 {
                break;
            }
        }
        u[rows] = 0.0;
        let mut fu = vec![0.0; rows];
        self.stencil.apply(&u, &mut fu);
        let linear_residual = (0..rows)
            .map(|i| (fu[i] - v.values[i]).abs() / self.stencil.diag(i, policy[i]))
            .fold(0.0, f64::max);
        self.policy = Some(policy.clone());
        Ok(ResolventResult { u: ProfileField::new(self.grid, u)?, policy_sweeps: sweeps, linear_residual, policy })
    }

    /// Correct the second differences next to control switches of the
    /// solution `u` of `F(D²u) − ½ y·Du = v`; applies to later calls.
    pub fn set_kink_correction(&mut self, u: &ProfileField, v: &ProfileField) {
        self.stencil.set_kink_correction(&u.values, &v.values);
    }
}

/// `𝒜(v)` by Howard policy iteration over the operator's extremal
/// coefficients; each sweep is one tridiagonal solve.
pub fn apply_resolvent(spec: &OperatorSpec, grid: &RadialGrid, v: &ProfileField) -> Result<ResolventResult> {
    Resolvent::new(spec, grid).apply(v)
}

/// Starting iterate `e^{−r²/(8Λ)}`.
pub fn initial_iterate(spec: &OperatorSpec, grid: &RadialGrid) -> ProfileField {
    let b = 1.0 / (8.0 * spec.bounds().Lambda());
    grid.sample(|r| (-b * r * r).exp())
}

/// Collatz–Wielandt bounds `min/max v_i / 𝒜(v)_i` over nodes with `v > 1e−8`.
fn collatz_bracket(v: &[f64], u: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for (a, b) in v.iter().zip(u).take(v.len() - 1) {
        if *a > 1e-8 && *b > 0.0 {
            let q = a / b;
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    (lo, hi)
}

/// Normalized power iteration on `𝒜`: `v ← 𝒜(v)/𝒜(v)(0)`, `α = 1/𝒜(v)(0)`.
pub fn inverse_power_iteration(
    spec: &OperatorSpec,
    grid: &RadialGrid,
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    let mut resolvent = Resolvent::new(spec, grid);
    let mut v = initial_iterate(spec, grid);
    let mut alpha = f64::NAN;
    let mut bracket = (0.0, f64::INFINITY);
    let mut defect = f64::INFINITY;
    for k in 1..=max_iter {
        let res = resolvent.apply(&v)?;
        resolvent.set_kink_correction(&res.u, &v);
        let u0 = res.u.values[0];
        if !(u0 > 0.0) {
            return Err(Error::NoConvergence { iterations: k, lo: bracket.0, hi: bracket.1, defect });
        }
        bracket = collatz_bracket(&v.values, &res.u.values);
        let next = res.u.normalized()?;
        let alpha_next = 1.0 / u0;
        defect = next.values.iter().zip(&v.values).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let settled = (alpha_next - alpha).abs() <= tol * alpha;
        alpha = alpha_next;
        v = next;
        if settled && defect <= tol {
            let residual = eigen_residual(spec, alpha, &v);
            return Ok(EigenResult {
                operator: spec.clone(),
                alpha,
                profile: v,
                method: Method::PowerIteration,
                iterations: k,
                residual,
                bracket,
            });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, lo: bracket.0, hi: bracket.1, defect })
}

/// `α⁺(F)` and `α⁻(F) = α⁺(F̃)`.
#[derive(Debug, Clone)]
pub struct ExponentPair {
    pub plus: EigenResult,
    /// Eigenpair of the dual operator; `Φ⁻ = −Φ⁺(F̃)`.
    pub minus: EigenResult,
}

impl ExponentPair {
    pub fn alpha_plus(&self) -> f64 {
        self.plus.alpha
    }

    pub fn alpha_minus(&self) -> f64 {
        self.minus.alpha
    }

    /// The negative profile `φ⁻ = −φ⁺(F̃)`.
    pub fn minus_profile(&self) -> ProfileField {
        self.minus.profile.scaled(-1.0)
    }
}

pub const DEFAULT_MAX_ITER: usize = 10_000;

pub fn exponent_pair(spec: &OperatorSpec, grid: &RadialGrid, tol: f64) -> Result<ExponentPair> {
    let plus = inverse_power_iteration(spec, grid, tol, DEFAULT_MAX_ITER)?;
    let minus = inverse_power_iteration(&spec.dual(), grid, tol, DEFAULT_MAX_ITER)?;
    Ok(ExponentPair { plus, minus })
}
