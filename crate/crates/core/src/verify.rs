//! Numerical certificates for the closed-form inequalities behind the
//! exponent bounds, the Gaussian envelopes, self-similarity, duality and the
//! special subsolution used in the long-time analysis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::flow::rescale_state;
use crate::interp::MonotoneCubic;
use crate::mesh::{ProfileField, RadialGrid};
use crate::operator::{
    check_ellipticity_sandwich, check_homogeneity, eval_pucci, radial_hessian_spectrum, EllipticityBounds, OperatorSpec,
    PucciSign,
};
use crate::resolvent::{inverse_power_iteration, DEFAULT_MAX_ITER};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Most negative margin over all samples.
    pub worst_slack: f64,
    /// `[r]` or `[r, s]` where the worst margin occurs.
    pub location: Vec<f64>,
    pub tolerance: f64,
}

impl CheckResult {
    fn from_slack(name: impl Into<String>, worst_slack: f64, location: Vec<f64>, tolerance: f64) -> Self {
        Self { name: name.into(), passed: worst_slack >= -tolerance, worst_slack, location, tolerance }
    }
}

struct Worst {
    slack: f64,
    location: Vec<f64>,
}

impl Worst {
    fn new() -> Self {
        Self { slack: f64::INFINITY, location: vec![] }
    }

    fn update(&mut self, slack: f64, location: &[f64]) {
        if slack < self.slack || slack.is_nan() {
            self.slack = slack;
            self.location = location.to_vec();
        }
    }
}

/// Which Pucci operator is paired with which Gaussian exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianTest {
    /// `P⁻` with `a = 1/(4Λ)`.
    MinusQuarterUpper,
    /// `P⁺` with `a = 1/(4λ)`.
    PlusQuarterLower,
}

impl GaussianTest {
    pub fn exponent(&self, b: EllipticityBounds) -> f64 {
        match self {
            GaussianTest::MinusQuarterUpper => 1.0 / (4.0 * b.Lambda()),
            GaussianTest::PlusQuarterLower => 1.0 / (4.0 * b.lambda()),
        }
    }

    /// Closed-form `[P(D²φᵃ) − ½ y·Dφᵃ] / φᵃ` at radius `r`, either branch.
    pub fn closed_form(&self, b: EllipticityBounds, n: usize, r: f64, outer: bool) -> f64 {
        let a = self.exponent(b);
        let nf = n as f64;
        let (lam, upp) = (b.lambda(), b.Lambda());
        let r2 = r * r;
        match (self, outer) {
            (GaussianTest::MinusQuarterUpper, false) => a * (2.0 * lam * nf - 4.0 * a * lam * r2 + r2),
            (GaussianTest::MinusQuarterUpper, true) => {
                a * (2.0 * lam * (nf - 1.0) + 2.0 * upp - 4.0 * a * upp * r2 + r2)
            }
            (GaussianTest::PlusQuarterLower, false) => a * (2.0 * upp * nf - 4.0 * a * upp * r2 + r2),
            (GaussianTest::PlusQuarterLower, true) => {
                a * (2.0 * upp * (nf - 1.0) + 2.0 * lam - 4.0 * a * lam * r2 + r2)
            }
        }
    }

    pub fn breakpoint(&self, b: EllipticityBounds) -> f64 {
        (2.0 * self.exponent(b)).powf(-0.5)
    }

    pub fn value(&self, b: EllipticityBounds, n: usize, r: f64) -> f64 {
        self.closed_form(b, n, r, r > self.breakpoint(b))
    }

    /// The same quantity through the generic Pucci evaluation of the radial
    /// Hessian spectrum.
    pub fn via_operator(&self, b: EllipticityBounds, n: usize, r: f64) -> f64 {
        let a = self.exponent(b);
        let second = 4.0 * a * a * r * r - 2.0 * a;
        let spec = radial_hessian_spectrum(second, -2.0 * a, n);
        let sign = match self {
            GaussianTest::MinusQuarterUpper => PucciSign::Minus,
            GaussianTest::PlusQuarterLower => PucciSign::Plus,
        };
        eval_pucci(&spec, b, sign) + a * r * r
    }

    /// Lower and upper constants of the sandwich.
    pub fn bounds(&self, b: EllipticityBounds, n: usize) -> (f64, f64) {
        let nf = n as f64;
        let (lam, upp) = (b.lambda(), b.Lambda());
        match self {
            GaussianTest::MinusQuarterUpper => (nf * lam / (2.0 * upp), (nf - 1.0) * lam / (2.0 * upp) + 0.5),
            GaussianTest::PlusQuarterLower => ((nf - 1.0) * upp / (2.0 * lam) + 0.5, nf * upp / (2.0 * lam)),
        }
    }
}

pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Evenly spaced radii on `[0, 3/√(2a)]` for the smaller Gaussian exponent,
/// with both breakpoints inserted.
pub fn gaussian_bound_samples(b: EllipticityBounds, count: usize) -> Vec<f64> {
    let top = 3.0 * GaussianTest::MinusQuarterUpper.breakpoint(b);
    let mut rs: Vec<f64> = (0..count.saturating_sub(2)).map(|k| top * k as f64 / (count - 3).max(1) as f64).collect();
    rs.push(GaussianTest::MinusQuarterUpper.breakpoint(b));
    rs.push(GaussianTest::PlusQuarterLower.breakpoint(b));
    rs
}

/// Test `lo ≤ [P(D²φᵃ) − ½ y·Dφᵃ]/φᵃ ≤ hi` at every radius for both
/// pairings. Slack is measured relative to `φᵃ`.
pub fn check_gaussian_bounds(b: EllipticityBounds, n: usize, r_samples: &[f64]) -> (CheckResult, CheckResult) {
    let run = |test: GaussianTest, name: &str| {
        let (lo, hi) = test.bounds(b, n);
        let mut worst = Worst::new();
        for &r in r_samples {
            let v = test.value(b, n, r);
            worst.update((v - lo).min(hi - v), &[r]);
        }
        CheckResult::from_slack(name, worst.slack, worst.location, CLOSED_FORM_TOL)
    };
    (
        run(GaussianTest::MinusQuarterUpper, "gaussian_bounds_pucci_minus"),
        run(GaussianTest::PlusQuarterLower, "gaussian_bounds_pucci_plus"),
    )
}

/// Largest jump between the two closed-form branches at their breakpoint.
pub fn gaussian_branch_gap(b: EllipticityBounds, n: usize) -> f64 {
    [GaussianTest::MinusQuarterUpper, GaussianTest::PlusQuarterLower]
        .iter()
        .map(|t| {
            let r = t.breakpoint(b);
            (t.closed_form(b, n, r, false) - t.closed_form(b, n, r, true)).abs()
        })
        .fold(0.0, f64::max)
}

/// `nλ/2Λ ≤ α⁺(P⁻) ≤ ((n−1)λ+Λ)/2Λ ≤ n/2 ≤ ((n−1)Λ+λ)/2λ ≤ α⁺(P⁺) ≤ nΛ/2λ`,
/// each link within `tolerance`; when `λ ≠ Λ` both exponents must also lie
/// strictly inside their intervals.
pub fn check_exponent_chain(
    alpha_pucci_minus: f64,
    alpha_pucci_plus: f64,
    b: EllipticityBounds,
    n: usize,
    tolerance: f64,
) -> CheckResult {
    let nf = n as f64;
    let (lam, upp) = (b.lambda(), b.Lambda());
    let chain = [
        nf * lam / (2.0 * upp),
        alpha_pucci_minus,
        ((nf - 1.0) * lam + upp) / (2.0 * upp),
        nf / 2.0,
        ((nf - 1.0) * upp + lam) / (2.0 * lam),
        alpha_pucci_plus,
        nf * upp / (2.0 * lam),
    ];
    let mut worst = Worst::new();
    for k in 0..chain.len() - 1 {
        worst.update(chain[k + 1] - chain[k], &[k as f64]);
    }
    let mut result = CheckResult::from_slack("exponent_chain", worst.slack, worst.location, tolerance);
    if lam != upp {
        let strict = [0usize, 1, 4, 5].iter().all(|&k| chain[k + 1] - chain[k] > 0.0);
        result.passed &= strict;
    }
    result
}

/// Interior margin of each computed exponent inside its interval, the
/// smaller of the two.
pub fn exponent_chain_margin(alpha_pucci_minus: f64, alpha_pucci_plus: f64, b: EllipticityBounds, n: usize) -> f64 {
    let nf = n as f64;
    let (lam, upp) = (b.lambda(), b.Lambda());
    let m1 = (alpha_pucci_minus - nf * lam / (2.0 * upp)).min(((nf - 1.0) * lam + upp) / (2.0 * upp) - alpha_pucci_minus);
    let m2 = (alpha_pucci_plus - ((nf - 1.0) * upp + lam) / (2.0 * lam)).min(nf * upp / (2.0 * lam) - alpha_pucci_plus);
    m1.min(m2)
}

/// Fitted Gaussian envelope constants of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeFit {
    /// Smallest `C₁` with `φ ≤ C₁ e^{−a₁r²}`.
    pub c_upper: f64,
    /// Smallest `C₂` with `e^{−a₂r²} ≤ C₂ φ`.
    pub c_lower: f64,
    pub a_upper: f64,
    pub a_lower: f64,
    /// Radii where each constant is attained.
    pub r_upper: f64,
    pub r_lower: f64,
}

pub const ENVELOPE_LIMIT: f64 = 1e6;

/// Fit both envelopes over `r ≤ 0.8 R_max` with `a₁ = 0.99/(4Λ)` and
/// `a₂ = 1.01/(4λ)`.
pub fn fit_envelopes(profile: &ProfileField, b: EllipticityBounds) -> EnvelopeFit {
    let a_upper = 0.99 / (4.0 * b.Lambda());
    let a_lower = 1.01 / (4.0 * b.lambda());
    let limit = 0.8 * profile.grid.r_max();
    let mut log_c1 = f64::NEG_INFINITY;
    let mut log_c2 = f64::NEG_INFINITY;
    let (mut r1, mut r2) = (0.0, 0.0);
    for (r, &v) in profile.grid.nodes().zip(&profile.values) {
        if r > limit + 1e-12 {
            break;
        }
        let lv = if v > 0.0 { v.ln() } else { f64::NEG_INFINITY };
        let l1 = lv + a_upper * r * r;
        let l2 = -a_lower * r * r - lv;
        if l1 > log_c1 {
            log_c1 = l1;
            r1 = r;
        }
        if l2 > log_c2 {
            log_c2 = l2;
            r2 = r;
        }
    }
    EnvelopeFit { c_upper: log_c1.exp(), c_lower: log_c2.exp(), a_upper, a_lower, r_upper: r1, r_lower: r2 }
}

/// Passes when both envelope constants are finite and at most `10⁶`; the
/// slack is `ln 10⁶ − ln max(C₁, C₂)`.
pub fn check_envelopes(profile: &ProfileField, b: EllipticityBounds) -> CheckResult {
    let fit = fit_envelopes(profile, b);
    let (c, r) = if fit.c_upper >= fit.c_lower { (fit.c_upper, fit.r_upper) } else { (fit.c_lower, fit.r_lower) };
    let slack = if c.is_finite() { ENVELOPE_LIMIT.ln() - c.ln() } else { f64::NEG_INFINITY };
    CheckResult::from_slack("gaussian_envelopes", slack, vec![r], 0.0)
}

/// `w = e^{−βs}φᵃ − δ e^{−(β+1)s} ψ` with `a = 1/(2λ)`, `β = 1 + 2aΛn`,
/// `r₁ = 2(β+Λ+1)`, `δ = e^{r₁ − a r₁²}/(β+1)` and `ψ = min{e^{−r₁}, e^{−|y|}}`.
/// All quantities are handled as `(sign, log magnitude)` pairs since `δ`
/// underflows for moderate `r₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialSubsolution {
    pub bounds: EllipticityBounds,
    pub n: usize,
    pub a: f64,
    pub beta: f64,
    pub r1: f64,
    pub log_delta: f64,
}

/// `w` and its derivatives at one point, all divided by `e^{reference}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledJet {
    pub w: f64,
    pub w_s: f64,
    pub w_r: f64,
    pub w_rr: f64,
    /// Size of the largest individual contribution, for relative errors.
    pub scale: f64,
}

impl SpecialSubsolution {
    pub fn new(bounds: EllipticityBounds, n: usize) -> Self {
        let a = 1.0 / (2.0 * bounds.lambda());
        let beta = 1.0 + 2.0 * a * bounds.Lambda() * n as f64;
        let r1 = 2.0 * (beta + bounds.Lambda() + 1.0);
        let log_delta = r1 - a * r1 * r1 - (beta + 1.0).ln();
        Self { bounds, n, a, beta, r1, log_delta }
    }

    pub fn delta(&self) -> f64 {
        self.log_delta.exp()
    }

    fn log_parts(&self, r: f64, s: f64) -> (f64, f64, bool) {
        let outer = r > self.r1;
        let log_a = -self.beta * s - self.a * r * r;
        let log_b = self.log_delta - (self.beta + 1.0) * s - if outer { r } else { self.r1 };
        (log_a, log_b, outer)
    }

    /// Log of the larger of the two terms of `w`.
    pub fn log_scale(&self, r: f64, s: f64) -> f64 {
        let (la, lb, _) = self.log_parts(r, s);
        la.max(lb)
    }

    /// Analytic jet of `w` on the smooth piece containing `r`, scaled by
    /// `e^{−reference}`.
    pub fn jet(&self, r: f64, s: f64, reference: f64) -> ScaledJet {
        let (la, lb, outer) = self.log_parts(r, s);
        let a_term = (la - reference).exp();
        let b_term = (lb - reference).exp();
        let a = self.a;
        let (b_r, b_rr) = if outer { (-b_term, b_term) } else { (0.0, 0.0) };
        let a_r = -2.0 * a * r * a_term;
        let a_rr = (4.0 * a * a * r * r - 2.0 * a) * a_term;
        ScaledJet {
            w: a_term - b_term,
            w_s: -self.beta * a_term + (self.beta + 1.0) * b_term,
            w_r: a_r - b_r,
            w_rr: a_rr - b_rr,
            scale: a_term.max(b_term) * (1.0 + self.beta + a_rr.abs().max(a_r.abs())),
        }
    }

    /// `(w_s + P⁺(D²w) − ½ y·Dw) / scale` at `(r, s)`, where `scale` bounds
    /// the size of the individual terms.
    pub fn relative_defect(&self, r: f64, s: f64) -> f64 {
        let reference = self.log_scale(r, s);
        let j = self.jet(r, s, reference);
        let tangential = if r > 0.0 { j.w_r / r } else { j.w_rr };
        let (la, lb, outer) = self.log_parts(r, s);
        let a_mag = (la - reference).exp();
        let b_mag = (lb - reference).exp();
        let tangential_mag = 2.0 * self.a * a_mag + if outer && r > 0.0 { b_mag / r } else { 0.0 };
        let upp = self.bounds.Lambda();
        let nf = self.n as f64;
        let e = j.w_s + eval_pucci(&radial_hessian_spectrum(j.w_rr, tangential, self.n), self.bounds, PucciSign::Plus)
            - 0.5 * r * j.w_r;
        let scale = self.beta * a_mag
            + (self.beta + 1.0) * b_mag
            + upp * ((4.0 * self.a * self.a * r * r + 2.0 * self.a) * a_mag + if outer { b_mag } else { 0.0 })
            + upp * (nf - 1.0) * tangential_mag
            + 0.5 * r * (2.0 * self.a * r * a_mag + if outer { b_mag } else { 0.0 });
        e / scale
    }

    /// `w(y, s) > 0`, decided in log space.
    pub fn is_positive(&self, r: f64, s: f64) -> bool {
        let (la, lb, _) = self.log_parts(r, s);
        la > lb
    }

    /// For `|y| > r₁`: `w > 0` exactly when `s` exceeds this value.
    pub fn positivity_threshold(&self, r: f64) -> f64 {
        self.a * r * r - r + self.log_delta
    }
}

/// Random `(|y|, s)` pairs, alternating between `|y| < r₁` and
/// `r₁ < |y| < 3r₁`, with `s ∈ [0, 5]`, keeping clear of the kink by `gap`.
pub fn subsolution_samples(b: EllipticityBounds, n: usize, count: usize, seed: u64, gap: f64) -> Vec<(f64, f64)> {
    let w = SpecialSubsolution::new(b, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let r = if k % 2 == 0 { rng.gen_range(0.0..w.r1 - gap) } else { rng.gen_range(w.r1 + gap..3.0 * w.r1) };
            (r, rng.gen_range(0.0..=5.0))
        })
        .collect()
}

/// `w_s + P⁺(D²w) − ½ y·Dw ≤ 0` at every sample, relative to the dominant
/// term, with tolerance `1e−12`.
pub fn check_special_subsolution(b: EllipticityBounds, n: usize, samples: &[(f64, f64)]) -> CheckResult {
    let w = SpecialSubsolution::new(b, n);
    let mut worst = Worst::new();
    for &(r, s) in samples {
        worst.update(-w.relative_defect(r, s), &[r, s]);
    }
    CheckResult::from_slack("special_subsolution", worst.slack, worst.location, CLOSED_FORM_TOL)
}

pub const FD_STEP: f64 = 1e-5;
pub const FD_TOL: f64 = 1e-8;

/// Compare analytic derivatives of `φᵃ` and `w` with centred differences
/// (step `1e−5`) of the analytic lower-order derivatives. Slack is
/// `1e−8 − max relative disagreement`.
pub fn check_subsolution_derivatives(b: EllipticityBounds, n: usize, count: usize, seed: u64) -> CheckResult {
    let w = SpecialSubsolution::new(b, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = FD_STEP;
    let mut worst = Worst::new();
    let rel = |fd: f64, exact: f64, scale: f64| (fd - exact).abs() / scale.max(exact.abs());
    for k in 0..count {
        let r = if k % 2 == 0 { rng.gen_range(0.1..w.r1 - 0.1) } else { rng.gen_range(w.r1 + 0.1..1.25 * w.r1) };
        let s = rng.gen_range(0.1..5.0);
        let reference = w.log_scale(r, s);
        let at = |rr: f64, ss: f64| w.jet(rr, ss, reference);
        let c = at(r, s);
        let (rp, rm) = (at(r + h, s), at(r - h, s));
        let (sp, sm) = (at(r, s + h), at(r, s - h));
        let err_w = rel((rp.w - rm.w) / (2.0 * h), c.w_r, c.scale)
            .max(rel((rp.w_r - rm.w_r) / (2.0 * h), c.w_rr, c.scale))
            .max(rel((sp.w - sm.w) / (2.0 * h), c.w_s, c.scale));
        let a = w.a;
        let phi = |x: f64| (-a * x * x).exp();
        let dphi = |x: f64| -2.0 * a * x * phi(x);
        let d2phi = |x: f64| (4.0 * a * a * x * x - 2.0 * a) * phi(x);
        let rq = r.min(3.0 / a.sqrt());
        let scale_phi = phi(rq) * (1.0 + 2.0 * a * rq + 4.0 * a * a * rq * rq);
        let err_phi = rel((phi(rq + h) - phi(rq - h)) / (2.0 * h), dphi(rq), scale_phi)
            .max(rel((dphi(rq + h) - dphi(rq - h)) / (2.0 * h), d2phi(rq), scale_phi));
        worst.update(FD_TOL - err_w.max(err_phi), &[r, s]);
    }
    CheckResult::from_slack("subsolution_derivatives", worst.slack, worst.location, 0.0)
}

pub const INTERP_TOL: f64 = 1e-6;

/// Build `Φ(r, σ) = σ^{−α} φ(r/√σ)` on the grid of `φ`, rescale it back with
/// `T_σ`, and compare with `φ` on `r ≤ 3` where `√σ r` stays in the grid.
pub fn check_self_similarity(alpha: f64, phi: &ProfileField, sigmas: &[f64]) -> CheckResult {
    let interp = MonotoneCubic::new(phi);
    let mut worst = Worst::new();
    for &sigma in sigmas {
        let at_sigma = phi.grid.sample(|r| sigma.powf(-alpha) * interp.eval(r / sigma.sqrt()));
        let back = rescale_state(&at_sigma, sigma, alpha);
        let mut err = 0.0f64;
        let mut where_ = 0.0;
        for (r, (x, y)) in phi.grid.nodes().zip(back.values.iter().zip(&phi.values)) {
            if r > 3.0 + 1e-12 || sigma.sqrt() * r > phi.grid.r_max() {
                break;
            }
            let e = (x - y).abs();
            if e > err {
                err = e;
                where_ = r;
            }
        }
        worst.update(-err, &[where_, sigma]);
    }
    CheckResult::from_slack("self_similarity", worst.slack, worst.location, INTERP_TOL)
}

/// `α⁺(F̃̃) = α⁺(F)` and the ordering `α⁻ ≤ n/2 ≤ α⁺` for convex `F`
/// (reversed for concave `F`, equality for linear `F`). `tol` drives the
/// eigensolver, `tolerance` bounds the admissible ordering defect.
pub fn check_duality_exponents(spec: &OperatorSpec, grid: &RadialGrid, tol: f64, tolerance: f64) -> Result<CheckResult> {
    let plus = inverse_power_iteration(spec, grid, tol, DEFAULT_MAX_ITER)?.alpha;
    let again = inverse_power_iteration(&spec.dual().dual(), grid, tol, DEFAULT_MAX_ITER)?.alpha;
    let minus = inverse_power_iteration(&spec.dual(), grid, tol, DEFAULT_MAX_ITER)?.alpha;
    let half = grid.dim() as f64 / 2.0;
    let mut slack = -(plus - again).abs();
    let ordering = if spec.is_linear() {
        -(plus - half).abs().max((minus - half).abs())
    } else if spec.is_convex() {
        (half - minus).min(plus - half)
    } else {
        (half - plus).min(minus - half)
    };
    slack = slack.min(ordering);
    Ok(CheckResult::from_slack("duality_exponents", slack, vec![plus, minus], tolerance))
}

/// Admissible disagreement between discrete exponents on spacing `h`.
pub fn discretization_tolerance(h: f64) -> f64 {
    (2e-3f64).max(5.0 * h * h)
}

pub const SUITE_SEED: u64 = 20_240_601;

/// The default suite for one operator, dimension and grid: operator
/// axioms, both Gaussian sandwiches, the exponent chain for the Pucci pair
/// with the same constants, envelopes and self-similarity of `φ⁺(F)`,
/// duality, and the special subsolution with its derivatives.
pub fn default_suite(spec: &OperatorSpec, grid: &RadialGrid, tol: f64) -> Result<Vec<CheckResult>> {
    let b = spec.bounds();
    let n = grid.dim();
    let disc = discretization_tolerance(grid.h());
    let mut out = Vec::new();

    let sandwich = check_ellipticity_sandwich(spec, 1000, SUITE_SEED)?;
    out.push(CheckResult::from_slack("ellipticity_sandwich", sandwich.max_violation, vec![], CLOSED_FORM_TOL));
    let homogeneity = check_homogeneity(spec, 1000, SUITE_SEED)?;
    out.push(CheckResult::from_slack("homogeneity", -homogeneity.max_relative_error, vec![], CLOSED_FORM_TOL));

    let (minus, plus) = check_gaussian_bounds(b, n, &gaussian_bound_samples(b, 1000));
    out.push(minus);
    out.push(plus);
    let gap = gaussian_branch_gap(b, n);
    out.push(CheckResult::from_slack("gaussian_branch_continuity", -gap, vec![], 1e-14));

    let pm = inverse_power_iteration(&OperatorSpec::pucci_minus(b.lambda(), b.Lambda())?, grid, tol, DEFAULT_MAX_ITER)?;
    let pp = inverse_power_iteration(&OperatorSpec::pucci_plus(b.lambda(), b.Lambda())?, grid, tol, DEFAULT_MAX_ITER)?;
    out.push(check_exponent_chain(pm.alpha, pp.alpha, b, n, disc));

    let own = inverse_power_iteration(spec, grid, tol, DEFAULT_MAX_ITER)?;
    out.push(check_envelopes(&own.profile, b));
    out.push(check_self_similarity(own.alpha, &own.profile, &[2.0, 10.0, 100.0]));
    out.push(check_duality_exponents(spec, grid, tol, disc)?);

    out.push(check_special_subsolution(b, n, &subsolution_samples(b, n, 500, SUITE_SEED, 1e-3)));
    out.push(check_subsolution_derivatives(b, n, 100, SUITE_SEED));
    Ok(out)
}
