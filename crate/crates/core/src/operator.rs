//! Positively homogeneous, uniformly elliptic operators `F(D²u)` that depend
//! only on the spectrum of the Hessian.
//!
//! Sign convention: the parabolic equation is `u_t + F(D²u) = 0`, so the heat
//! equation corresponds to `F(M) = -tr M` and every operator here is
//! nonincreasing in each eigenvalue.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("invalid ellipticity bounds lambda={lambda}, Lambda={upper}: need 0 < lambda <= Lambda")]
    InvalidBounds { lambda: f64, upper: f64 },
    #[error("invalid operator parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse operator `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("ellipticity sandwich violated by {violation:e} at trial {trial}")]
    EllipticityViolation { violation: f64, trial: usize },
    #[error("homogeneity violated: relative error {error:e} at trial {trial}")]
    HomogeneityViolation { error: f64, trial: usize },
}

/// Ellipticity constants `0 < λ ≤ Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticityBounds {
    lambda: f64,
    upper: f64,
}

impl EllipticityBounds {
    pub fn new(lambda: f64, upper: f64) -> Result<Self, OperatorError> {
        if !(lambda > 0.0 && lambda.is_finite() && upper.is_finite() && lambda <= upper) {
            return Err(OperatorError::InvalidBounds { lambda, upper });
        }
        Ok(Self { lambda, upper })
    }

    /// Lower constant λ.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Upper constant Λ.
    #[allow(non_snake_case)]
    pub fn Lambda(&self) -> f64 {
        self.upper
    }

    /// Interval `[nλ/(2Λ), nΛ/(2λ)]` that contains the positive exponent of
    /// every operator with these constants.
    pub fn exponent_interval(&self, dim: usize) -> (f64, f64) {
        let n = dim as f64;
        (n * self.lambda / (2.0 * self.upper), n * self.upper / (2.0 * self.lambda))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PucciSign {
    Plus,
    Minus,
}

/// Pucci extremal operator evaluated through the eigenvalue formula.
pub fn eval_pucci(eigenvalues: &[f64], bounds: EllipticityBounds, sign: PucciSign) -> f64 {
    let (on_pos, on_neg) = match sign {
        PucciSign::Plus => (bounds.lambda, bounds.upper),
        PucciSign::Minus => (bounds.upper, bounds.lambda),
    };
    let mut pos = 0.0;
    let mut neg = 0.0;
    for &mu in eigenvalues {
        if mu > 0.0 {
            pos += mu;
        } else if mu < 0.0 {
            neg += mu;
        }
    }
    -on_pos * pos - on_neg * neg
}

/// Eigenvalues of a symmetric matrix; length is the ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HessianSpectrum(Vec<f64>);

impl HessianSpectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self, OperatorError> {
        if eigenvalues.is_empty() {
            return Err(OperatorError::InvalidParameter(
                "spectrum must have at least one eigenvalue".into(),
            ));
        }
        Ok(Self(eigenvalues))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, eta: f64) -> Self {
        Self(self.0.iter().map(|m| eta * m).collect())
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|m| -m).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for HessianSpectrum {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Spectrum of the Hessian of a radial function: `φ″(r)` once and `φ′(r)/r`
/// with multiplicity `n − 1`.
pub fn radial_hessian_spectrum(second_radial: f64, slope_over_r: f64, dim: usize) -> HessianSpectrum {
    assert!(dim >= 1, "dimension must be at least 1");
    let mut eig = Vec::with_capacity(dim);
    eig.push(second_radial);
    eig.extend(std::iter::repeat_n(slope_over_r, dim - 1));
    HessianSpectrum(eig)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    PucciPlus,
    PucciMinus,
    /// `F(M) = −max{tr M/(1−γ), tr M/(1+γ)}`.
    Barenblatt { gamma: f64 },
    /// `F(M) = −c tr M`.
    LinearTrace { coeff: f64 },
    /// `F(M) = max_c (−c tr M)`.
    MaxOfLinearTrace { coeffs: Vec<f64> },
    /// `F̃(M) = −F(−M)`.
    Dual(Box<OperatorSpec>),
}

/// An operator together with its ellipticity constants.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    bounds: EllipticityBounds,
}

impl OperatorSpec {
    pub fn pucci_plus(lambda: f64, upper: f64) -> Result<Self, OperatorError> {
        Ok(Self { kind: OperatorKind::PucciPlus, bounds: EllipticityBounds::new(lambda, upper)? })
    }

    pub fn pucci_minus(lambda: f64, upper: f64) -> Result<Self, OperatorError> {
        Ok(Self { kind: OperatorKind::PucciMinus, bounds: EllipticityBounds::new(lambda, upper)? })
    }

    pub fn barenblatt(gamma: f64) -> Result<Self, OperatorError> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(OperatorError::InvalidParameter(format!(
                "barenblatt gamma must lie in (0,1), got {gamma}"
            )));
        }
        let bounds = EllipticityBounds::new(1.0 / (1.0 + gamma), 1.0 / (1.0 - gamma))?;
        Ok(Self { kind: OperatorKind::Barenblatt { gamma }, bounds })
    }

    pub fn linear(coeff: f64) -> Result<Self, OperatorError> {
        let bounds = EllipticityBounds::new(coeff, coeff)?;
        Ok(Self { kind: OperatorKind::LinearTrace { coeff }, bounds })
    }

    /// The heat operator `−tr M`.
    pub fn heat() -> Self {
        Self::linear(1.0).expect("unit coefficient is valid")
    }

    pub fn max_of_linear(coeffs: Vec<f64>) -> Result<Self, OperatorError> {
        if coeffs.is_empty() {
            return Err(OperatorError::InvalidParameter("coefficient list is empty".into()));
        }
        let lo = coeffs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let bounds = EllipticityBounds::new(lo, hi)?;
        Ok(Self { kind: OperatorKind::MaxOfLinearTrace { coeffs }, bounds })
    }

    /// Attach arbitrary bounds to a kind. Used to exercise the ellipticity
    /// checks with misconfigured constants.
    pub fn with_bounds(kind: OperatorKind, bounds: EllipticityBounds) -> Self {
        Self { kind, bounds }
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn bounds(&self) -> EllipticityBounds {
        self.bounds
    }

    /// The dual operator `F̃(M) = −F(−M)`; `dual` is an involution and
    /// linear operators are self-dual.
    pub fn dual(&self) -> Self {
        match &self.kind {
            OperatorKind::Dual(inner) => (**inner).clone(),
            OperatorKind::LinearTrace { .. } => self.clone(),
            _ => Self { kind: OperatorKind::Dual(Box::new(self.clone())), bounds: self.bounds },
        }
    }

    /// Evaluate `F` on a Hessian spectrum.
    pub fn eval(&self, eigenvalues: &[f64]) -> f64 {
        match &self.kind {
            OperatorKind::PucciPlus => eval_pucci(eigenvalues, self.bounds, PucciSign::Plus),
            OperatorKind::PucciMinus => eval_pucci(eigenvalues, self.bounds, PucciSign::Minus),
            OperatorKind::Barenblatt { gamma } => {
                let t: f64 = eigenvalues.iter().sum();
                -f64::max(t / (1.0 - gamma), t / (1.0 + gamma))
            }
            OperatorKind::LinearTrace { coeff } => -coeff * eigenvalues.iter().sum::<f64>(),
            OperatorKind::MaxOfLinearTrace { coeffs } => {
                let t: f64 = eigenvalues.iter().sum();
                coeffs.iter().map(|c| -c * t).fold(f64::NEG_INFINITY, f64::max)
            }
            OperatorKind::Dual(inner) => {
                let neg: Vec<f64> = eigenvalues.iter().map(|m| -m).collect();
                -inner.eval(&neg)
            }
        }
    }

    /// `F` is convex (a supremum of linear operators).
    pub fn is_convex(&self) -> bool {
        self.control_set().extremum == Extremum::Sup
    }

    /// `F` is concave (an infimum of linear operators).
    pub fn is_concave(&self) -> bool {
        let cs = self.control_set();
        cs.extremum == Extremum::Inf || cs.controls.len() == 1
    }

    pub fn is_linear(&self) -> bool {
        self.control_set().controls.len() == 1
    }

    /// Sup/inf representation of `F` restricted to radial Hessian spectra.
    pub fn control_set(&self) -> ControlSet {
        let b = self.bounds;
        let pucci_controls = || {
            let mut v = Vec::with_capacity(4);
            for &r in &[b.lambda, b.upper] {
                for &t in &[b.lambda, b.upper] {
                    v.push(Control { radial: r, tangential: t });
                }
            }
            v.dedup();
            v
        };
        match &self.kind {
            OperatorKind::PucciPlus => ControlSet { extremum: Extremum::Sup, controls: pucci_controls() },
            OperatorKind::PucciMinus => ControlSet { extremum: Extremum::Inf, controls: pucci_controls() },
            OperatorKind::Barenblatt { gamma } => ControlSet {
                extremum: Extremum::Inf,
                controls: vec![Control::isotropic(1.0 / (1.0 + gamma)), Control::isotropic(1.0 / (1.0 - gamma))],
            },
            OperatorKind::LinearTrace { coeff } => {
                ControlSet { extremum: Extremum::Sup, controls: vec![Control::isotropic(*coeff)] }
            }
            OperatorKind::MaxOfLinearTrace { coeffs } => ControlSet {
                extremum: Extremum::Sup,
                controls: coeffs.iter().map(|&c| Control::isotropic(c)).collect(),
            },
            OperatorKind::Dual(inner) => {
                let mut cs = inner.control_set();
                cs.extremum = cs.extremum.flipped();
                cs
            }
        }
    }
}

/// Free-function form of [`OperatorSpec::eval`].
pub fn eval_operator(spec: &OperatorSpec, spectrum: &HessianSpectrum) -> f64 {
    spec.eval(spectrum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

impl Extremum {
    fn flipped(self) -> Self {
        match self {
            Extremum::Sup => Extremum::Inf,
            Extremum::Inf => Extremum::Sup,
        }
    }

    #[inline]
    fn better(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Extremum::Sup => candidate > incumbent,
            Extremum::Inf => candidate < incumbent,
        }
    }
}

/// Diffusion coefficients applied to the radial and tangential curvature
/// directions of a radial Hessian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Control {
    pub radial: f64,
    pub tangential: f64,
}

impl Control {
    pub fn isotropic(c: f64) -> Self {
        Self { radial: c, tangential: c }
    }

    /// `−(c_rad μ_rad + c_tan (n−1) μ_tan)`.
    #[inline]
    pub fn apply(&self, second: f64, slope_over_r: f64, dim: usize) -> f64 {
        -(self.radial * second + self.tangential * (dim - 1) as f64 * slope_over_r)
    }

    /// Coefficient sum `c_rad + (n−1) c_tan`, the weight when all
    /// eigenvalues coincide.
    #[inline]
    pub fn trace_weight(&self, dim: usize) -> f64 {
        self.radial + (dim - 1) as f64 * self.tangential
    }
}

/// `F` on radial spectra written as `sup` or `inf` over a finite set of
/// linear operators. Every supported kind has this form.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSet {
    pub extremum: Extremum,
    pub controls: Vec<Control>,
}

impl ControlSet {
    #[inline]
    pub fn eval_radial(&self, second: f64, slope_over_r: f64, dim: usize) -> f64 {
        let mut best = self.controls[0].apply(second, slope_over_r, dim);
        for c in &self.controls[1..] {
            let v = c.apply(second, slope_over_r, dim);
            if self.extremum.better(v, best) {
                best = v;
            }
        }
        best
    }

    /// Index of the control attaining the extremum. Ties keep `current`.
    pub fn optimal_control(&self, second: f64, slope_over_r: f64, dim: usize, current: usize) -> usize {
        let mut idx = current;
        let mut best = self.controls[current].apply(second, slope_over_r, dim);
        let scale = second.abs() + slope_over_r.abs() * (dim - 1) as f64;
        for (k, c) in self.controls.iter().enumerate() {
            let v = c.apply(second, slope_over_r, dim);
            // strict improvement beyond rounding, so ties never cycle
            let margin = 1e-13 * scale * c.radial.max(c.tangential);
            let improved = match self.extremum {
                Extremum::Sup => v > best + margin,
                Extremum::Inf => v < best - margin,
            };
            if improved {
                idx = k;
                best = v;
            }
        }
        idx
    }

    /// Solve `F(μ, slope_over_r, …) = target` for the radial eigenvalue `μ`.
    /// Each branch is linear and strictly decreasing in `μ`, so the solution
    /// is the extremum of the per-branch solutions.
    #[inline]
    pub fn invert_radial(&self, target: f64, slope_over_r: f64, dim: usize) -> f64 {
        let tang = (dim - 1) as f64 * slope_over_r;
        let branch = |c: &Control| (-c.tangential * tang - target) / c.radial;
        let mut mu = branch(&self.controls[0]);
        for c in &self.controls[1..] {
            let m = branch(c);
            mu = match self.extremum {
                Extremum::Sup => mu.max(m),
                Extremum::Inf => mu.min(m),
            };
        }
        mu
    }

    /// Index of the control whose branch `invert_radial` selects.
    pub fn active_branch(&self, target: f64, slope_over_r: f64, dim: usize) -> usize {
        let tang = (dim - 1) as f64 * slope_over_r;
        let branch = |c: &Control| (-c.tangential * tang - target) / c.radial;
        let mut best = 0;
        let mut mu = branch(&self.controls[0]);
        for (k, c) in self.controls.iter().enumerate().skip(1) {
            let m = branch(c);
            let better = match self.extremum {
                Extremum::Sup => m > mu,
                Extremum::Inf => m < mu,
            };
            if better {
                best = k;
                mu = m;
            }
        }
        best
    }

    /// Smallest radial and largest tangential coefficient over the set.
    pub fn extreme_coefficients(&self) -> (f64, f64) {
        let rad = self.controls.iter().map(|c| c.radial).fold(f64::INFINITY, f64::min);
        let tan = self.controls.iter().map(|c| c.tangential).fold(f64::NEG_INFINITY, f64::max);
        (rad, tan)
    }
}

fn format_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OperatorKind::PucciPlus => write!(
                f,
                "pucci+ lambda={} Lambda={}",
                format_num(self.bounds.lambda),
                format_num(self.bounds.upper)
            ),
            OperatorKind::PucciMinus => write!(
                f,
                "pucci- lambda={} Lambda={}",
                format_num(self.bounds.lambda),
                format_num(self.bounds.upper)
            ),
            OperatorKind::Barenblatt { gamma } => write!(f, "barenblatt gamma={}", format_num(*gamma)),
            OperatorKind::LinearTrace { coeff } => write!(f, "linear c={}", format_num(*coeff)),
            OperatorKind::MaxOfLinearTrace { coeffs } => {
                let list: Vec<String> = coeffs.iter().map(|c| format_num(*c)).collect();
                write!(f, "maxlinear c={}", list.join(","))
            }
            OperatorKind::Dual(inner) => write!(f, "dual({inner})"),
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = OperatorError;

    /// Parse the canonical text form, e.g. `pucci+ lambda=1 Lambda=2`,
    /// `barenblatt gamma=0.5`, `linear c=1`, `maxlinear c=0.5,2`,
    /// `dual(pucci- lambda=1 Lambda=3)`.
    ///
    /// Names and keys are case-insensitive, except that the first letter of
    /// `lambda` / `Lambda` selects the lower or upper ellipticity constant.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| OperatorError::Parse { input: input.to_string(), reason: reason.to_string() };
        let s = input.trim();
        let lower = s.to_ascii_lowercase();
        if lower.starts_with("dual") {
            let rest = s[4..].trim_start();
            if !(rest.starts_with('(') && rest.ends_with(')')) {
                return Err(err("expected dual(<operator>)"));
            }
            let inner: OperatorSpec = rest[1..rest.len() - 1].parse()?;
            return Ok(OperatorSpec { bounds: inner.bounds, kind: OperatorKind::Dual(Box::new(inner)) });
        }

        let mut tokens = s.split_whitespace();
        let name = tokens.next().ok_or_else(|| err("empty operator"))?.to_ascii_lowercase();
        let mut lambda = None;
        let mut upper = None;
        let mut gamma = None;
        let mut coeffs: Option<Vec<f64>> = None;
        for tok in tokens {
            let (key, value) = tok.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let number = |v: &str| v.trim().parse::<f64>().map_err(|_| err(&format!("bad number `{v}`")));
            match key.to_ascii_lowercase().as_str() {
                "lambda" if key.starts_with('L') => upper = Some(number(value)?),
                "lambda" => lambda = Some(number(value)?),
                "gamma" => gamma = Some(number(value)?),
                "c" => coeffs = Some(value.split(',').map(number).collect::<Result<_, _>>()?),
                _ => return Err(err(&format!("unknown key `{key}`"))),
            }
        }
        let need = |v: Option<f64>, what: &str| v.ok_or_else(|| err(&format!("missing `{what}`")));
        let unexpected = |present: bool, what: &str| {
            if present {
                Err(err(&format!("`{what}` not valid for {name}")))
            } else {
                Ok(())
            }
        };
        match name.as_str() {
            "pucci+" | "pucci-" => {
                unexpected(gamma.is_some(), "gamma")?;
                unexpected(coeffs.is_some(), "c")?;
                let (l, u) = (need(lambda, "lambda")?, need(upper, "Lambda")?);
                if name == "pucci+" {
                    OperatorSpec::pucci_plus(l, u)
                } else {
                    OperatorSpec::pucci_minus(l, u)
                }
            }
            "barenblatt" => {
                unexpected(lambda.is_some() || upper.is_some(), "lambda")?;
                unexpected(coeffs.is_some(), "c")?;
                OperatorSpec::barenblatt(need(gamma, "gamma")?)
            }
            "linear" | "maxlinear" => {
                unexpected(lambda.is_some() || upper.is_some(), "lambda")?;
                unexpected(gamma.is_some(), "gamma")?;
                let cs = coeffs.ok_or_else(|| err("missing `c`"))?;
                if name == "linear" {
                    if cs.len() != 1 {
                        return Err(err("linear takes a single coefficient"));
                    }
                    OperatorSpec::linear(cs[0])
                } else {
                    OperatorSpec::max_of_linear(cs)
                }
            }
            "heat" => {
                unexpected(lambda.is_some() || upper.is_some() || gamma.is_some() || coeffs.is_some(), "parameters")?;
                Ok(OperatorSpec::heat())
            }
            _ => Err(err(&format!("unknown operator `{name}`"))),
        }
    }
}

impl Serialize for OperatorSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OperatorSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    /// Most negative slack of `P⁻(M−N) ≤ F(M)−F(N) ≤ P⁺(M−N)`; nonnegative
    /// when the sandwich holds everywhere sampled.
    pub max_violation: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityReport {
    pub max_relative_error: f64,
    pub trials: usize,
}

fn random_spectrum(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Sample commuting pairs `(M, N)` and test the ellipticity sandwich with
/// the constants stored in `spec`. Dimensions cycle through 1..=4.
pub fn check_ellipticity_sandwich(
    spec: &OperatorSpec,
    trials: usize,
    seed: u64,
) -> Result<SandwichReport, OperatorError> {
    if trials == 0 {
        return Err(OperatorError::InvalidParameter("trials must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = spec.bounds();
    let mut worst = f64::INFINITY;
    let mut worst_trial = 0;
    for trial in 0..trials {
        let dim = 1 + trial % 4;
        let m = random_spectrum(&mut rng, dim);
        let n = random_spectrum(&mut rng, dim);
        let diff: Vec<f64> = m.iter().zip(&n).map(|(a, b)| a - b).collect();
        let df = spec.eval(&m) - spec.eval(&n);
        let lo = eval_pucci(&diff, b, PucciSign::Minus);
        let hi = eval_pucci(&diff, b, PucciSign::Plus);
        let slack = (df - lo).min(hi - df);
        if slack < worst {
            worst = slack;
            worst_trial = trial;
        }
    }
    if worst < -1e-12 {
        return Err(OperatorError::EllipticityViolation { violation: worst, trial: worst_trial });
    }
    Ok(SandwichReport { max_violation: worst, trials })
}

/// Test `F(ηM) = ηF(M)` on random spectra and scalings `η ∈ {0} ∪ [0.1, 10]`.
///
/// The error is measured relative to `η Λ Σ|μ_j|`, the magnitude of the
/// terms being summed, which stays meaningful when `F(M)` cancels to zero.
pub fn check_homogeneity(
    spec: &OperatorSpec,
    trials: usize,
    seed: u64,
) -> Result<HomogeneityReport, OperatorError> {
    if trials == 0 {
        return Err(OperatorError::InvalidParameter("trials must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = spec.bounds().Lambda();
    let mut worst = 0.0f64;
    let mut worst_trial = 0;
    for trial in 0..trials {
        let dim = 1 + trial % 4;
        let m = HessianSpectrum(random_spectrum(&mut rng, dim));
        let eta = if trial % 10 == 0 { 0.0 } else { rng.gen_range(0.1..=10.0) };
        let lhs = spec.eval(&m.scaled(eta));
        let rhs = eta * spec.eval(&m);
        let scale = eta * upper * m.iter().map(|x| x.abs()).sum::<f64>();
        let err = if scale > 0.0 { (lhs - rhs).abs() / scale } else { (lhs - rhs).abs() };
        if err > worst {
            worst = err;
            worst_trial = trial;
        }
    }
    if worst > 1e-14 {
        return Err(OperatorError::HomogeneityViolation { error: worst, trial: worst_trial });
    }
    Ok(HomogeneityReport { max_relative_error: worst, trials })
}
