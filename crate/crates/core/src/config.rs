//! Run configuration: a small TOML document with defaults resolved at parse
//! time.
//!
//! ```toml
//! operator = "barenblatt gamma=0.5"
//! n = 1
//! method = "all"          # shooting | power | flow | all
//! tol = 1e-6
//! output_dir = "out"
//!
//! [grid]
//! R_max = "auto"          # or a number
//! N = 1000                # default round(R_max / 0.01)
//!
//! [evolve]                # g(r) = C0 exp(-B r^2)
//! B = 1.0
//! C0 = 1.0
//! sigmas = [4, 16, 64, 256]
//! t_final = 256           # default: last sigma
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mesh::{default_r_max, RadialGrid};
use crate::operator::OperatorSpec;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const MAX_TOL: f64 = 1e-2;
pub const DEFAULT_SPACING: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Shooting,
    Power,
    Flow,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawRMax {
    Value(f64),
    Keyword(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(rename = "R_max")]
    r_max: Option<RawRMax>,
    #[serde(rename = "N")]
    intervals: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvolve {
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "C0")]
    c0: Option<f64>,
    t_final: Option<f64>,
    sigmas: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    operator: String,
    n: usize,
    grid: Option<RawGrid>,
    method: Option<MethodChoice>,
    tol: Option<f64>,
    evolve: Option<RawEvolve>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(rename = "R_max")]
    pub r_max: f64,
    #[serde(rename = "N")]
    pub intervals: usize,
}

/// Cauchy data `g(r) = C₀ e^{−B r²}` and the rescaling ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    pub t_final: f64,
    pub sigmas: Vec<f64>,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self { b: 1.0, c0: 1.0, t_final: 256.0, sigmas: vec![4.0, 16.0, 64.0, 256.0] }
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub operator: OperatorSpec,
    pub n: usize,
    pub method: MethodChoice,
    pub tol: f64,
    pub output_dir: PathBuf,
    pub grid: GridConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveConfig>,
}

fn validation(msg: impl Into<String>) -> Error {
    Error::ConfigValidation(msg.into())
}

/// Parse and resolve a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let table: toml::Table = parse_table(text)?;
    resolve_table(table)
}

pub(crate) fn parse_table(text: &str) -> Result<toml::Table> {
    text.parse::<toml::Table>().map_err(|e| toml_error(text, e))
}

fn toml_error(text: &str, e: toml::de::Error) -> Error {
    let (line, column) = match e.span() {
        Some(span) => {
            let before = &text[..span.start.min(text.len())];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |k| k + 1) + 1;
            (line, column)
        }
        None => (0, 0),
    };
    Error::ConfigParse { line, column, message: e.message().to_string() }
}

/// Resolve an already parsed table; used after command-line overrides have
/// been merged in.
pub(crate) fn resolve_table(table: toml::Table) -> Result<RunConfig> {
    let text = toml::to_string(&table).unwrap_or_default();
    let raw: RawConfig = table.try_into().map_err(|e: toml::de::Error| match e.span() {
        Some(_) => toml_error(&text, e),
        None => Error::ConfigParse { line: 0, column: 0, message: e.message().to_string() },
    })?;
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<RunConfig> {
    let operator: OperatorSpec = raw.operator.parse()?;
    if raw.n == 0 {
        return Err(validation("n must be at least 1"));
    }
    let tol = raw.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol <= MAX_TOL) {
        return Err(validation(format!("tol must lie in (0, {MAX_TOL}], got {tol}")));
    }
    let grid = raw.grid.unwrap_or_default();
    let r_max = match grid.r_max {
        None => default_r_max(operator.bounds(), raw.n),
        Some(RawRMax::Keyword(k)) if k == "auto" => default_r_max(operator.bounds(), raw.n),
        Some(RawRMax::Keyword(k)) => return Err(validation(format!("R_max must be a number or \"auto\", got {k:?}"))),
        Some(RawRMax::Value(v)) => v,
    };
    let intervals = grid.intervals.unwrap_or_else(|| (r_max / DEFAULT_SPACING).round() as usize);
    RadialGrid::new(r_max, intervals, raw.n).map_err(|e| validation(e.to_string()))?;
    let evolve = match raw.evolve {
        None => None,
        Some(e) => {
            let d = EvolveConfig::default();
            let sigmas = e.sigmas.unwrap_or(d.sigmas);
            let t_final = e.t_final.or_else(|| sigmas.last().copied()).unwrap_or(d.t_final);
            let ev = EvolveConfig { b: e.b.unwrap_or(d.b), c0: e.c0.unwrap_or(d.c0), t_final, sigmas };
            if !(ev.b > 0.0 && ev.c0 > 0.0) {
                return Err(validation("evolve.B and evolve.C0 must be positive"));
            }
            if ev.sigmas.is_empty() || ev.sigmas.iter().any(|s| !(*s >= 1.0)) {
                return Err(validation("evolve.sigmas must be a nonempty list of values >= 1"));
            }
            if ev.sigmas.windows(2).any(|w| w[1] <= w[0]) {
                return Err(validation("evolve.sigmas must be increasing"));
            }
            if !(ev.t_final >= *ev.sigmas.last().unwrap()) {
                return Err(validation("evolve.t_final must be at least the largest sigma"));
            }
            Some(ev)
        }
    };
    Ok(RunConfig {
        operator,
        n: raw.n,
        method: raw.method.unwrap_or(MethodChoice::All),
        tol,
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        grid: GridConfig { r_max, intervals },
        evolve,
    })
}

impl RunConfig {
    pub fn radial_grid(&self) -> RadialGrid {
        RadialGrid::new(self.grid.r_max, self.grid.intervals, self.n).expect("validated at parse time")
    }

    pub fn evolve_or_default(&self) -> EvolveConfig {
        self.evolve.clone().unwrap_or_default()
    }

    /// Canonical TOML text; parsing it yields an equal configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    /// Hex SHA-256 of [`RunConfig::to_toml`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }
}
