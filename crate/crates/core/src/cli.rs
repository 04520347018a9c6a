//! `anomex exponent|profile|evolve|verify --config <file> [overrides]`.
//!
//! Every file written to `output_dir` gets a `<file>.meta.json` sidecar with
//! the resolved configuration and its hash. Failures print
//! `{"error": <kind>, "message": ...}` on stderr; the exit status is 2 for
//! configuration and usage errors and 1 for everything else.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::config::{parse_table, resolve_table, MethodChoice, RunConfig};
use crate::error::{Error, Result};
use crate::flow::{collapse_report, evolve_cauchy_dyadic, normalized_rescaled_flow, profile_file_name, FlowOptions};
use crate::radial::{find_alpha_shooting, EigenResult};
use crate::resolvent::{inverse_power_iteration, DEFAULT_MAX_ITER};
use crate::verify::{default_suite, discretization_tolerance};

#[derive(Debug, Parser)]
#[command(name = "anomex", version, about = "Anomalous exponents and self-similar profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Compute α⁺ with the configured method(s).
    Exponent,
    /// Write the normalized profile φ⁺ as CSV.
    Profile,
    /// Evolve Gaussian data and measure collapse onto C*Φ⁺.
    Evolve,
    /// Run the verification suite.
    Verify,
}

/// Command-line values that replace the corresponding configuration keys.
#[derive(Debug, Default, clap::Args)]
pub struct Overrides {
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub operator: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// shooting, power, flow or all.
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// A number or `auto`.
    #[arg(long = "r-max", global = true)]
    pub r_max: Option<String>,
    /// Number of grid intervals.
    #[arg(long = "intervals", global = true)]
    pub intervals: Option<usize>,
    #[arg(long = "output-dir", global = true)]
    pub output_dir: Option<PathBuf>,
}

/// Read the config file (if any), apply overrides and resolve.
pub fn load_config(o: &Overrides) -> Result<RunConfig> {
    let mut table = match &o.config {
        Some(path) => parse_table(&fs::read_to_string(path)?)?,
        None => toml::Table::new(),
    };
    if let Some(v) = &o.operator {
        table.insert("operator".into(), v.clone().into());
    }
    if let Some(v) = o.n {
        table.insert("n".into(), (v as i64).into());
    }
    if let Some(v) = o.tol {
        table.insert("tol".into(), v.into());
    }
    if let Some(v) = &o.method {
        table.insert("method".into(), v.clone().into());
    }
    if let Some(v) = &o.output_dir {
        table.insert("output_dir".into(), v.display().to_string().into());
    }
    if o.r_max.is_some() || o.intervals.is_some() {
        let grid = table.entry("grid").or_insert_with(|| toml::Table::new().into());
        let grid = grid.as_table_mut().ok_or_else(|| Error::ConfigValidation("grid must be a table".into()))?;
        if let Some(v) = &o.r_max {
            let value = match v.parse::<f64>() {
                Ok(x) => x.into(),
                Err(_) => v.clone().into(),
            };
            grid.insert("R_max".into(), value);
        }
        if let Some(v) = o.intervals {
            grid.insert("N".into(), (v as i64).into());
        }
    }
    resolve_table(table)
}

/// Writes artifacts and their provenance sidecars.
struct Artifacts<'a> {
    config: &'a RunConfig,
    hash: String,
    dir: &'a Path,
}

impl<'a> Artifacts<'a> {
    fn new(config: &'a RunConfig) -> Result<Self> {
        fs::create_dir_all(&config.output_dir)?;
        Ok(Self { config, hash: config.hash(), dir: &config.output_dir })
    }

    fn write(&self, name: &str, contents: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, contents)?;
        let meta = json!({ "file": name, "config_hash": self.hash, "config": self.config });
        let mut text = serde_json::to_string_pretty(&meta)?;
        text.push('\n');
        fs::write(self.dir.join(format!("{name}.meta.json")), text)?;
        Ok(path)
    }
}

fn solve(config: &RunConfig, method: MethodChoice) -> Result<EigenResult> {
    let grid = config.radial_grid();
    let spec = &config.operator;
    match method {
        MethodChoice::Shooting => find_alpha_shooting(spec, &grid, config.tol),
        MethodChoice::Power | MethodChoice::All => inverse_power_iteration(spec, &grid, config.tol, DEFAULT_MAX_ITER),
        MethodChoice::Flow => normalized_rescaled_flow(spec, &grid, FlowOptions { tol: config.tol, ..Default::default() }),
    }
}

fn json_bytes(value: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}

/// Execute one subcommand; human-readable progress goes to `out`.
pub fn run(command: Command, config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let artifacts = Artifacts::new(config)?;
    match command {
        Command::Exponent => {
            let methods = match config.method {
                MethodChoice::All => vec![MethodChoice::Shooting, MethodChoice::Power, MethodChoice::Flow],
                m => vec![m],
            };
            let results: Vec<Result<EigenResult>> = std::thread::scope(|scope| {
                let handles: Vec<_> = methods.iter().map(|&m| scope.spawn(move || solve(config, m))).collect();
                handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
            });
            let mut alphas = Vec::new();
            for res in results {
                let res = res?;
                artifacts.write(&format!("exponent_{}.json", res.method.as_str()), &json_bytes(&res.to_json_value())?)?;
                writeln!(
                    out,
                    "{:<15} alpha={:.10} iterations={} residual={:.3e}",
                    res.method.as_str(),
                    res.alpha,
                    res.iterations,
                    res.residual
                )?;
                alphas.push(res.alpha);
            }
            if alphas.len() > 1 {
                let spread = alphas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                    - alphas.iter().cloned().fold(f64::INFINITY, f64::min);
                let tolerance = discretization_tolerance(config.radial_grid().h());
                let verdict = if spread <= tolerance { "within" } else { "outside" };
                writeln!(out, "agreement max_diff={spread:.3e} tolerance={tolerance:.3e} {verdict}")?;
            }
        }
        Command::Profile => {
            let res = solve(config, config.method)?;
            artifacts.write("profile.csv", res.profile.to_csv_string().as_bytes())?;
            writeln!(out, "{} alpha={:.10} -> profile.csv", res.method.as_str(), res.alpha)?;
        }
        Command::Evolve => {
            let ev = config.evolve_or_default();
            let eig = solve(config, config.method)?;
            let grid = config.radial_grid();
            let mut g = grid.sample(|r| ev.c0 * (-ev.b * r * r).exp());
            *g.values.last_mut().expect("grid has nodes") = 0.0;
            let trace = evolve_cauchy_dyadic(&config.operator, &g, ev.t_final, &ev.sigmas, Some(eig.alpha))?;
            let mut csv = Vec::new();
            trace.write_csv(&mut csv)?;
            artifacts.write("trace.csv", &csv)?;
            for s in &trace.profile_snapshots {
                artifacts.write(&profile_file_name(s.t), s.values.to_csv_string().as_bytes())?;
            }
            let report = collapse_report(trace, eig.alpha, &eig.profile, &ev.sigmas)?;
            artifacts.write("convergence.json", &json_bytes(&report)?)?;
            writeln!(out, "alpha={:.10} ({})", eig.alpha, eig.method.as_str())?;
            for (k, sigma) in report.sigmas.iter().enumerate() {
                writeln!(out, "sigma={sigma} cstar={:.8} sup_rel_err={:.3e}", report.cstar[k], report.sup_rel_err[k])?;
            }
        }
        Command::Verify => {
            let checks = default_suite(&config.operator, &config.radial_grid(), config.tol)?;
            artifacts.write("verify.json", &json_bytes(&checks)?)?;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {:<28} worst_slack={:.3e} tolerance={:.1e}", c.name, c.worst_slack, c.tolerance)?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Error::ChecksFailed { failed });
            }
        }
    }
    Ok(())
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConfigParse { .. } | Error::ConfigValidation(_) | Error::Operator(_) => 2,
        _ => 1,
    }
}

/// Parse `args`, run, and return the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            eprintln!("{}", error_json("usage", e.to_string().trim()));
            return 2;
        }
    };
    let result = load_config(&cli.overrides).and_then(|config| {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        run(cli.command, &config, &mut lock)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            exit_code(&e)
        }
    }
}
