//! Command-line front end: parameter sweeps emitted as CSV or JSON tables.
//!
//! Parameters come from built-in defaults, then a `key = value` config file
//! (`--config`, or the path in `CASIMIR_CONFIG`), then flags. Exit status is
//! 0 on success, 1 when any row failed to converge (or a crosscheck failed,
//! or the numerics broke down), and 2 for usage and domain errors.

mod commands;
mod crosscheck;
mod params;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use commands::{Command, PROFILE_POINTS};
pub use crosscheck::{Check, Suite};
pub use params::{Params, Scale, Sweep, PARAMETERS};
pub use table::{render, Cell, Format, Row};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "CASIMIR_CONFIG";

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    about = "Casimir energies of a parallel-plate cavity",
    version
)]
struct Args {
    /// What to compute.
    #[arg(value_enum)]
    command: Command,

    /// Plate separation.
    #[arg(long)]
    a: Option<f64>,
    /// Temperature.
    #[arg(long = "T")]
    temperature: Option<f64>,
    /// Refractive index of the medium between the plates.
    #[arg(long)]
    n: Option<f64>,
    /// Spacetime dimension.
    #[arg(long = "D")]
    dim: Option<u32>,
    /// Static permittivity of the Lorentz medium.
    #[arg(long = "eps-bar")]
    eps_bar: Option<f64>,
    /// Resonance frequency of the Lorentz medium.
    #[arg(long)]
    omega0: Option<f64>,
    /// Exponential mode cutoff for cutoff-sum.
    #[arg(long = "cutoff-lambda")]
    cutoff_lambda: Option<f64>,
    /// Frequency cutoff of the dispersive correction (default 10·omega0).
    #[arg(long = "omega-max")]
    omega_max: Option<f64>,
    /// Relative half-width kept clear of the resonance.
    #[arg(long = "delta-resonance")]
    delta_resonance: Option<f64>,
    /// Circuit inductance.
    #[arg(long = "L")]
    inductance: Option<f64>,
    /// Static capacitance of the circuit.
    #[arg(long = "C0")]
    c0: Option<f64>,
    /// Mean-square potential across the plates.
    #[arg(long = "phi-sq")]
    phi_sq: Option<f64>,

    /// One-parameter sweep, `param:start:stop:count:lin|log`.
    #[arg(long, value_parser = parse_sweep)]
    sweep: Option<Sweep>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key = value parameter file; flags take precedence.
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long = "tol-rel")]
    tol_rel: Option<f64>,
    #[arg(long = "tol-abs")]
    tol_abs: Option<f64>,

    /// Which checks crosscheck runs.
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
}

fn parse_sweep(s: &str) -> std::result::Result<Sweep, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Args {
    fn flag_values(&self) -> [(&'static str, Option<f64>); 14] {
        [
            ("a", self.a),
            ("T", self.temperature),
            ("n", self.n),
            ("D", self.dim.map(f64::from)),
            ("eps-bar", self.eps_bar),
            ("omega0", self.omega0),
            ("cutoff-lambda", self.cutoff_lambda),
            ("omega-max", self.omega_max),
            ("delta-resonance", self.delta_resonance),
            ("L", self.inductance),
            ("C0", self.c0),
            ("phi-sq", self.phi_sq),
            ("tol-rel", self.tol_rel),
            ("tol-abs", self.tol_abs),
        ]
    }

    fn params(&self) -> Result<Params> {
        let mut p = Params::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Domain(format!("cannot read config {}: {e}", path.display()))
            })?;
            p.merge_config(&text)?;
        }
        for (name, value) in self.flag_values() {
            if let Some(v) = value {
                p.set(name, v)?;
            }
        }
        Ok(p)
    }
}

/// A finished table and whether every row met its accuracy contract.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub rows: Vec<Row>,
    pub all_good: bool,
}

fn converged(row: &Row) -> bool {
    row.0.iter().all(|(k, c)| match (k.as_str(), c) {
        ("converged" | "pass", Cell::Flag(b)) => *b,
        _ => true,
    })
}

/// Computes the table for `command` at every sweep point, in sweep order.
pub fn run(
    command: Command,
    params: &Params,
    sweep: Option<&Sweep>,
    suite: Suite,
) -> Result<Outcome> {
    if command == Command::Crosscheck {
        let rows: Vec<Row> = crosscheck::run(suite)?.iter().map(Check::row).collect();
        let all_good = rows.iter().all(converged);
        return Ok(Outcome { rows, all_good });
    }
    let points: Vec<Params> = match sweep {
        None => vec![params.clone()],
        Some(s) => s
            .points()
            .into_iter()
            .map(|v| {
                let mut p = params.clone();
                p.set(&s.param, v).map(|_| p)
            })
            .collect::<Result<_>>()?,
    };
    let tables = points
        .par_iter()
        .map(|p| commands::rows(command, p))
        .collect::<Result<Vec<Vec<Row>>>>()?;
    let rows: Vec<Row> = tables.into_iter().flatten().collect();
    let all_good = rows.iter().all(converged);
    Ok(Outcome { rows, all_good })
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) => 2,
        _ => 1,
    }
}

/// Entry point used by the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = args
        .params()
        .and_then(|p| run(args.command, &p, args.sweep.as_ref(), args.suite));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = render(&outcome.rows, args.format);
    let written = match &args.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    if outcome.all_good {
        0
    } else {
        eprintln!("warning: some rows did not meet their accuracy target");
        1
    }
}
