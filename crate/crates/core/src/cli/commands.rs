//! One table per command and parameter point.

use crate::circuit::{self, CapacitanceModel, CircuitSpec};
use crate::dispersion::{self, CutoffSpec, LorentzModel};
use crate::energy::{CavityConfig, EnergyValue, Method};
use crate::engine::Tolerance;
use crate::error::{domain, Result};
use crate::green_em;
use crate::hyperdim::{self, HyperConfig};
use crate::matsubara;

use super::params::Params;
use super::table::{Cell, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    FreeEnergy,
    InternalEnergy,
    EmEnergy,
    Pressure,
    Profile,
    Dispersive,
    Circuit,
    CutoffSum,
    Crosscheck,
}

impl Command {
    /// Parameters echoed as input columns.
    pub fn inputs(self) -> &'static [&'static str] {
        match self {
            Command::FreeEnergy | Command::InternalEnergy | Command::EmEnergy => &["a", "T", "n"],
            Command::Pressure => &["D", "a", "T", "n"],
            Command::Profile => &["D", "a", "n"],
            Command::Dispersive => &["a", "eps-bar", "omega0", "omega-max", "delta-resonance"],
            Command::Circuit => &["L", "C0", "a", "phi-sq", "eps-bar", "omega0", "delta-resonance"],
            Command::CutoffSum => &["D", "a", "n", "cutoff-lambda", "eps-bar", "omega0"],
            Command::Crosscheck => &[],
        }
    }
}

/// Number of interior points of the density profile.
pub const PROFILE_POINTS: usize = 99;

pub fn tolerance(p: &Params) -> Result<Tolerance> {
    Tolerance::new(p.get("tol-rel"), p.get("tol-abs"), Tolerance::default().max_iter)
}

fn input_row(cmd: Command, p: &Params) -> Row {
    let mut row = Row::default();
    for name in cmd.inputs() {
        let key = name.replace('-', "_");
        if *name == "D" {
            row.push(&key, Cell::Int(p.get("D") as i64));
        } else {
            row.num(&key, p.get(name));
        }
    }
    row
}

fn finish(mut row: Row, e: &EnergyValue) -> Row {
    row.num("value", e.value)
        .num("err_estimate", e.err_estimate)
        .push("method", Cell::Text(e.method.as_str().to_string()))
        .push("converged", Cell::Flag(e.converged));
    row
}

fn cavity(p: &Params) -> Result<CavityConfig> {
    CavityConfig::new(p.get("a"), p.get("T"), p.get("n"))
}

fn lorentz(p: &Params) -> Result<LorentzModel> {
    LorentzModel::new(p.get("eps-bar"), p.get("omega0"))
}

pub fn rows(cmd: Command, p: &Params) -> Result<Vec<Row>> {
    let tol = tolerance(p)?;
    let base = input_row(cmd, p);
    let single = |e: EnergyValue| Ok(vec![finish(base.clone(), &e)]);
    match cmd {
        Command::FreeEnergy => {
            let cfg = cavity(p)?;
            if cfg.temperature == 0.0 {
                single(matsubara::free_energy_t0(&cfg)?)
            } else {
                single(matsubara::free_energy(&cfg, &tol)?)
            }
        }
        Command::InternalEnergy => single(matsubara::internal_energy(&cavity(p)?, &tol)?),
        Command::EmEnergy => {
            let cfg = cavity(p)?;
            if cfg.temperature == 0.0 {
                single(green_em::em_energy_t0(&cfg, &tol)?)
            } else {
                single(green_em::em_energy_finite_t(&cfg, &tol)?)
            }
        }
        Command::Pressure => {
            let cfg = cavity(p)?;
            let dim = p.dim()?;
            if cfg.temperature == 0.0 {
                single(hyperdim::pressure_closed(&HyperConfig::new(dim, cfg.a, cfg.n)?)?)
            } else if dim == 4 {
                single(matsubara::pressure(&cfg, &tol)?)
            } else {
                domain("finite-temperature pressure is only available for D = 4")
            }
        }
        Command::Profile => {
            let cfg = HyperConfig::new(p.dim()?, p.get("a"), p.get("n"))?;
            let prof = hyperdim::density_profile(&cfg, &hyperdim::interior_grid(PROFILE_POINTS))?;
            Ok((0..prof.u_grid.len())
                .map(|i| {
                    let mut row = base.clone();
                    row.num("u", prof.u_grid[i])
                        .num("w1", prof.w1)
                        .num("w2", prof.w2_values[i])
                        .num("total", prof.total[i])
                        .num("regularized", prof.regularized[i])
                        .push("method", Cell::Text(Method::ClosedForm.as_str().to_string()))
                        .push("converged", Cell::Flag(true));
                    row
                })
                .collect())
        }
        Command::Dispersive => {
            let model = lorentz(p)?;
            let cfg = CavityConfig::new(p.get("a"), 0.0, 1.0)?;
            let cut = CutoffSpec::new(p.get("omega-max"), p.get("delta-resonance"))?;
            let w_i = dispersion::w_i_energy(&model, &cfg, &tol)?;
            let w_ii = dispersion::w2_density_cutoff(&model, &cfg, &cut, &tol)?;
            let mut row = base;
            row.num("w_i", w_i.value)
                .num("w_ii", w_ii.value.value)
                .num("w_ii_2x", w_ii.scan[1])
                .num("w_ii_4x", w_ii.scan[2]);
            let total = EnergyValue {
                value: w_i.value + w_ii.value.value,
                err_estimate: w_i.err_estimate + w_ii.value.err_estimate,
                method: Method::Quadrature,
                converged: w_i.converged && w_ii.value.converged,
            };
            Ok(vec![finish(row, &total)])
        }
        Command::Circuit => {
            let spec = CircuitSpec::new(
                p.get("L"),
                p.get("C0"),
                p.get("a"),
                p.get("phi-sq"),
                CapacitanceModel::Lorentz(lorentz(p)?),
            )?;
            let spec = CircuitSpec {
                resonance_halfwidth: p.get("delta-resonance"),
                ..spec
            };
            let e = circuit::circuit_energy(&spec, &tol)?;
            let mut row = base;
            row.num("omega_star", e.omega_star)
                .num("capacitance", spec.capacitance_at(e.omega_star))
                .num("dc_domega", e.dc_domega);
            let value = EnergyValue {
                value: e.value,
                err_estimate: 8.0 * f64::EPSILON * e.value.abs(),
                method: Method::ClosedForm,
                converged: true,
            };
            Ok(vec![finish(row, &value)])
        }
        Command::CutoffSum => {
            let cfg = HyperConfig::new(p.dim()?, p.get("a"), p.get("n"))?;
            let lambda = p.get("cutoff-lambda");
            let vac = hyperdim::cutoff_mode_energy(&cfg, lambda, &tol)?;
            let disp = hyperdim::dispersive_hyper_energy(&cfg, &lorentz(p)?, lambda, &tol)?;
            let mut row = base;
            row.num("value_half_lambda", vac.scan[1])
                .num("value_quarter_lambda", vac.scan[2])
                .num("exponent", vac.exponent)
                .num("dispersive", disp.value.value)
                .num("dispersive_ratio", disp.value.value / vac.value.value);
            let value = EnergyValue {
                converged: vac.value.converged && disp.value.converged,
                ..vac.value
            };
            Ok(vec![finish(row, &value)])
        }
        Command::Crosscheck => unreachable!("crosscheck has its own table"),
    }
}
