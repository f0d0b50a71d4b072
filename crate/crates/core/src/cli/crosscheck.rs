//! Route-equivalence checks: each compares two independent evaluations of
//! the same quantity against a fixed threshold.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::circuit::{self, CapacitanceModel, CircuitSpec};
use crate::dispersion::{self, LorentzModel, ModeBranch};
use crate::energy::CavityConfig;
use crate::engine::Tolerance;
use crate::error::Result;
use crate::green_em::{self, Medium};
use crate::hyperdim::{self, HyperConfig};
use crate::matsubara;

use super::table::{Cell, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Thermal,
    Em,
    Hyperdim,
    Circuit,
    Dispersion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Relative deviation unless the check says otherwise.
    pub deviation: f64,
    pub threshold: f64,
}

impl Check {
    fn relative(name: String, lhs: f64, rhs: f64, threshold: f64) -> Self {
        Check {
            name,
            lhs,
            rhs,
            deviation: ((lhs - rhs) / rhs).abs(),
            threshold,
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation <= self.threshold
    }

    pub fn row(&self) -> Row {
        let mut r = Row::default();
        r.push("check", Cell::Text(self.name.clone()))
            .num("lhs", self.lhs)
            .num("rhs", self.rhs)
            .num("deviation", self.deviation)
            .num("threshold", self.threshold)
            .push("pass", Cell::Flag(self.passed()));
        r
    }
}

fn tight() -> Tolerance {
    Tolerance {
        rel: 1e-13,
        abs: 0.0,
        ..Tolerance::default()
    }
}

fn thermal() -> Result<Vec<Check>> {
    let tol = tight();
    let mut out = Vec::new();
    // the resummed bracket cancels catastrophically for naT >~ 1, so the
    // comparison stops there
    for t in [0.05, 0.1, 0.2, 0.5, 1.0] {
        let cfg = CavityConfig::new(1.0, t, 1.0)?;
        out.push(Check::relative(
            format!("U direct vs resummed, naT={t}"),
            matsubara::internal_energy_direct(&cfg, &tol)?.value,
            matsubara::internal_energy_resummed(&cfg, &tol)?.value,
            1e-9,
        ));
    }
    for t in [0.3, 1.0, 2.0] {
        let cfg = CavityConfig::new(1.0, t, 1.0)?;
        out.push(Check::relative(
            format!("U from d(beta F)/d(beta) vs direct, naT={t}"),
            matsubara::internal_energy_from_f(&cfg, &tol)?.value,
            matsubara::internal_energy_direct(&cfg, &tol)?.value,
            1e-6,
        ));
    }
    let cfg = CavityConfig::new(1.0, 0.05, 1.0)?;
    out.push(Check::relative(
        "U low-T expansion vs resummed, naT=0.05".into(),
        matsubara::internal_energy_low_t(&cfg)?.value,
        matsubara::internal_energy_resummed(&cfg, &tol)?.value,
        1e-4,
    ));
    Ok(out)
}

fn em() -> Result<Vec<Check>> {
    let tol = tight();
    let mut out = Vec::new();
    for n in [1.0, 2.0, 3.0] {
        let cfg = CavityConfig::new(1.0, 0.0, n)?;
        out.push(Check::relative(
            format!("W(T=0) vs -pi^2/(720 n a^3), n={n}"),
            green_em::em_energy_t0(&cfg, &Tolerance::default())?.value,
            -PI * PI / (720.0 * n),
            1e-8,
        ));
        out.push(Check::relative(
            format!("W(T=0) polar vs closed form, n={n}"),
            green_em::em_energy_t0_polar(&cfg, &Tolerance::default())?.value,
            -PI * PI / (720.0 * n),
            1e-8,
        ));
    }
    for t in [0.3, 1.0, 2.0, 5.0] {
        let cfg = CavityConfig::new(1.0, t, 1.0)?;
        out.push(Check::relative(
            format!("W vs U, naT={t}"),
            green_em::em_energy_finite_t(&cfg, &tol)?.value,
            matsubara::internal_energy_direct(&cfg, &tol)?.value,
            1e-10,
        ));
    }
    let cfg = CavityConfig::new(1.0, 0.0, 1.5)?;
    for (k, zeta) in [(0.3, 0.2), (1.0, 1.0), (2.5, 0.7), (5.0, 0.1)] {
        let p = green_em::spectral_energy_density(k, zeta, &cfg, Medium::non_magnetic(1.5))?;
        out.push(Check::relative(
            format!("electric vs magnetic half, k={k} zeta={zeta}"),
            p.electric_half,
            p.magnetic_half,
            1e-12,
        ));
    }
    Ok(out)
}

fn hyper() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for dim in 4..=8 {
        let cfg = HyperConfig::new(dim, 1.0, 1.0)?;
        out.push(Check::relative(
            format!("pressure quadrature vs closed form, D={dim}"),
            hyperdim::pressure_quadrature(&cfg, &Tolerance::default())?.value,
            hyperdim::pressure_closed(&cfg)?.value,
            1e-8,
        ));
    }
    for dim in 4..=6 {
        let cfg = HyperConfig::new(dim, 1.0, 1.0)?;
        let p = hyperdim::pressure_closed(&cfg)?.value;
        let w = hyperdim::pressure_from_w1(&cfg)?;
        out.push(Check::relative(
            format!("(D-1) w1 vs pressure, D={dim}"),
            w.from_identity.value,
            p,
            1e-12,
        ));
        out.push(Check::relative(
            format!("-d(a w1)/da vs pressure, D={dim}"),
            w.finite_difference.value,
            p,
            1e-8,
        ));
    }
    Ok(out)
}

/// The dispersive circuit used by the checks: ε̄ = 2, ω₀ = 10, L = C₀ = 1.
pub fn example_circuit() -> Result<CircuitSpec> {
    CircuitSpec::new(
        1.0,
        1.0,
        1.0,
        1.0,
        CapacitanceModel::Lorentz(LorentzModel::new(2.0, 10.0)?),
    )
}

fn circuit_checks() -> Result<Vec<Check>> {
    let tol = Tolerance::default();
    let spec = example_circuit()?;
    let (inductive, capacitive) = circuit::energy_halves(&spec, &tol)?;
    let coarse = circuit::adiabatic_variation_check(&spec, 1e-3, &tol)?;
    let fine = circuit::adiabatic_variation_check(&spec, 1e-4, &tol)?;
    let (e_coarse, e_fine) = ((coarse.ratio() - 1.0).abs(), (fine.ratio() - 1.0).abs());
    Ok(vec![
        Check::relative("inductive vs capacitive energy".into(), inductive, capacitive, 1e-12),
        Check {
            name: "adiabatic |lhs/rhs-1| at delta=1e-4 over delta=1e-3".into(),
            lhs: e_fine,
            rhs: e_coarse,
            deviation: e_fine / e_coarse,
            threshold: 0.12,
        },
    ])
}

fn dispersion_checks() -> Result<Vec<Check>> {
    let tol = Tolerance::default();
    let model = LorentzModel::new(2.0, 10.0)?;
    let mut out = Vec::new();
    for k in [0.5, 2.0, 5.0, 9.0] {
        let w = dispersion::dispersive_mode_solve(&model, k, &tol)?;
        let eps = dispersion::eps_of_omega(&model, w, 0.0)?;
        out.push(Check::relative(format!("n(w)w vs k, k={k}"), eps.sqrt() * w, k, 1e-10));
    }
    let x_sum = 2.0 * 100.0 + 25.0;
    let oracle = (0.5 * (x_sum - (x_sum * x_sum - 4.0 * 25.0 * 100.0_f64).sqrt())).sqrt();
    out.push(Check::relative(
        "mode vs quadratic formula, k=5".into(),
        dispersion::dispersive_mode_solve_branch(&model, 5.0, ModeBranch::Lower, &tol)?,
        oracle,
        1e-12,
    ));
    let cfg = CavityConfig::new(1.0, 0.0, 1.0)?;
    out.push(Check::relative(
        "W_I with eps_bar=1 vs vacuum".into(),
        dispersion::w_i_energy(&LorentzModel::new(1.0, 10.0)?, &cfg, &tol)?.value,
        -PI * PI / 720.0,
        1e-8,
    ));
    Ok(out)
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    let parts: Vec<fn() -> Result<Vec<Check>>> = match suite {
        Suite::All => vec![thermal, em, hyper, circuit_checks, dispersion_checks],
        Suite::Thermal => vec![thermal],
        Suite::Em => vec![em],
        Suite::Hyperdim => vec![hyper],
        Suite::Circuit => vec![circuit_checks],
        Suite::Dispersion => vec![dispersion_checks],
    };
    let groups = parts
        .par_iter()
        .map(|f| f())
        .collect::<Result<Vec<Vec<Check>>>>()?;
    Ok(groups.into_iter().flatten().collect())
}
