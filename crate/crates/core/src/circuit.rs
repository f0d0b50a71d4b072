//! A parallel-plate capacitor filled with a dispersive dielectric, closed by
//! a self-inductance. Used to check that frequency derivatives of the
//! capacitance drop out of the adiabatic force.

use crate::dispersion::{LorentzModel, DEFAULT_RESONANCE_HALFWIDTH};
use crate::engine::{find_root, finite_diff, Tolerance};
use crate::error::{domain, Result};

/// How the capacitance depends on frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacitanceModel {
    /// `C(ω, a) = A/a`.
    Constant,
    /// `C(ω, a) = (A/a)·ε(ω)` with a Lorentz permittivity.
    Lorentz(LorentzModel),
}

/// Capacitor plus inductor. The electromotive force only enters the
/// time-averaged energy balance and has no runtime field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitSpec {
    pub inductance: f64,
    pub plate_area: f64,
    pub a: f64,
    /// Mean-square potential across the plates.
    pub phi_sq: f64,
    pub capacitance: CapacitanceModel,
    /// Relative half-width kept clear of the resonance when bracketing.
    pub resonance_halfwidth: f64,
}

impl CircuitSpec {
    /// Circuit whose static capacitance at separation `a` is `c0`.
    pub fn new(
        inductance: f64,
        c0: f64,
        a: f64,
        phi_sq: f64,
        capacitance: CapacitanceModel,
    ) -> Result<Self> {
        let spec = CircuitSpec {
            inductance,
            plate_area: c0 * a,
            a,
            phi_sq,
            capacitance,
            resonance_halfwidth: DEFAULT_RESONANCE_HALFWIDTH,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("inductance L", self.inductance),
            ("plate area", self.plate_area),
            ("separation a", self.a),
            ("phi_sq", self.phi_sq),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!("{name} must be finite and > 0, got {v}"));
            }
        }
        if !(self.resonance_halfwidth > 0.0 && self.resonance_halfwidth < 1.0) {
            return domain("resonance half-width must lie in (0, 1)");
        }
        if let CapacitanceModel::Lorentz(m) = self.capacitance {
            m.validate()?;
        }
        Ok(())
    }

    pub fn with_separation(self, a: f64) -> Self {
        CircuitSpec { a, ..self }
    }

    /// Static capacitance `A/a`.
    pub fn c0(&self) -> f64 {
        self.plate_area / self.a
    }

    /// `C(ω, a)`.
    pub fn capacitance_at(&self, omega: f64) -> f64 {
        match self.capacitance {
            CapacitanceModel::Constant => self.c0(),
            CapacitanceModel::Lorentz(m) => {
                let r = omega / m.omega0;
                self.c0() * (1.0 + (m.eps_bar - 1.0) / (1.0 - r * r))
            }
        }
    }

    /// `∂C/∂ω` at fixed `a`, differentiated analytically.
    pub fn dc_domega(&self, omega: f64) -> f64 {
        match self.capacitance {
            CapacitanceModel::Constant => 0.0,
            CapacitanceModel::Lorentz(m) => {
                let r = omega / m.omega0;
                let den = 1.0 - r * r;
                self.c0() * (m.eps_bar - 1.0) * 2.0 * omega / (m.omega0 * m.omega0 * den * den)
            }
        }
    }
}

/// Eigenfrequency and energy of the circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitEnergy {
    /// `W̄ = (1/2ω) d(ω²C)/dω · φ̄²`.
    pub value: f64,
    pub omega_star: f64,
    pub dc_domega: f64,
    /// Central-difference cross-check of `dc_domega` (step 1e-6).
    pub dc_domega_fd: f64,
}

/// Lowest positive root of `ω²LC(ω) = 1`, bracketed by
/// `(0, ω₀(1 − δ))` for a Lorentz capacitance.
pub fn eigenfrequency(spec: &CircuitSpec, tol: &Tolerance) -> Result<f64> {
    spec.validate()?;
    let hi = match spec.capacitance {
        CapacitanceModel::Constant => 2.0 / (spec.inductance * spec.c0()).sqrt(),
        CapacitanceModel::Lorentz(m) => m.omega0 * (1.0 - spec.resonance_halfwidth),
    };
    let tight = Tolerance {
        rel: tol.rel.min(1e-15),
        abs: 0.0,
        ..*tol
    };
    find_root(
        |w| w * w * spec.inductance * spec.capacitance_at(w) - 1.0,
        (0.0, hi),
        &tight,
    )
}

/// Circuit energy at the eigenfrequency, `φ̄²·(C + ωC′/2)`.
pub fn circuit_energy(spec: &CircuitSpec, tol: &Tolerance) -> Result<CircuitEnergy> {
    let w = eigenfrequency(spec, tol)?;
    let dc = spec.dc_domega(w);
    let dc_fd = finite_diff(|x| spec.capacitance_at(x), w, 1e-6);
    // d(ω²C)/dω = 2ωC + ω²C′
    let d_w2c = 2.0 * w * spec.capacitance_at(w) + w * w * dc;
    Ok(CircuitEnergy {
        value: d_w2c / (2.0 * w) * spec.phi_sq,
        omega_star: w,
        dc_domega: dc,
        dc_domega_fd: dc_fd,
    })
}

/// The inductive and capacitive halves `½LJ̄²` and `½Cφ̄²` at the
/// eigenfrequency, with `J̄² = ω²C²φ̄²`.
pub fn energy_halves(spec: &CircuitSpec, tol: &Tolerance) -> Result<(f64, f64)> {
    let w = eigenfrequency(spec, tol)?;
    let c = spec.capacitance_at(w);
    let inductive = 0.5 * spec.inductance * w * w * c * c * spec.phi_sq;
    let capacitive = 0.5 * c * spec.phi_sq;
    Ok((inductive, capacitive))
}

/// Outcome of an adiabatic plate displacement `a → a(1 + δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticCheck {
    /// `W̄·(ω′ − ω)/ω` with `ω′` re-solved at the displaced separation.
    pub lhs: f64,
    /// `W̄·δω/ω` with `δω` taken from the static capacitance change; equal
    /// to `rhs` up to rounding.
    pub lhs_chain: f64,
    /// `−½φ̄²(δC)_st`.
    pub rhs: f64,
    /// `(δC)_st = C(ω, a(1+δ)) − C(ω, a)`.
    pub delta_c_static: f64,
    /// Total capacitance change from re-solving, `C(ω′, a′) − C(ω, a)`.
    pub delta_c_total: f64,
    /// `(δC)_st + (dC/dω)·δω` with the chain `δω`.
    pub delta_c_predicted: f64,
}

impl AdiabaticCheck {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Displaces the plates by `a·delta_a_rel` at fixed adiabatic invariant
/// `W̄/ω` and compares the energy change with the static-capacitor result.
pub fn adiabatic_variation_check(
    spec: &CircuitSpec,
    delta_a_rel: f64,
    tol: &Tolerance,
) -> Result<AdiabaticCheck> {
    if !(delta_a_rel > 0.0 && delta_a_rel < 0.5) {
        return domain(format!("delta_a_rel must lie in (0, 0.5), got {delta_a_rel}"));
    }
    let before = circuit_energy(spec, tol)?;
    let w = before.omega_star;
    let moved = spec.with_separation(spec.a * (1.0 + delta_a_rel));
    let w_moved = eigenfrequency(&moved, tol)?;

    let c = spec.capacitance_at(w);
    let delta_c_static = moved.capacitance_at(w) - c;
    let d_w2c = 2.0 * w * c + w * w * before.dc_domega;
    let delta_omega_chain = -delta_c_static * w * w / d_w2c;

    Ok(AdiabaticCheck {
        lhs: before.value * (w_moved - w) / w,
        lhs_chain: before.value * delta_omega_chain / w,
        rhs: -0.5 * spec.phi_sq * delta_c_static,
        delta_c_static,
        delta_c_total: moved.capacitance_at(w_moved) - c,
        delta_c_predicted: delta_c_static + before.dc_domega * delta_omega_chain,
    })
}
