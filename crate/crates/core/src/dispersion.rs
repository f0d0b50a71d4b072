//! Nondissipative single-resonance (Lorentz) dielectric between the plates:
//! permittivity on both frequency axes, the dispersive mode equation
//! `n(ω)ω = k`, the nondispersive-form energy `W_I` and the frequency-derivative
//! correction `W_II` under an explicit cutoff.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::energy::{CavityConfig, EnergyValue, Method};
use crate::engine::{adaptive_quad, find_root, Tolerance};
use crate::error::{domain, Error, Result};
use crate::green_em::{self, Medium};

/// Default relative half-width of the frequency window excluded around ω₀.
pub const DEFAULT_RESONANCE_HALFWIDTH: f64 = 0.05;

/// `ε(ω) = 1 + (ε̄ − 1)/(1 − ω²/ω₀²)`, μ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzModel {
    pub eps_bar: f64,
    pub omega0: f64,
}

impl LorentzModel {
    pub fn new(eps_bar: f64, omega0: f64) -> Result<Self> {
        let m = LorentzModel { eps_bar, omega0 };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_bar >= 1.0) || !self.eps_bar.is_finite() {
            return domain(format!("eps_bar must be >= 1, got {}", self.eps_bar));
        }
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return domain(format!("omega0 must be > 0, got {}", self.omega0));
        }
        Ok(())
    }

    /// The medium is nonmagnetic.
    pub fn mu(&self) -> f64 {
        1.0
    }

    // real-axis formula without the resonance guard
    fn eps_real(&self, omega: f64) -> f64 {
        let r = omega / self.omega0;
        1.0 + (self.eps_bar - 1.0) / (1.0 - r * r)
    }

    /// `ω dε/dω` on the real axis.
    pub fn omega_deps(&self, omega: f64) -> f64 {
        let r = omega / self.omega0;
        let den = 1.0 - r * r;
        2.0 * (self.eps_bar - 1.0) * r * r / (den * den)
    }

    /// Longitudinal frequency `ω₀√ε̄`, where ε(ω) crosses zero.
    pub fn omega_longitudinal(&self) -> f64 {
        self.omega0 * self.eps_bar.sqrt()
    }
}

/// Frequency cutoff and resonance exclusion for the divergent correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec {
    pub omega_max: f64,
    pub exclusion_halfwidth: f64,
}

impl CutoffSpec {
    pub fn new(omega_max: f64, exclusion_halfwidth: f64) -> Result<Self> {
        if !(omega_max > 0.0) || !omega_max.is_finite() {
            return domain(format!("omega_max must be finite and > 0, got {omega_max}"));
        }
        if !(exclusion_halfwidth > 0.0 && exclusion_halfwidth < 1.0) {
            return domain(format!(
                "resonance half-width must lie in (0, 1), got {exclusion_halfwidth}"
            ));
        }
        Ok(CutoffSpec {
            omega_max,
            exclusion_halfwidth,
        })
    }

    pub fn with_omega_max(self, omega_max: f64) -> Self {
        CutoffSpec { omega_max, ..self }
    }
}

/// Real-frequency permittivity. Frequencies with `|ω/ω₀ − 1| ≤ delta` are
/// rejected: the dissipation-free form is only meaningful away from the
/// resonance.
pub fn eps_of_omega(model: &LorentzModel, omega: f64, delta: f64) -> Result<f64> {
    model.validate()?;
    if omega.is_nan() {
        return domain("omega is NaN");
    }
    if omega.is_infinite() {
        return Ok(1.0);
    }
    if ((omega / model.omega0).abs() - 1.0).abs() <= delta {
        return domain(format!(
            "omega = {omega} lies within the resonance window {delta} of omega0 = {}",
            model.omega0
        ));
    }
    Ok(model.eps_real(omega))
}

/// Permittivity on the imaginary axis, `ε(iζ) = 1 + (ε̄ − 1)/(1 + ζ²/ω₀²)`,
/// which decreases monotonically from ε̄ to 1.
pub fn eps_imag(model: &LorentzModel, zeta: f64) -> f64 {
    let r = zeta / model.omega0;
    1.0 + (model.eps_bar - 1.0) / (1.0 + r * r)
}

/// Which solution of `n(ω)ω = k` to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeBranch {
    /// Below the resonance, `ω ∈ (0, ω₀)`.
    #[default]
    Lower,
    /// Above the longitudinal frequency, `ω > ω₀√ε̄`.
    Upper,
    /// The branch that follows the light line: lower for `k < ω₀`, upper
    /// otherwise. At large `k` it tends to `ω = k`.
    PhotonLike,
}

/// Solves `√ε(ω)·ω = k` on the lower branch (0, ω₀).
pub fn dispersive_mode_solve(model: &LorentzModel, k: f64, tol: &Tolerance) -> Result<f64> {
    dispersive_mode_solve_branch(model, k, ModeBranch::Lower, tol)
}

/// Solves `√ε(ω)·ω = k` on the requested branch with Brent's method.
pub fn dispersive_mode_solve_branch(
    model: &LorentzModel,
    k: f64,
    branch: ModeBranch,
    tol: &Tolerance,
) -> Result<f64> {
    model.validate()?;
    if !(k > 0.0) || !k.is_finite() {
        return domain(format!("mode solve needs k > 0, got {k}"));
    }
    let branch = match branch {
        ModeBranch::PhotonLike if k < model.omega0 => ModeBranch::Lower,
        ModeBranch::PhotonLike => ModeBranch::Upper,
        b => b,
    };
    let residual = |omega: f64| model.eps_real(omega).max(0.0).sqrt() * omega - k;

    let bracket = match branch {
        ModeBranch::Lower => {
            // √ε·ω grows without bound as ω → ω₀⁻; step towards ω₀ until it
            // exceeds k
            let mut gap = 0.5;
            loop {
                let hi = model.omega0 * (1.0 - gap);
                if residual(hi) > 0.0 {
                    break (0.0, hi);
                }
                gap *= 0.5;
                if gap < f64::EPSILON {
                    return Err(Error::InvalidBracket {
                        lo: 0.0,
                        hi: model.omega0,
                        f_lo: -k,
                        f_hi: residual(hi),
                    });
                }
            }
        }
        // ε = 0 at ω_L, and ω² = k² + ε̄ω₀² bounds the upper root
        _ => (
            model.omega_longitudinal(),
            (k * k + model.eps_bar * model.omega0 * model.omega0).sqrt(),
        ),
    };
    let tight = Tolerance {
        rel: tol.rel.min(1e-13),
        abs: 0.0,
        ..*tol
    };
    find_root(residual, bracket, &tight)
}

/// Lower-branch mode frequencies over a grid of wave numbers, solved in
/// parallel; the output follows the input order.
pub fn solve_modes(
    model: &LorentzModel,
    ks: &[f64],
    branch: ModeBranch,
    tol: &Tolerance,
) -> Result<Vec<f64>> {
    ks.par_iter()
        .map(|&k| dispersive_mode_solve_branch(model, k, branch, tol))
        .collect()
}

/// `∫ d²k⊥/(2π)² ⟨E²⟩` at imaginary frequency `zeta`, with `⟨E²⟩` built from
/// the electric half of [`green_em::spectral_energy_density`] for a medium of
/// permittivity `ε(iζ)`. The `1/i` of the rotation is dropped, so the result
/// is positive.
pub fn field_spectrum(
    model: &LorentzModel,
    a: f64,
    zeta: f64,
    tol: &Tolerance,
) -> Result<f64> {
    let eps = eps_imag(model, zeta);
    let medium = Medium::new(eps, model.mu())?;
    let cfg = CavityConfig::new(a, 0.0, medium.index())?;
    let r = adaptive_quad(
        |k| {
            if k == 0.0 {
                return 0.0;
            }
            green_em::spectral_energy_density(k, zeta, &cfg, medium)
                .map(|p| -2.0 * p.electric_half / eps * k / (2.0 * PI))
                .unwrap_or(f64::NAN)
        },
        0.0,
        f64::INFINITY,
        tol,
    )?;
    Ok(r.value)
}

/// `W_II` at one cutoff with a caller-supplied field spectrum `S(ζ)`:
///
/// ```text
/// W_II = (2a(ε̄−1)/ω₀²) ∫_0^{ω_max} (dζ/2π) ζ²/(1 + ζ²/ω₀²)² S(ζ)
/// ```
///
/// This is the real-axis expression rotated to ω = iζ.
pub fn w2_with_spectrum<S>(
    model: &LorentzModel,
    a: f64,
    omega_max: f64,
    spectrum: S,
    tol: &Tolerance,
) -> Result<EnergyValue>
where
    S: Fn(f64) -> Result<f64>,
{
    model.validate()?;
    if !(a > 0.0) {
        return domain(format!("separation a must be > 0, got {a}"));
    }
    if !(omega_max > 0.0) || !omega_max.is_finite() {
        return domain(format!("omega_max must be finite and > 0, got {omega_max}"));
    }
    if model.eps_bar == 1.0 {
        return Ok(EnergyValue::exact(0.0, Method::Quadrature));
    }
    let failure = std::cell::RefCell::new(None);
    let r = adaptive_quad(
        |zeta| {
            let r = zeta / model.omega0;
            let weight = zeta * zeta / ((1.0 + r * r) * (1.0 + r * r)) / (2.0 * PI);
            match spectrum(zeta) {
                Ok(s) => weight * s,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        omega_max,
        &Tolerance::quadrature(tol.rel.max(1e-13)),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let pref = 2.0 * a * (model.eps_bar - 1.0) / (model.omega0 * model.omega0);
    Ok(EnergyValue {
        value: pref * r.value,
        err_estimate: pref * r.err_estimate,
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// `W_II` at the cutoff and the divergence scan over
/// `ω_max, 2ω_max, 4ω_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffScan {
    pub value: EnergyValue,
    pub omega_max: [f64; 3],
    pub scan: [f64; 3],
    pub exclusion_halfwidth: f64,
}

/// The frequency-derivative correction `W_II` truncated at `cut.omega_max`,
/// with [`field_spectrum`] as the spectrum.
///
/// On the imaginary axis the integrand is smooth and positive, so no
/// resonance window is needed there; `cut.exclusion_halfwidth` is carried
/// through for reporting.
pub fn w2_density_cutoff(
    model: &LorentzModel,
    cfg: &CavityConfig,
    cut: &CutoffSpec,
    tol: &Tolerance,
) -> Result<CutoffScan> {
    cfg.validate()?;
    let inner = Tolerance::quadrature((tol.rel * 1e-2).max(1e-14));
    let spectrum = |zeta: f64| {
        if zeta == 0.0 {
            Ok(0.0)
        } else {
            field_spectrum(model, cfg.a, zeta, &inner)
        }
    };
    let cutoffs = [cut.omega_max, 2.0 * cut.omega_max, 4.0 * cut.omega_max];
    let mut values = Vec::with_capacity(3);
    for w in cutoffs {
        values.push(w2_with_spectrum(model, cfg.a, w, spectrum, tol)?);
    }
    Ok(CutoffScan {
        value: values[0],
        omega_max: cutoffs,
        scan: [values[0].value, values[1].value, values[2].value],
        exclusion_halfwidth: cut.exclusion_halfwidth,
    })
}

/// Zero-temperature energy with the nondispersive density evaluated at
/// `ε → ε(iζ)`: `W_I = −(a/π²) ∫dζ ζ² ε(iζ) ∫ k⊥dk⊥/(κd)`,
/// `κ² = k⊥² + ε(iζ)ζ²`.
pub fn w_i_energy(model: &LorentzModel, cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    model.validate()?;
    cfg.validate()?;
    if cfg.temperature != 0.0 {
        return domain("w_i_energy is only defined at T = 0");
    }
    green_em::zero_temperature_energy(cfg.a, |zeta| eps_imag(model, zeta), tol)
}
