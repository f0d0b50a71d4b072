//! Electromagnetic field energy between ideal plates from the spectral
//! Green's tensor.
//!
//! Everything is evaluated after the frequency rotation ω → iζ, so
//! `κ² = k⊥² + n²ζ²` and every component is real. The transverse wave vector
//! is taken along x. Only the separation-dependent part of the Green's
//! tensor (the `1/d` piece) is kept.

use std::f64::consts::PI;

use crate::energy::{CavityConfig, EnergyValue, Method};
use crate::engine::{adaptive_quad, nested_quad, sum_series, try_sum_series, Tolerance};
use crate::error::{domain, Result};
use crate::matsubara::log_one_minus_exp;

/// Permittivity and permeability of the medium between the plates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub eps: f64,
    pub mu: f64,
}

impl Medium {
    pub fn new(eps: f64, mu: f64) -> Result<Self> {
        if !(eps > 0.0) || !(mu > 0.0) || !eps.is_finite() || !mu.is_finite() {
            return domain(format!("medium needs eps > 0 and mu > 0, got ({eps}, {mu})"));
        }
        Ok(Medium { eps, mu })
    }

    /// Non-magnetic medium of refractive index `n`: ε = n², μ = 1.
    pub fn non_magnetic(n: f64) -> Self {
        Medium { eps: n * n, mu: 1.0 }
    }

    pub fn index(&self) -> f64 {
        (self.eps * self.mu).sqrt()
    }

    fn check_against(&self, cfg: &CavityConfig) -> Result<()> {
        let n = self.index();
        if ((n - cfg.n) / cfg.n).abs() > 1e-12 {
            return domain(format!(
                "medium index sqrt(eps*mu) = {n} does not match n = {}",
                cfg.n
            ));
        }
        Ok(())
    }
}

/// Diagonal spectral Green's components at imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGreens {
    pub g_xx: f64,
    pub g_yy: f64,
    pub g_zz: f64,
    /// `κ = √(k⊥² + n²ζ²)`.
    pub kappa: f64,
    /// `d = e^{2κa} − 1`.
    pub d_factor: f64,
}

/// Electric and magnetic halves `(ε/2)⟨E²⟩` and `(μ/2)⟨H²⟩` of one
/// spectral mode, with the common factor `1/i` dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySpectralPoint {
    pub electric_half: f64,
    pub magnetic_half: f64,
}

impl EnergySpectralPoint {
    pub fn total(&self) -> f64 {
        self.electric_half + self.magnetic_half
    }
}

struct Kernel {
    kappa: f64,
    d_factor: f64,
}

fn kernel(k_perp: f64, zeta: f64, cfg: &CavityConfig) -> Result<Kernel> {
    cfg.validate()?;
    if !(k_perp >= 0.0) || !(zeta >= 0.0) || !k_perp.is_finite() || !zeta.is_finite() {
        return domain(format!("need k_perp >= 0 and zeta >= 0, got ({k_perp}, {zeta})"));
    }
    let kappa = k_perp.hypot(cfg.n * zeta);
    if kappa == 0.0 {
        return domain("kappa = 0: the spectral Green's function is singular");
    }
    Ok(Kernel {
        kappa,
        d_factor: (2.0 * kappa * cfg.a).exp_m1(),
    })
}

/// The three diagonal components at `(z, z′)` for transverse momentum
/// `k_perp` and imaginary frequency `zeta`:
///
/// ```text
/// g_xx = −(κ/ε) cosh κ(z−z′)/d
/// g_yy = −(μζ²/κ) cosh κ(z−z′)/d
/// g_zz = (k⊥²/κε) cosh κ(z−z′)/d
/// ```
pub fn greens_components(
    z: f64,
    zp: f64,
    k_perp: f64,
    zeta: f64,
    cfg: &CavityConfig,
    medium: Medium,
) -> Result<SpectralGreens> {
    medium.check_against(cfg)?;
    for p in [z, zp] {
        if !(0.0..=cfg.a).contains(&p) {
            return domain(format!("z = {p} lies outside [0, {}]", cfg.a));
        }
    }
    let Kernel { kappa, d_factor } = kernel(k_perp, zeta, cfg)?;
    let profile = (kappa * (z - zp)).cosh() / d_factor;
    Ok(SpectralGreens {
        g_xx: -kappa / medium.eps * profile,
        g_yy: -medium.mu * zeta * zeta / kappa * profile,
        g_zz: k_perp * k_perp / (kappa * medium.eps) * profile,
        kappa,
        d_factor,
    })
}

/// Diagonal magnetic components `(1/ω²) curl curl′ gᴱ` at `(z, z′)`.
///
/// The full electric tensor is `(1/ε)(∂_i∂_j + n²ω²δ_ij)` acting on
/// `cosh κ(z−z′)/(κd)`; the gradient part is annihilated by the curl, which
/// leaves `gᴴ = μ(δ_ik ∂·∂′ − ∂′_i∂_k)` on the same kernel:
///
/// ```text
/// g_xx = −μκ cosh κ(z−z′)/d
/// g_yy = −(μn²ζ²/κ) cosh κ(z−z′)/d
/// g_zz = (μk⊥²/κ) cosh κ(z−z′)/d
/// ```
pub fn magnetic_components(
    z: f64,
    zp: f64,
    k_perp: f64,
    zeta: f64,
    cfg: &CavityConfig,
    medium: Medium,
) -> Result<SpectralGreens> {
    let g = greens_components(z, zp, k_perp, zeta, cfg, medium)?;
    let profile = (g.kappa * (z - zp)).cosh() / g.d_factor;
    let n_sq = medium.eps * medium.mu;
    Ok(SpectralGreens {
        g_xx: -medium.mu * g.kappa * profile,
        g_yy: -medium.mu * n_sq * zeta * zeta / g.kappa * profile,
        g_zz: medium.mu * k_perp * k_perp / g.kappa * profile,
        ..g
    })
}

/// Electric and magnetic energy halves of one mode at `z′ = z`:
/// `(ε/2)` times the trace of [`greens_components`] and `(1/2μ)` times the
/// trace of [`magnetic_components`]. Both equal `−n²ζ²/(κd)`.
pub fn spectral_energy_density(
    k_perp: f64,
    zeta: f64,
    cfg: &CavityConfig,
    medium: Medium,
) -> Result<EnergySpectralPoint> {
    let e = greens_components(0.0, 0.0, k_perp, zeta, cfg, medium)?;
    let h = magnetic_components(0.0, 0.0, k_perp, zeta, cfg, medium)?;
    Ok(EnergySpectralPoint {
        electric_half: 0.5 * medium.eps * (e.g_xx + e.g_yy + e.g_zz),
        magnetic_half: 0.5 / medium.mu * (h.g_xx + h.g_yy + h.g_zz),
    })
}

/// Zero-temperature field energy for a frequency-dependent squared index
/// `n²(ζ)` on the imaginary axis,
/// `W = −(a/π²) ∫dζ ζ² n²(ζ) ∫ k⊥ dk⊥ /(κd)`, `κ² = k⊥² + n²(ζ)ζ²`.
pub(crate) fn zero_temperature_energy<N>(a: f64, index_sq: N, tol: &Tolerance) -> Result<EnergyValue>
where
    N: Fn(f64) -> f64,
{
    let r = nested_quad(
        |zeta, k| {
            let n_sq = index_sq(zeta);
            let kappa = (k * k + n_sq * zeta * zeta).sqrt();
            n_sq * zeta * zeta * k / (kappa * (2.0 * kappa * a).exp_m1())
        },
        (0.0, f64::INFINITY),
        (0.0, f64::INFINITY),
        tol,
    )?;
    let pref = -a / (PI * PI);
    Ok(EnergyValue {
        value: pref * r.value,
        err_estimate: (pref * r.err_estimate).abs(),
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// Zero-temperature field energy per unit area by nested quadrature,
/// `W = −(n²a/π²) ∫dζ ζ² ∫ k⊥ dk⊥ /(κd)`.
pub fn em_energy_t0(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    if cfg.temperature != 0.0 {
        return domain("em_energy_t0 needs T = 0");
    }
    let n_sq = cfg.n * cfg.n;
    zero_temperature_energy(cfg.a, |_| n_sq, tol)
}

/// The same energy after the polar substitution `k⊥ = κ cos θ`,
/// `nζ = κ sin θ`: `W = −(1/48π²na³) ∫ z³/(eᶻ−1) dz`, by a single quadrature.
pub fn em_energy_t0_polar(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    let r = adaptive_quad(
        |z| if z == 0.0 { 0.0 } else { z.powi(3) / z.exp_m1() },
        0.0,
        f64::INFINITY,
        &Tolerance::quadrature(tol.rel.max(1e-14)),
    )?;
    let pref = -1.0 / (48.0 * PI * PI * cfg.n * cfg.a.powi(3));
    Ok(EnergyValue {
        value: pref * r.value,
        err_estimate: (pref * r.err_estimate).abs(),
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// How the inner frequency integral `∫_{αm}^∞ dz/(eᶻ−1)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerIntegral {
    /// `−ln(1 − e^{−αm})`.
    #[default]
    ClosedForm,
    Quadrature,
}

/// Finite-temperature field energy per unit area,
/// `W = −4πn²T³ Σ_{m≥1} m² ∫_{αm}^∞ dz/(eᶻ−1)` with `α = 4πnaT`, using the
/// closed-form inner integral.
pub fn em_energy_finite_t(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    em_energy_finite_t_with(cfg, tol, InnerIntegral::ClosedForm)
}

/// [`em_energy_finite_t`] with a choice of inner-integral route.
pub fn em_energy_finite_t_with(
    cfg: &CavityConfig,
    tol: &Tolerance,
    inner: InnerIntegral,
) -> Result<EnergyValue> {
    cfg.validate()?;
    if cfg.temperature <= 0.0 {
        return domain("em_energy_finite_t needs T > 0; use em_energy_t0");
    }
    let alpha = 4.0 * PI * cfg.nat();
    let pref = -4.0 * PI * cfg.n * cfg.n * cfg.temperature.powi(3);

    let (series, quad_err, quad_ok, method) = match inner {
        InnerIntegral::ClosedForm => {
            let s = sum_series(
                |m| {
                    let mf = m as f64;
                    -mf * mf * log_one_minus_exp(alpha * mf)
                },
                1,
                tol,
            )?;
            (s, 0.0, true, Method::DirectSum)
        }
        InnerIntegral::Quadrature => {
            let quad_tol = Tolerance::quadrature((tol.rel * 1e-2).max(1e-14));
            let mut err = 0.0;
            let mut ok = true;
            let s = try_sum_series(
                |m| {
                    let mf = m as f64;
                    let r = adaptive_quad(|z| 1.0 / z.exp_m1(), alpha * mf, f64::INFINITY, &quad_tol)?;
                    err += mf * mf * r.err_estimate;
                    ok &= r.converged;
                    Ok(mf * mf * r.value)
                },
                1,
                tol,
            )?;
            (s, err, ok, Method::Quadrature)
        }
    };

    let value = pref * series.value;
    Ok(EnergyValue {
        value,
        err_estimate: (pref * (series.err_estimate + quad_err)).abs()
            + 4.0 * f64::EPSILON * value.abs(),
        method,
        converged: series.converged && quad_ok,
    })
}
