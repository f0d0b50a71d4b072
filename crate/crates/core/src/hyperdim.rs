//! Ideal-wall cavity in D spacetime dimensions at zero temperature: the
//! pressure by quadrature and in closed form, the local energy density with
//! its surface anomaly, and the exponentially regulated mode sum.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::dispersion::{dispersive_mode_solve_branch, LorentzModel, ModeBranch};
use crate::energy::{EnergyValue, Method};
use crate::engine::{
    adaptive_quad, nested_quad, try_finite_diff_richardson, try_sum_series, Tolerance,
};
use crate::error::{domain, Error, Result};
use crate::specfun::{gamma_fn, hurwitz_zeta, riemann_zeta, solid_angle, DimensionD};

/// Plates at separation `a` in `D` spacetime dimensions with a medium of
/// index `n`; the temperature is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperConfig {
    pub dim: DimensionD,
    pub a: f64,
    pub n: f64,
}

impl HyperConfig {
    pub fn new(dim: u32, a: f64, n: f64) -> Result<Self> {
        let cfg = HyperConfig {
            dim: DimensionD::new(dim)?,
            a,
            n,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return domain(format!("separation a must be > 0, got {}", self.a));
        }
        if !(self.n >= 1.0) || !self.n.is_finite() {
            return domain(format!("refractive index must be >= 1, got {}", self.n));
        }
        Ok(())
    }

    pub fn with_separation(self, a: f64) -> Self {
        HyperConfig { a, ..self }
    }

    // Γ(D/2)ζ(D)/((4π)^{D/2} a^D)
    fn casimir_scale(&self) -> Result<f64> {
        let big_d = self.dim.as_f64();
        Ok(gamma_fn(big_d / 2.0)? * riemann_zeta(big_d)?
            / ((4.0 * PI).powf(big_d / 2.0) * self.a.powf(big_d)))
    }

    // Γ(D/2)/((4π)^{D/2} a^D)
    fn profile_scale(&self) -> Result<f64> {
        let big_d = self.dim.as_f64();
        Ok(gamma_fn(big_d / 2.0)? / ((4.0 * PI).powf(big_d / 2.0) * self.a.powf(big_d)))
    }
}

/// Pressure on the plates by nested quadrature over imaginary frequency and
/// transverse momentum,
/// `P = −(2(D−2)/(2π)^d) Ω_{d−2} ∫dζ ∫ κ k⊥^{d−2} dk⊥ /(e^{2κa} − 1)`.
pub fn pressure_quadrature(cfg: &HyperConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    let d = cfg.dim.spatial();
    let (a, n) = (cfg.a, cfg.n);
    let r = nested_quad(
        |zeta, k| {
            let kappa = k.hypot(n * zeta);
            if kappa == 0.0 {
                return 0.0;
            }
            kappa * k.powi(d as i32 - 2) / (2.0 * kappa * a).exp_m1()
        },
        (0.0, f64::INFINITY),
        (0.0, f64::INFINITY),
        tol,
    )?;
    let pref = -2.0 * (cfg.dim.as_f64() - 2.0) / (2.0 * PI).powi(d as i32) * solid_angle(d - 1)?;
    Ok(EnergyValue {
        value: pref * r.value,
        err_estimate: (pref * r.err_estimate).abs(),
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// The same pressure after the polar substitution `k⊥ = κ cos θ`,
/// `nζ = κ sin θ`: `(1/n) ∫cos^{d−2}θ dθ ∫ κ^d dκ/(e^{2κa} − 1)`, both
/// factors by quadrature.
pub fn pressure_polar(cfg: &HyperConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    let d = cfg.dim.spatial();
    let qt = Tolerance::quadrature((0.5 * tol.rel).max(1e-14));
    let angular = adaptive_quad(|t| t.cos().powi(d as i32 - 2), 0.0, PI / 2.0, &qt)?;
    let radial = adaptive_quad(
        |k| if k == 0.0 { 0.0 } else { k.powi(d as i32) / (2.0 * k * cfg.a).exp_m1() },
        0.0,
        f64::INFINITY,
        &qt,
    )?;
    let pref = -2.0 * (cfg.dim.as_f64() - 2.0) / (2.0 * PI).powi(d as i32) * solid_angle(d - 1)?
        / cfg.n;
    let value = pref * angular.value * radial.value;
    Ok(EnergyValue {
        value,
        err_estimate: value.abs()
            * (angular.err_estimate / angular.value + radial.err_estimate / radial.value),
        method: Method::Quadrature,
        converged: angular.converged && radial.converged,
    })
}

/// `P = −((D−2)(D−1)/n) Γ(D/2)ζ(D)/((4π)^{D/2} a^D)`.
pub fn pressure_closed(cfg: &HyperConfig) -> Result<EnergyValue> {
    cfg.validate()?;
    let big_d = cfg.dim.as_f64();
    let value = -(big_d - 2.0) * (big_d - 1.0) / cfg.n * cfg.casimir_scale()?;
    Ok(EnergyValue::exact(value, Method::ClosedForm))
}

/// Uniform part of the energy density,
/// `w₁ = −(D−2)Γ(D/2)ζ(D)/(n(4π)^{D/2}a^D)`.
pub fn uniform_density(cfg: &HyperConfig) -> Result<f64> {
    cfg.validate()?;
    Ok(-(cfg.dim.as_f64() - 2.0) / cfg.n * cfg.casimir_scale()?)
}

/// `f_D(u) = ζ_H(D, u) + ζ_H(D, 1 − u)`.
pub fn surface_profile(dim: DimensionD, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return domain(format!("relative position u must lie in (0, 1), got {u}"));
    }
    let s = dim.as_f64();
    Ok(hurwitz_zeta(s, u)? + hurwitz_zeta(s, 1.0 - u)?)
}

/// Anomalous part of the energy density at `u = z/a`,
/// `w₂ = −(D−2)Γ(D/2)(D/2 − 2) f_D(u)/(n(4π)^{D/2}a^D)`.
pub fn anomaly_density(cfg: &HyperConfig, u: f64) -> Result<f64> {
    cfg.validate()?;
    let big_d = cfg.dim.as_f64();
    let f = surface_profile(cfg.dim, u)?;
    Ok(-(big_d - 2.0) / cfg.n * cfg.profile_scale()? * (big_d / 2.0 - 2.0) * f)
}

/// Energy density across the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub u_grid: Vec<f64>,
    pub w1: f64,
    pub w2_values: Vec<f64>,
    /// `w₁ + w₂` at each point.
    pub total: Vec<f64>,
    /// With the plates' self energy subtracted only `w₁` remains.
    pub regularized: Vec<f64>,
}

/// Evenly spaced interior points `u_i = i/(count + 1)`, `i = 1..=count`.
pub fn interior_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|i| i as f64 / (count + 1) as f64).collect()
}

/// Evaluates `w₁`, `w₂(u)` and their sum on `u_grid` (points evaluated in
/// parallel, order kept).
pub fn density_profile(cfg: &HyperConfig, u_grid: &[f64]) -> Result<DensityProfile> {
    cfg.validate()?;
    if cfg.dim.get() < 4 {
        return domain("the density profile needs D >= 4");
    }
    let w1 = uniform_density(cfg)?;
    let w2_values = u_grid
        .par_iter()
        .map(|&u| anomaly_density(cfg, u))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DensityProfile {
        u_grid: u_grid.to_vec(),
        w1,
        total: w2_values.iter().map(|w2| w1 + w2).collect(),
        regularized: vec![w1; u_grid.len()],
        w2_values,
    })
}

/// The pressure recovered from the uniform density, by the identity
/// `P = (D − 1)w₁` and by a finite difference of `−∂(a w₁)/∂a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W1Pressure {
    pub from_identity: EnergyValue,
    pub finite_difference: EnergyValue,
}

pub fn pressure_from_w1(cfg: &HyperConfig) -> Result<W1Pressure> {
    let w1 = uniform_density(cfg)?;
    let identity = (cfg.dim.as_f64() - 1.0) * w1;
    let h = cfg.a * 1e-3;
    let (deriv, err) = try_finite_diff_richardson(
        |a| Ok::<f64, Error>(a * uniform_density(&cfg.with_separation(a))?),
        cfg.a,
        h,
    )?;
    Ok(W1Pressure {
        from_identity: EnergyValue::exact(identity, Method::ClosedForm),
        finite_difference: EnergyValue {
            value: -deriv,
            err_estimate: err + 16.0 * f64::EPSILON * identity.abs() * cfg.a / h,
            method: Method::ClosedForm,
            converged: true,
        },
    })
}

/// A regulated mode sum and its behaviour as the cutoff is removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSum {
    pub value: EnergyValue,
    pub lambda: f64,
    /// Values at `λ, λ/2, λ/4`.
    pub scan: [f64; 3],
    /// `log₂` of the last halving ratio; tends to `D` as `λ → 0`.
    pub exponent: f64,
}

// Σ_{m≥1} Ω_{d−2}/(2π)^{d−1} ∫ k⊥^{d−2} ω(K) e^{−λK} dk⊥, K = √(k⊥² + (πm/a)²)
fn regulated_sum<W>(
    cfg: &HyperConfig,
    lambda: f64,
    energy_of: &W,
    tol: &Tolerance,
) -> Result<EnergyValue>
where
    W: Fn(f64) -> Result<f64>,
{
    let d = cfg.dim.spatial();
    let quad_tol = Tolerance::quadrature((tol.rel * 1e-2).max(1e-14));
    let mut quad_err = 0.0;
    let mut quad_ok = true;
    let series = try_sum_series(
        |m| {
            let q = PI * m as f64 / cfg.a;
            let failure = std::cell::RefCell::new(None);
            let r = adaptive_quad(
                |k| {
                    let big_k = k.hypot(q);
                    let weight = (-lambda * big_k).exp();
                    if weight == 0.0 {
                        return 0.0;
                    }
                    match energy_of(big_k) {
                        Ok(w) => k.powi(d as i32 - 2) * w * weight,
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                            0.0
                        }
                    }
                },
                0.0,
                f64::INFINITY,
                &quad_tol,
            )?;
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            quad_err += r.err_estimate;
            quad_ok &= r.converged;
            Ok(r.value)
        },
        1,
        tol,
    )?;
    let pref = solid_angle(d - 1)? / (2.0 * PI).powi(d as i32 - 1);
    Ok(EnergyValue {
        value: pref * series.value,
        err_estimate: pref * (series.err_estimate + quad_err),
        method: Method::DirectSum,
        converged: series.converged && quad_ok,
    })
}

fn cutoff_scan<F>(lambda: f64, eval: F) -> Result<CutoffSum>
where
    F: Fn(f64) -> Result<EnergyValue> + Sync,
{
    if !(lambda > 0.0) || !lambda.is_finite() {
        return domain(format!("cutoff lambda must be > 0, got {lambda}"));
    }
    let lambdas = [lambda, lambda / 2.0, lambda / 4.0];
    let values = lambdas
        .par_iter()
        .map(|&l| eval(l))
        .collect::<Result<Vec<EnergyValue>>>()?;
    Ok(CutoffSum {
        value: values[0],
        lambda,
        scan: [values[0].value, values[1].value, values[2].value],
        exponent: (values[2].value / values[1].value).log2(),
    })
}

/// Photon mode sum with energy `K/n` per mode and weight `e^{−λK}`:
///
/// ```text
/// W = (1/n) Σ_{m≥1} ∫ d^{d−1}k⊥/(2π)^{d−1} K e^{−λK},  K = √(k⊥² + π²m²/a²)
/// ```
///
/// The value grows like `λ^{−D}` as the cutoff is removed.
pub fn cutoff_mode_energy(cfg: &HyperConfig, lambda: f64, tol: &Tolerance) -> Result<CutoffSum> {
    cfg.validate()?;
    let n = cfg.n;
    cutoff_scan(lambda, |l| {
        let v = regulated_sum(cfg, l, &|k: f64| Ok(k), tol)?;
        Ok(EnergyValue {
            value: v.value / n,
            err_estimate: v.err_estimate / n,
            ..v
        })
    })
}

/// The mode sum in a Lorentz medium: each mode of wave number `K` carries
/// the frequency `ω` solving `n(ω)ω = K` on the photon-like branch, i.e.
/// energy `K/n(K)`. The weight stays `e^{−λK}`. `cfg.n` is not used.
pub fn dispersive_hyper_energy(
    cfg: &HyperConfig,
    model: &LorentzModel,
    lambda: f64,
    tol: &Tolerance,
) -> Result<CutoffSum> {
    cfg.validate()?;
    model.validate()?;
    let solve_tol = Tolerance {
        rel: 1e-13,
        abs: 0.0,
        max_iter: 200,
    };
    let frequency = |k: f64| dispersive_mode_solve_branch(model, k, ModeBranch::PhotonLike, &solve_tol);
    cutoff_scan(lambda, |l| regulated_sum(cfg, l, &frequency, tol))
}
