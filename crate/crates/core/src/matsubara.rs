//! Thermodynamics of the ideal-wall cavity with a constant refractive index:
//! the Matsubara free energy, the internal energy by three routes, and the
//! low- and high-temperature expansions.
//!
//! Every ideal-wall Matsubara integral reduces to the single function
//!
//! ```text
//! J(x₀) = ∫_{x₀}^∞ x ln(1 − e^{−x}) dx
//! ```
//!
//! via `x = 2κa`, so that the m-th free-energy term is `J(αm)/(4a²)` with
//! `α = 4π n a T`.

use std::f64::consts::PI;

use crate::energy::{CavityConfig, EnergyValue, Method};
use crate::engine::{
    adaptive_quad, sum_series, try_finite_diff_richardson, try_sum_series, Tolerance,
};
use crate::error::{domain, Error, Result};
use crate::specfun::riemann_zeta;

/// Dimensionless temperature below which [`internal_energy`] switches to
/// the resummed series.
pub const DISPATCH_NAT: f64 = 0.3;

/// Validity limit of the low-temperature expansions.
pub const LOW_T_LIMIT: f64 = 0.5;

fn inner_tolerance(tol: &Tolerance) -> Tolerance {
    Tolerance::quadrature((tol.rel * 1e-3).max(1e-14))
}

fn require_positive_temperature(cfg: &CavityConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.temperature <= 0.0 {
        return domain("this route needs T > 0; use the T = 0 closed form instead");
    }
    Ok(())
}

/// `ln(1 − e^{−x})` without cancellation at small or large `x`.
pub(crate) fn log_one_minus_exp(x: f64) -> f64 {
    if x < std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// `∫_{x₀}^∞ x ln(1 − e^{−x}) dx` by adaptive quadrature.
fn log_moment(x0: f64, tol: &Tolerance) -> Result<(f64, f64, bool)> {
    let r = adaptive_quad(|x| x * log_one_minus_exp(x), x0, f64::INFINITY, tol)?;
    Ok((r.value, r.err_estimate, r.converged))
}

/// The two pieces of `βF·π`: the zero mode `½J(0)/(4a²)` (independent of
/// β) and the thermal modes `Σ_{m≥1} J(αm)/(4a²)`.
#[derive(Debug, Clone, Copy)]
struct MatsubaraParts {
    zero_mode: f64,
    thermal: f64,
    err: f64,
    converged: bool,
}

fn matsubara_parts(cfg: &CavityConfig, tol: &Tolerance) -> Result<MatsubaraParts> {
    let quad_tol = inner_tolerance(tol);
    let scale = 1.0 / (4.0 * cfg.a * cfg.a);
    let alpha = 4.0 * PI * cfg.nat();

    let (j0, e0, c0) = log_moment(0.0, &quad_tol)?;
    let mut quad_err = 0.0;
    let mut quad_ok = true;
    let series = try_sum_series(
        |m| {
            let (v, e, ok) = log_moment(alpha * m as f64, &quad_tol)?;
            quad_err += e;
            quad_ok &= ok;
            Ok(v)
        },
        1,
        tol,
    )?;

    Ok(MatsubaraParts {
        zero_mode: 0.5 * j0 * scale,
        thermal: series.value * scale,
        err: (0.5 * e0 + quad_err + series.err_estimate) * scale,
        converged: c0 && quad_ok && series.converged,
    })
}

/// Free energy per unit area,
/// `F = (1/πβ) Σ′_{m≥0} ∫_{nζ_m}^∞ κ dκ ln(1 − e^{−2κa})` with the m = 0
/// term at half weight.
pub fn free_energy(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    require_positive_temperature(cfg)?;
    let parts = matsubara_parts(cfg, tol)?;
    let pref = cfg.temperature / PI;
    Ok(EnergyValue {
        value: pref * (parts.zero_mode + parts.thermal),
        err_estimate: pref * parts.err,
        method: Method::DirectSum,
        converged: parts.converged,
    })
}

/// Zero-temperature energy `−π²/(720 n a³)`, shared by F, U and W at T = 0.
pub fn free_energy_t0(cfg: &CavityConfig) -> Result<EnergyValue> {
    cfg.validate()?;
    Ok(EnergyValue::exact(
        -PI * PI / (720.0 * cfg.n * cfg.a.powi(3)),
        Method::ClosedForm,
    ))
}

/// `coth(x)/sinh²(x)` written in `q = e^{−2x}` so that large `x` neither
/// overflows nor cancels.
fn coth_over_sinh_sq(x: f64) -> f64 {
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    4.0 * q * (1.0 + q) / one_minus_q.powi(3)
}

/// Internal energy from the high-temperature resummation,
/// `U = −π n² T³ Σ_{m≥1} (1/m) coth(2πnmaT)/sinh²(2πnmaT)`.
///
/// At small `naT` the term count explodes; exhausting the budget returns a
/// result flagged `converged = false`.
pub fn internal_energy_direct(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    require_positive_temperature(cfg)?;
    let x1 = 2.0 * PI * cfg.nat();
    let series = sum_series(|m| coth_over_sinh_sq(x1 * m as f64) / m as f64, 1, tol)?;
    let pref = -PI * cfg.n * cfg.n * cfg.temperature.powi(3);
    Ok(EnergyValue {
        value: pref * series.value,
        err_estimate: (pref * series.err_estimate).abs()
            + 4.0 * f64::EPSILON * (pref * series.value).abs(),
        method: Method::DirectSum,
        converged: series.converged,
    })
}

/// The braced summand of the Poisson-resummed internal energy,
/// `−3 + x coth x + x²/sinh²x · (1 + x coth x)`, evaluated as printed.
pub fn resummed_bracket(x: f64) -> f64 {
    let coth = 1.0 / x.tanh();
    let sinh = x.sinh();
    -3.0 + x * coth + (x * x / (sinh * sinh)) * (1.0 + x * coth)
}

/// Exponentially small part of [`resummed_bracket`]: the bracket minus its
/// large-x asymptote `x − 3`.
fn bracket_decaying(x: f64) -> f64 {
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    let coth = (1.0 + q) / one_minus_q;
    let coth_minus_one = 2.0 * q / one_minus_q;
    let inv_sinh_sq = 4.0 * q / (one_minus_q * one_minus_q);
    x * coth_minus_one + x * x * inv_sinh_sq * (1.0 + x * coth)
}

/// Internal energy from the Poisson-resummed series, valid at any `T > 0`
/// and rapidly convergent at low temperature:
///
/// ```text
/// U = 2πn²T³ [ −π/(1440 t³) + (t/π³) Σ_{m≥1} m⁻⁴ {bracket(πm/2t)} ],  t = naT
/// ```
///
/// The bracket tends to `x − 3` at large `x`, so the summand decays only
/// like m⁻³. That asymptote is summed exactly (`πζ(3)/2t − 3ζ(4)`) and the
/// remaining exponentially decaying part is summed numerically.
///
/// The bracket cancels to `O(e^{−4πt})` of its parts, so at large `t` the
/// result is limited by double-precision rounding. The returned
/// `err_estimate` includes that rounding bound and `converged` is false
/// when the bound exceeds the requested tolerance.
pub fn internal_energy_resummed(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    require_positive_temperature(cfg)?;
    let t = cfg.nat();
    let x1 = PI / (2.0 * t);
    let series = sum_series(
        |m| {
            let mf = m as f64;
            bracket_decaying(x1 * mf) / mf.powi(4)
        },
        1,
        tol,
    )?;

    let zeta3 = riemann_zeta(3.0)?;
    let zeta4 = riemann_zeta(4.0)?;
    let asymptote = PI * zeta3 / (2.0 * t) - 3.0 * zeta4;
    let lead = -PI / (1440.0 * t.powi(3));
    let scale = t / PI.powi(3);
    let bracket = lead + scale * (asymptote + series.value);

    let pref = 2.0 * PI * cfg.n * cfg.n * cfg.temperature.powi(3);
    let value = pref * bracket;
    let magnitude = lead.abs() + scale * (PI * zeta3 / (2.0 * t) + 3.0 * zeta4 + series.value.abs());
    let rounding = 8.0 * f64::EPSILON * pref * magnitude;
    let err_estimate = (pref * scale * series.err_estimate).abs() + rounding;

    Ok(EnergyValue {
        value,
        err_estimate,
        method: Method::PoissonResummed,
        converged: series.converged && err_estimate <= tol.target(value),
    })
}

/// Internal energy from the thermodynamic identity `U = ∂(βF)/∂β`.
///
/// `βF = (1/π)[zero mode + thermal modes]`; the zero mode does not depend on
/// β and drops out exactly, so only the thermal modes are differenced. The
/// derivative is a Richardson-extrapolated central difference with step
/// `h = β·10⁻⁴`; the difference between the extrapolated and the plain
/// `h/2` estimates is folded into `err_estimate`.
pub fn internal_energy_from_f(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    require_positive_temperature(cfg)?;
    let beta = cfg.beta();
    let h = beta * 1e-4;
    let inner = Tolerance {
        rel: tol.rel.min(1e-12),
        ..*tol
    };

    let mut converged = true;
    let mut quad_err: f64 = 0.0;
    let (value, richardson_err) = try_finite_diff_richardson(
        |b| {
            let p = matsubara_parts(&cfg.with_temperature(1.0 / b), &inner)?;
            converged &= p.converged;
            quad_err = quad_err.max(p.err / PI);
            Ok::<f64, Error>(p.thermal / PI)
        },
        beta,
        h,
    )?;

    Ok(EnergyValue {
        value,
        // quadrature noise is amplified by 1/h
        err_estimate: richardson_err + 2.0 * quad_err / h,
        method: Method::DirectSum,
        converged,
    })
}

/// Route dispatch: direct sum for `naT ≥ 0.3`, resummed series below.
/// `T = 0` returns the closed form.
pub fn internal_energy(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    if cfg.temperature == 0.0 {
        return free_energy_t0(cfg);
    }
    if cfg.nat() >= DISPATCH_NAT {
        internal_energy_direct(cfg, tol)
    } else {
        internal_energy_resummed(cfg, tol)
    }
}

/// Leading high-temperature term `U ≈ −4πn²T³e^{−4πnaT}`.
pub fn internal_energy_high_t(cfg: &CavityConfig) -> Result<EnergyValue> {
    cfg.validate()?;
    let t3 = cfg.temperature.powi(3);
    let x = 4.0 * PI * cfg.nat();
    let value = -4.0 * PI * cfg.n * cfg.n * t3 * (-x).exp();
    Ok(EnergyValue {
        value,
        // next correction is 4.5 e^{-x} relative
        err_estimate: 5.0 * (-x).exp() * value.abs(),
        method: Method::HighTAsymptote,
        converged: cfg.nat() >= 1.0,
    })
}

fn low_t_value(cfg: &CavityConfig, bracket: f64) -> EnergyValue {
    let t = cfg.nat();
    let value = -PI * PI / (720.0 * cfg.n * cfg.a.powi(3)) * bracket;
    EnergyValue {
        value,
        err_estimate: value.abs() * t.powi(5),
        method: Method::LowTExpansion,
        converged: t < LOW_T_LIMIT,
    }
}

/// Low-temperature internal energy
/// `U = −π²/(720na³)[1 − 720(naT/π)³ζ(3) + 48(naT)⁴]`.
/// Flagged `converged = false` for `naT ≥ 0.5`.
pub fn internal_energy_low_t(cfg: &CavityConfig) -> Result<EnergyValue> {
    cfg.validate()?;
    let t = cfg.nat();
    let z3 = riemann_zeta(3.0)?;
    let bracket = 1.0 - 720.0 * (t / PI).powi(3) * z3 + 48.0 * t.powi(4);
    Ok(low_t_value(cfg, bracket))
}

/// Low-temperature free energy
/// `F = −π²/(720na³)[1 + 360(naT/π)³ζ(3) − (2naT)⁴]`.
/// The quartic piece is independent of `a`.
pub fn free_energy_low_t(cfg: &CavityConfig) -> Result<EnergyValue> {
    cfg.validate()?;
    let t = cfg.nat();
    let z3 = riemann_zeta(3.0)?;
    let bracket = 1.0 + 360.0 * (t / PI).powi(3) * z3 - (2.0 * t).powi(4);
    Ok(low_t_value(cfg, bracket))
}

/// Pressure `P = −∂F/∂a` by a Richardson-extrapolated central difference in
/// `a` (step `a·10⁻³`), of the closed form at `T = 0` and of [`free_energy`]
/// otherwise.
pub fn pressure(cfg: &CavityConfig, tol: &Tolerance) -> Result<EnergyValue> {
    cfg.validate()?;
    let h = cfg.a * 1e-3;
    let zero_t = cfg.temperature == 0.0;
    let inner = Tolerance {
        rel: tol.rel.min(1e-12),
        ..*tol
    };

    let mut converged = true;
    let mut f_err: f64 = 0.0;
    let (deriv, richardson_err) = try_finite_diff_richardson(
        |a| {
            let c = cfg.with_separation(a);
            let f = if zero_t { free_energy_t0(&c)? } else { free_energy(&c, &inner)? };
            converged &= f.converged;
            f_err = f_err.max(f.err_estimate);
            Ok::<f64, Error>(f.value)
        },
        cfg.a,
        h,
    )?;

    Ok(EnergyValue {
        value: -deriv,
        err_estimate: richardson_err + 2.0 * f_err / h,
        method: if zero_t { Method::ClosedForm } else { Method::DirectSum },
        converged,
    })
}
