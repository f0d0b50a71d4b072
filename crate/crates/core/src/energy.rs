use std::fmt;

use crate::error::{domain, Result};

/// Two ideal plates at separation `a` with a constant-index medium between
/// them, at temperature `temperature`. Natural units ħ = c = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub a: f64,
    pub temperature: f64,
    pub n: f64,
}

impl CavityConfig {
    pub fn new(a: f64, temperature: f64, n: f64) -> Result<Self> {
        let cfg = CavityConfig { a, temperature, n };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return domain(format!("separation a must be > 0, got {}", self.a));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return domain(format!("temperature must be >= 0, got {}", self.temperature));
        }
        if !(self.n >= 1.0) || !self.n.is_finite() {
            return domain(format!("refractive index must be >= 1, got {}", self.n));
        }
        Ok(())
    }

    /// Dimensionless temperature `n·a·T`.
    pub fn nat(&self) -> f64 {
        self.n * self.a * self.temperature
    }

    /// `β = 1/T`.
    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        CavityConfig { temperature, ..self }
    }

    pub fn with_separation(self, a: f64) -> Self {
        CavityConfig { a, ..self }
    }
}

/// Which route produced an [`EnergyValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectSum,
    PoissonResummed,
    LowTExpansion,
    HighTAsymptote,
    Quadrature,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSum => "direct_sum",
            Method::PoissonResummed => "poisson_resummed",
            Method::LowTExpansion => "low_T_expansion",
            Method::HighTAsymptote => "high_T_asymptote",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed energy per unit area, pressure or density.
///
/// `converged` is false when the producing route could not meet its
/// accuracy contract (budget exhausted, or a closed-form expansion used
/// outside its validity range).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyValue {
    pub value: f64,
    pub err_estimate: f64,
    pub method: Method,
    pub converged: bool,
}

impl EnergyValue {
    pub fn exact(value: f64, method: Method) -> Self {
        EnergyValue {
            value,
            err_estimate: f64::EPSILON * value.abs(),
            method,
            converged: true,
        }
    }

    pub fn rel_diff(&self, other: &EnergyValue) -> f64 {
        ((self.value - other.value) / other.value).abs()
    }
}
