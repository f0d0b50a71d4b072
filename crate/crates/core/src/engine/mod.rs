//! Generic numerical kernel shared by every physics module: adaptive
//! quadrature, convergent-series summation, bracketed root finding and
//! central differences.
//!
//! Everything here is a pure function of its inputs.

mod diff;
mod quad;
mod roots;
mod series;

pub use diff::{default_step, finite_diff, finite_diff_richardson, try_finite_diff_richardson};
pub use quad::{adaptive_quad, nested_quad};
pub use roots::find_root;
pub use series::{sum_series, try_sum_series};

use crate::error::{domain, Result};

/// Number of adaptive subdivisions allowed for one quadrature by default.
pub const QUAD_MAX_SUBDIVISIONS: usize = 2000;

/// Convergence controls shared by all kernel routines.
///
/// `max_iter` is the term budget for [`sum_series`], the iteration budget for
/// [`find_root`] and the subdivision budget for [`adaptive_quad`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64, max_iter: usize) -> Result<Self> {
        let tol = Tolerance { rel, abs, max_iter };
        tol.validate()?;
        Ok(tol)
    }

    /// Tolerance suited to a single quadrature: relative target `rel`, no
    /// absolute floor, and the default subdivision budget.
    pub fn quadrature(rel: f64) -> Self {
        Tolerance {
            rel,
            abs: 0.0,
            max_iter: QUAD_MAX_SUBDIVISIONS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel > 0.0) || !self.rel.is_finite() {
            return domain(format!("tolerance rel must be > 0, got {}", self.rel));
        }
        if !(self.abs >= 0.0) {
            return domain(format!("tolerance abs must be >= 0, got {}", self.abs));
        }
        if self.max_iter < 1 {
            return domain("tolerance max_iter must be >= 1");
        }
        Ok(())
    }

    /// The accuracy target `max(rel·|value|, abs)`.
    pub fn target(&self, value: f64) -> f64 {
        (self.rel * value.abs()).max(self.abs)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-14,
            max_iter: 1_000_000,
        }
    }
}

/// Outcome of a quadrature or a series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}
