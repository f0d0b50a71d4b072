//! Casimir energies of two perfectly conducting parallel plates enclosing a
//! homogeneous medium: finite temperature, weak nondissipative dispersion,
//! and `D`-dimensional spacetime.
//!
//! Natural units ħ = c = k_B = 1 throughout. Energies are per unit plate
//! area.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod circuit;
pub mod cli;
pub mod dispersion;
pub mod energy;
pub mod engine;
pub mod error;
pub mod green_em;
pub mod hyperdim;
pub mod matsubara;
pub mod specfun;

pub use energy::{CavityConfig, EnergyValue, Method};
pub use engine::{NumericResult, Tolerance};
pub use error::{Error, Result};
