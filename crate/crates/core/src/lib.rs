//! Exact kernel for non-abelian Schwarzian calculus.
//!
//! Everything symbolic lives over Q(t) ([`algebra::RatFunc`]) or over
//! truncated q-series with rational coefficients ([`algebra::QSeries`]),
//! so every identity is checked by exact equality of canonical forms.
//! Only the mass–spring integrator works in floating point.

pub mod algebra;
pub mod calculus;
pub mod check;
pub mod error;
pub mod mass_spring;
pub mod modular;
pub mod periods;
pub mod random;

pub use algebra::{int, rat, Poly, QSeries, RatFunc, RatMat, Rational};
pub use error::{Error, Result};
