//! Semi-classical orthogonal polynomials at arbitrary precision.
//!
//! Two weight families are covered: x^λ e^{−x³/3+tx} on (0, ∞) and its
//! symmetrisation |x|^{2λ+1} e^{−x⁶+tx²} on ℝ. Everything is computed from
//! moments, and every identity the coefficients satisfy has a residual
//! certifier.

pub mod airy_moments;
pub mod airy_polys;
pub mod airy_recurrence;
pub mod error;
pub mod freud6;
pub mod numeric_core;
pub mod poly;
pub mod residual;
pub mod weight;

pub use error::{Error, Result};
pub use numeric_core::{PrecisionContext, Real};
pub use weight::{Family, WeightParams};
