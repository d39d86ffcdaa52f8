//! Precision-parameterised kernels shared by every other module.

pub mod diff;
pub mod linalg;
pub mod precision;
pub mod quad;
pub mod special;

pub use diff::{richardson_diff, richardson_jet, DerivOrder, Derivative, Jet};
pub use linalg::{det, tridiag_eigs, Determinant, Enclosure, RealMatrix, SymTridiag};
pub use precision::{log2_abs, log2_rel_diff, max_abs, rel_diff, PrecisionContext, Real, RealExt};
pub use quad::{tanh_sinh_quad, UpperLimit};
pub use special::{airy_ai_bi, airy_all, gamma_fn, hyp1f2, AiryValues};
