//! Flat-space polynomial oracle.
//!
//! Polynomial tensor fields on ℝⁿ with exact rational coefficients,
//! a nullspace-based enumeration of polynomial conformal Killing
//! tensors, and direct verification of operator identities by
//! componentwise differentiation. This crate is deliberately
//! independent of the symbolic engine: it shares no tensor code, so
//! agreement between the two is a meaningful check.

pub mod fit;
pub mod kernel;
pub mod modp;
pub mod poly;
pub mod tensor;

pub use fit::{fit_order1, fit_order2, FitOutcome};
pub use kernel::{ckt_polynomial_basis, ckv_basis, KernelError};
pub use poly::Poly;
pub use tensor::PolyTensor;
