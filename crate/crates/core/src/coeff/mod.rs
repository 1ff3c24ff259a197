//! Exact arithmetic in ℚ(n) and linear solving over it.
//!
//! Every symbolic coefficient in the engine lives here: normalization
//! constants of generalized gradients, jet rewrite coefficients, and the
//! symmetry-operator unknowns are all elements of this field. There is
//! no floating point anywhere in the workspace.

mod linear;
mod poly;
mod ratfunc;

pub use linear::{residual, solve_linear, LinEq, LinearSolution};
pub use poly::Poly;
pub use ratfunc::{parse_ratfunc, RatFunc};
