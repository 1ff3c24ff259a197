//! Exact-arithmetic symbolic engine for conformal Killing tensor
//! prolongation and higher symmetries of Laplace-type operators.
//!
//! The engine works in abstract-index notation over a Riemannian
//! n-manifold with `n` kept symbolic (coefficients live in ℚ(n)).
//! Covariant derivatives of a conformal Killing tensor are decomposed
//! through generalized gradients into O(n)-irreducible pieces, the
//! resulting overdetermined system is closed into a finite jet system,
//! and symmetry operators of the Laplace and Yamabe operators are
//! solved for exactly. Every flat-space identity is cross-checked by
//! an independent polynomial oracle (the `ckt-flatpoly` crate).

pub mod coeff;
pub mod error;

pub use error::EngineError;
