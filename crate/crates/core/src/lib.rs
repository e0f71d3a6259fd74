//! Exact computations with one-parameter torus actions.
//!
//! The crate realizes, at desk scale and without floating point:
//!
//! * integer lattice linear algebra ([`exact`]),
//! * rational polyhedral cones and fans, star subdivisions and Hilbert bases ([`polyhedral`]),
//! * GIT and geometric quotients of affine space by a ±1-weighted ℂ* action,
//!   presented as toric fans, together with the blow-up of the vertex and the
//!   fan morphisms between them ([`toric_git`]),
//! * a verifier for the three conditions of a rooftop flip on toric data ([`rooftop`]),
//! * bookkeeping for drums and the Segre drum ([`drum`]),
//! * the quadric drum `Q²ⁿ ⊂ ℙ²ⁿ⁺¹` at the level of points and orbits ([`quadric`]),
//! * a command-line front end and JSON formats ([`cli`]).

pub mod cli;
pub mod drum;
pub mod exact;
pub mod polyhedral;
pub mod quadric;
pub mod rooftop;
pub mod toric_git;

pub use exact::{IntMatrix, LatticeVector};
pub use polyhedral::{Cone, Fan};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("vector {0} is not in the support of the fan")]
    OutsideSupport(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("fan morphism not certified: {0}")]
    Morphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}
