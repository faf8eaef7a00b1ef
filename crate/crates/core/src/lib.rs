//! Exact-arithmetic toolkit for cooperative games.
//!
//! The crate provides set functions over coalitions with Möbius/zeta
//! transforms, sharing/selector/marginal values, the order-k core family of
//! polyhedra in Möbius coordinates, and exact polyhedral machinery
//! (Fourier–Motzkin elimination, double description) to compute and compare
//! their images under value maps.
//!
//! Everything is generic over an exact rational scalar ([`Scalar`]); the
//! default instantiation is [`Rat`] (arbitrary-precision rationals). There is
//! deliberately no floating-point mode: all comparisons are exact, so
//! polyhedron identities can be decided rather than approximated.

pub mod allocation;
mod bits;
pub mod cores;
pub mod games;
mod linalg;
pub mod polyhedra;
mod scalar;
pub mod set_functions;
pub mod verify;


pub use scalar::Scalar;

/// Arbitrary-precision rational scalar, the default throughout the crate.
pub type Rat = num_rational::BigRational;

/// Machine-word rational scalar for small inputs. Overflow panics, so prefer
/// [`Rat`] for anything beyond toy sizes.
pub type Rat64 = num_rational::Rational64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polyhedron is not pointed (nonzero lineality space)")]
    NotPointed,
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
