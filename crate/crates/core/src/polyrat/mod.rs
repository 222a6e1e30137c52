//! Polynomials and rational functions in `λ`, with Möbius pullback,
//! Laurent expansion and pole accounting on the Riemann sphere.

mod poly;
mod ratl;
mod text;

pub use poly::Poly;
pub use ratl::{Laurent, PoleProfile, RatL};
pub use text::{parse_ratl, parse_scalar, ParseError};

use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("pole outside the allowed set: {0}")]
    PoleOutsideGamma(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
