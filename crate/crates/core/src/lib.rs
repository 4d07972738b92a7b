//! Zeros of polynomials in the Riemann zeta function and its derivatives.
//!
//! The central object is an [`FExpression`]: a polynomial with complex
//! coefficients in `ζ(s), ζ'(s), …, ζ^(k)(s)`. From it the crate computes
//!
//! * values of `F` and `F'` through an Euler–Maclaurin zeta engine ([`zeta`], [`eval`]),
//! * its degrees, Dirichlet coefficients and the lattice series of `F'/F` ([`expr`], [`dirichlet`]),
//! * counts and locations of its zeros by the argument principle ([`zeros`]),
//! * reports comparing zero statistics with their asymptotic predictions ([`theorems`]).

pub mod dirichlet;
pub mod error;
pub mod eval;
pub mod export;
pub mod expr;
pub mod jet;
pub mod theorems;
pub mod zeros;
pub mod zeta;

mod dd;

pub use error::{Error, ErrorKind, Result};
pub use expr::{parse_expression, DegreeReport, FExpression, Monomial};
pub use num_complex::Complex64;
