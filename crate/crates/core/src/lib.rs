//! Arbitrary-precision evaluation of the Bessel zeta function
//! `ζ_ν(s) = Σ_n j_{ν,n}^{-s}` over the positive zeros of `J_ν`.
//!
//! The evaluator splits the Hawkins integral
//! `ζ_ν(s) = (s/π) sin(sπ/2) ∫_0^∞ ln(2^ν Γ(ν+1) x^{-ν} I_ν(x)) x^{-s-1} dx`
//! at a point `T`, expands the logarithm about the origin (the α family) and
//! about infinity (the β family), and integrates the exponentially small
//! remainder of the expansion at infinity numerically. Special points
//! (the origin, even integers, poles) are dispatched to closed forms.
//!
//! Modules:
//! - [`numerics`]: rationals, multiprecision reals, Bernoulli numbers, Pochhammer products.
//! - [`coefficients`]: the c, d, a, α and β coefficient families.
//! - [`bessel`]: `J_ν`, `I_ν` and the positive zeros of `J_ν`.
//! - [`zeta`]: classification, evaluation, derivatives, residues, the Z-representation
//!   and the Riemann specialization.
//! - [`oracle`]: brute-force sums over computed zeros with a Hurwitz tail.
//! - [`verify`]: the verification suites used by the CLI and the acceptance tests.

pub mod bessel;
pub mod coefficients;
pub mod numerics;
pub mod oracle;
mod quadrature;
pub mod verify;
pub mod zeta;

use rug::Float;

pub use coefficients::{CoefficientTable, Family, Order};
pub use numerics::{BigComplex, BigReal, Num, Rational, DEFAULT_PRECISION};
pub use zeta::{Argument, BetaPolicy, EvalConfig, EvalResult, Evaluator, ExactValue, Method, PointClass, Remainder, Split};

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at s = {pole}, residue {residue}")]
    Pole { pole: i64, residue: Float },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
