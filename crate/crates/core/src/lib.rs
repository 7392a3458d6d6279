//! Arithmetic over the ideal semigroup of quadratic and cubic number fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] describes a number field and splits rational primes,
//! * [`ideals`] enumerates ideals up to a norm bound and answers divisibility queries,
//! * [`arith`] holds the multiplicative functions (Möbius, divisor sums, Ramanujan
//!   sums) and a Dirichlet-coefficient algebra generic over the coefficient ring,
//! * [`zeta`] evaluates ζ, Dirichlet L-series and Dedekind zeta values,
//! * [`moments`] computes the first and second moments of averaged Ramanujan sums
//!   and their asymptotic main terms.
//!
//! Numerical code is generic over the scalar: [`Real`] for the floating point
//! evaluators and [`Coefficient`] for Dirichlet series. The aliases below fix the
//! scalar types used by the CLI.

pub mod arith;
pub mod cache;
pub mod error;
pub mod field;
pub mod ideals;
pub mod moments;
pub mod primes;
pub mod scalar;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldKind, NumberField, PrimeIdeal};
pub use ideals::{IdealFactorization, IdealTable, TableMode};
pub use scalar::{Coefficient, Real};

/// Complex parameter `z = a + ib` in double precision.
pub type Param = arith::ComplexParam<f64>;
/// Exact integer Dirichlet coefficients.
pub type IntCoeffs = arith::DirichletCoeffs<i128>;
/// Exact rational Dirichlet coefficients.
pub type RationalCoeffs = arith::DirichletCoeffs<num_rational::BigRational>;
/// Double precision complex Dirichlet coefficients.
pub type ComplexCoeffs = arith::DirichletCoeffs<num_complex::Complex64>;
/// Field constants in double precision.
pub type Constants = zeta::FieldConstants<f64>;
/// Key estimate report in double precision.
pub type KeyReport = moments::KeyEstimateReport<f64>;
