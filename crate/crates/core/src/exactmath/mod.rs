//! Exact scalar and linear-algebra substrate.
//!
//! Scalars are arbitrary-precision rationals, polynomials are multivariate
//! with a fixed graded-lexicographic term order, and rational functions are
//! kept in a canonical reduced form so that equality of representations is
//! equality of functions. On top of that sit exact matrices with rank and
//! nullspace over the rational-function field, and linear independence of
//! field families over the constants.

pub mod gcd;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod span;

pub use matrix::{independent_subset, rank_and_nullspace, ExactMatrix};
pub use parse::parse_expression;
pub use poly::{Monomial, Polynomial, VarSet};
pub use ratfunc::RationalFunction;

/// Exact rational scalar: arbitrary-precision, always reduced, positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the fraction `n/d`. Panics when `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
