//! Sparse exact multivariate polynomials and Laurent polynomials in
//! `x1, …, xm`.

mod laurent;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use laurent::LaurentPolynomial;
pub use monomial::ExponentVector;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_expression, ParseError, ParseErrorKind};
pub use polynomial::{
    coefficient_of, divide_exact, laurent_arith, poly_arith, Polynomial, Term,
};
pub(crate) use polynomial::{sort_terms, sub_scaled_shifted};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("divisor {0} is not a monomial")]
    NonMonomialDivisor(String),
    #[error("quotient is not a Laurent polynomial")]
    NotLaurent,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}
