//! Exact coefficient and polynomial arithmetic.

mod monomial;
mod multivariate;
mod order;
mod univariate;

pub use monomial::Monomial;
pub use multivariate::Polynomial;
pub use order::TermOrder;
pub use univariate::UniPoly;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
