//! Resultants, lexicographic Gröbner bases and first elimination ideals of
//! polynomial ideals over the rationals, with tools for comparing factor
//! multiplicities of the resultant against the elimination-ideal generator.

pub mod analysis;
pub mod conjecture;
pub mod error;
pub mod expansion;
pub mod factor;
pub mod generate;
pub mod groebner;
pub mod poly;
pub mod resultant;
pub mod suites;
pub mod text;

pub use error::{AlgebraError, Result};
pub use poly::{Monomial, Polynomial, Rational, TermOrder, UniPoly};
