//! Coinvariant algebras, Soergel modules and the combinatorics of ungraded
//! Koszul duality for `S_n`, computed with exact rational linear algebra.
//!
//! The arithmetic layer ([`arith`]) is generic over the scalar ring; the
//! rest of the crate works over [`Rational`] through the aliases below.

pub mod arith;
pub mod coinvariant;
pub mod error;
pub mod hecke;
pub mod koszul;
pub mod limits;
pub mod scalar;
pub mod selftest;
pub mod soergel;
pub mod tate;
pub mod weyl;

pub use error::{Error, Result};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Dense matrices over `Q`.
pub type QMatrix = arith::Matrix<Rational>;
/// Polynomials in `Q[x₁, …, x_n]`.
pub type QPoly = arith::MultiPoly<Rational>;
/// Laurent polynomials in `v` with rational coefficients.
pub type QLaurent = arith::LaurentPoly<Rational>;
/// Laurent polynomials in `v` with integer coefficients.
pub type IntLaurent = arith::LaurentPoly<Integer>;

/// Convenience constructor for an integral rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
