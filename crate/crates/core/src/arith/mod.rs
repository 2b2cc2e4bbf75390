//! Exact arithmetic substrate: matrices, Laurent and multivariate
//! polynomials, generic over the coefficient ring.

mod laurent;
mod matrix;
mod multipoly;
mod sparse;

pub use laurent::LaurentPoly;
pub use matrix::{Matrix, Rref, Solver};
pub use multipoly::{Exponents, MultiPoly};
pub use sparse::{SparseEchelon, SparseRow};

#[allow(unused_imports)]
pub(crate) use multipoly::write_linear_combination;
