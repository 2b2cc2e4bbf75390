//! Formal models of the four categories in the Koszul square, the functors
//! between them, and the graded dual algebra with its Ext groups.
//!
//! A complex on any side is a sequence of direct sums of generators with
//! differentials whose entries are explicit Soergel-module maps. The graded
//! sides carry twist labels; `hom_rule` says which maps are allowed.

mod corpus;
mod dual;
mod formal;
mod homotopy;

pub use corpus::{degrading_formal, random_mix_complex, to_tate, FormalParams};
pub use dual::{koszulity_check, DualAlgebra, KoszulityReport, Projective, Resolution};
pub use formal::{
    gkos, iota_formal, kos_formal, square_check, v_formal, FormalCategory, FormalComplex, FormalMatrix, Generator,
    HomSpace, Side,
};
pub use homotopy::hom_homotopy_formal;
