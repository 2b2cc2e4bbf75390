//! Graded modules over the coinvariant algebra: Bott–Samelson induction,
//! Hom spaces, and decomposition into the indecomposables `D_w`.
//!
//! Shifts follow `M⟨k⟩_d = M_{d+k}`, so `D_w⟨k⟩` has character
//! `v^{−k} ch(D_w)` and class `v^{−k} b_w`.

mod category;
mod decompose;
mod endo;
mod hom;
mod induct;
mod module;

pub use category::SoergelCategory;
pub use decompose::{summands_from_kl, Decomposition, Summand};
pub use endo::{AlgebraBasisElement, GradedAlgebra};
pub use hom::{degree_range, hom_all, hom_dimensions, hom_graded, hom_ungraded};
pub use induct::induct;
pub use module::{GradedModule, ModuleMap};
