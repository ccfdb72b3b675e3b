//! Ginzburg and deformed preprojective dg algebras of a graded quiver with
//! superpotential, cyclic derivatives, and the arrow-level isomorphisms
//! between presentations.

pub mod build;
pub mod cy;
pub mod derivative;
pub mod iota;

pub use build::{ginzburg, preprojective, BuildError, DifferentialTable, DoubledAlgebra};
pub use cy::{check_strongly_cy, check_strongly_cy_presentation, CyReport};
pub use derivative::{cyclic_derivative_words, Word};
pub use iota::{ginzburg_to_dpp, normalize_degrees, ArrowMap, ChainMapReport, Isomorphism, NormalizeReport};

use silting_dg_core::AlgebraElement;

/// `dW/dx` for an arrow `x` of the triple quiver of `d`.
pub fn cyclic_derivative(d: &DoubledAlgebra, x: usize) -> AlgebraElement {
    d.cyclic_derivative(x)
}
