//! Completed graded path algebras, modelled by length truncation, with a
//! differential given on arrows.

pub mod algebra;
pub mod element;
pub mod exec;
pub mod homology;
pub mod linalg;
pub mod paths;

pub use algebra::{DgError, DgPathAlgebra};
pub use element::{AlgebraElement, UNTRUNCATED};
pub use exec::Exec;
pub use homology::{homology, stability_bound, HomologyOptions, HomologySlice, DEFAULT_DELTA, DEFAULT_TRUNC};
pub use linalg::{Echelon, SparseVec};
pub use paths::{paths_in_window, PathCatalog};
