//! Graded quivers, superpotentials and a small line-oriented input format.
//!
//! ```text
//! m 2
//! vertex x
//! arrow a: x -> x deg -1
//! potential 1*(a a a)
//! ```

pub mod parse;
pub mod potential;
pub mod quiver;
pub mod validate;

pub use parse::{parse, print, Model, ParseError};
pub use potential::{canonical_rotation, word_endpoints, Ambient, Letter, Superpotential, Term};
pub use quiver::{Arrow, ArrowSeq, GradedQuiver, Path};
pub use validate::{special_loops, validate, Check, ValidationReport, COMPOSITION_CONVENTION};
