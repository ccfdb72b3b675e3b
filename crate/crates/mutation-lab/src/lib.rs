//! Silting mutation of a vertex projective `e_i A` with respect to the other
//! vertex projectives, minimal resolutions of simples, the weight truncation
//! of those resolutions, and the AR angle read off them.

pub mod angle;
pub mod approx;
pub mod mutate;
pub mod resolve;

pub use angle::{ar_angle, ARAngleReport};
pub use approx::{approximate, Approximation, Direction};
pub use mutate::{complement, degree_checks, mutate, mutation_sequence, MutationState};
pub use resolve::{truncation_oracle, resolve_simple, truncate_weights, SimpleResolution};

use silting_perf_modules::ModuleError;

#[derive(Debug, thiserror::Error)]
pub enum MutationError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("vertex {vertex} carries the loop {arrow}")]
    LoopAtVertex { vertex: String, arrow: String },
    #[error("step {0} outside 0..={1}")]
    StepRange(i64, i64),
    #[error("resolution of S_{vertex} has homology {homology:?}")]
    NotASimple {
        vertex: usize,
        homology: Vec<((usize, i64), usize)>,
    },
}
