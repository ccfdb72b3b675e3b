//! Minimal perfect dg modules over a dg path algebra: Hom complexes and
//! derived Hom dimensions, cones, shifts, minimal models, truncations,
//! isomorphism testing, supports and K0 classes.

pub mod findim;
pub mod hom;
pub mod iso;
pub mod k0;
pub mod minimal;
pub mod module;
pub mod resolution;
pub mod truncate;

pub use findim::FinDimDgModule;
pub use hom::{cocycles, hom_derived, hom_to_findim, Cocycles, HomComplex, HomOptions, HomResult};
pub use iso::{iso_test, IsoResult};
pub use k0::{determinant, k0_class, K0Class};
pub use minimal::{invert_unit, minimal_model};
pub use module::{parse_element, Morphism, PerfModule};
pub use resolution::simple_resolution;
pub use truncate::{smart_truncate, tau_ge, tau_le, top_map, Side, Truncated};

use std::collections::BTreeSet;

use silting_dg_core::DgPathAlgebra;

#[derive(Debug, thiserror::Error)]
pub enum ModuleError {
    #[error("delta is not a {0}x{0} matrix")]
    Shape(usize),
    #[error("unknown vertex index {0}")]
    Vertex(usize),
    #[error("entry ({0}, {1}) has a path with the wrong endpoints")]
    Endpoints(usize, usize),
    #[error("entry ({r}, {c}) should have degree {want}, found {got}")]
    EntryDegree { r: usize, c: usize, want: i64, got: i64 },
    #[error("d^2 != 0 at entry ({r}, {c}): {residual}")]
    DSquared { r: usize, c: usize, residual: String },
    #[error("morphism is not closed at ({r}, {c}): d(f) = {residual}")]
    NotClosed { r: usize, c: usize, residual: String },
    #[error("finite-dimensional module: {0}")]
    FinDim(String),
    #[error("no cocycle onto the simple at vertex {vertex}, shift {shift} at truncation {trunc}")]
    NoLift { vertex: usize, shift: i64, trunc: usize },
    #[error("truncation did not finish within {0} steps")]
    TooManySteps(usize),
    #[error("bad module JSON: {0}")]
    Json(String),
}

/// Support of a module: the shifts of its minimal model.
pub fn support(alg: &DgPathAlgebra, x: &PerfModule) -> BTreeSet<i64> {
    if x.is_minimal() {
        x.support()
    } else {
        minimal_model(&alg.with_trunc(x.trunc.min(alg.trunc())), x).support()
    }
}

/// Support recomputed as `{ j : Hom(X, Sigma^j S_v) != 0 for some v }`.
pub fn support_via_simples(alg: &DgPathAlgebra, x: &PerfModule) -> BTreeSet<i64> {
    let q = &alg.quiver;
    let (lo, hi) = (x.min_shift().unwrap_or(0) - 1, x.max_shift().unwrap_or(0) + 1);
    let mut out = BTreeSet::new();
    for v in 0..q.n_vertices() {
        let s = FinDimDgModule::simple(q.n_arrows(), v);
        for j in lo..=hi {
            if hom_to_findim(alg, x, &s, j) > 0 {
                out.insert(j);
            }
        }
    }
    out
}
