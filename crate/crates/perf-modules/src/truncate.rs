use std::collections::BTreeMap;

use silting_dg_core::linalg::SparseVec;
use silting_dg_core::{DgPathAlgebra, Exec};
use silting_quiver_dsl::Path;

use crate::findim::FinDimDgModule;
use crate::hom::{cocycles, HomOptions};
use crate::minimal::minimal_model;
use crate::module::PerfModule;
use crate::resolution::simple_resolution;
use crate::ModuleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `tau_{<= s}`
    Le,
    /// `tau_{>= s + 1}`
    Ge,
}

#[derive(Clone, Debug)]
pub enum Truncated {
    Perfect(PerfModule),
    FinDim { module: FinDimDgModule, stable: bool },
}

const MAX_STEPS: usize = 256;

/// A cocycle `X -> Sigma^{s} Y_i` whose constant part hits summand `c` of
/// shift `s`, at vertex `i`.
pub fn top_map(alg: &DgPathAlgebra, x: &PerfModule, c: usize, trunc: usize, exec: Exec) -> Option<(PerfModule, crate::module::Morphism)> {
    let (i, s) = x.summands[c];
    let y = simple_resolution(&alg.with_trunc(trunc), i).shift(s);
    let row = y.summands.iter().position(|&t| t == (i, s)).expect("generator of Y_i");
    let (hc, z) = cocycles(alg, x, &y, 0, trunc, exec);
    let target = z
        .basis
        .iter()
        .position(|(r, cc, p)| *r == row && *cc == c && *p == Path::trivial(i))?;
    let v: &SparseVec = z.cocycles.iter().find(|v| v.iter().any(|(k, _)| *k == target))?;
    Some((hc.z.clone(), hc.morphism(0, &z.basis, v)))
}

/// Perfect model of `tau_{<= s} X`: kills the top homology one simple at a
/// time by cocones onto shifted simple resolutions.
pub fn tau_le(alg: &DgPathAlgebra, x: &PerfModule, s: i64, opts: &HomOptions) -> Result<PerfModule, ModuleError> {
    let a = alg.with_trunc(opts.trunc);
    let mut x = minimal_model(&a, &x.with_trunc(opts.trunc));
    for _ in 0..MAX_STEPS {
        let Some(s0) = x.min_shift() else { return Ok(x) };
        if -s0 <= s {
            return Ok(x);
        }
        let c = x.summands.iter().position(|t| t.1 == s0).unwrap();
        let (y, phi) = top_map(&a, &x, c, opts.trunc, opts.exec).ok_or(ModuleError::NoLift {
            vertex: x.summands[c].0,
            shift: s0,
            trunc: opts.trunc,
        })?;
        x = minimal_model(&a, &x.cocone(&a, &y, &phi)?);
    }
    Err(ModuleError::TooManySteps(MAX_STEPS))
}

/// Explicit finite-dimensional `tau_{>= s+1} X` at truncation `L`, with the
/// homology compared against `L + delta`.
pub fn tau_ge(alg: &DgPathAlgebra, x: &PerfModule, s: i64, opts: &HomOptions) -> (FinDimDgModule, bool) {
    let m1 = FinDimDgModule::from_perfect_above(alg, x, s, opts.trunc);
    let m2 = FinDimDgModule::from_perfect_above(alg, x, s, opts.trunc + opts.delta);
    let h1: BTreeMap<i64, usize> = m1.homology();
    let stable = h1 == m2.homology();
    (m1, stable)
}

pub fn smart_truncate(alg: &DgPathAlgebra, x: &PerfModule, s: i64, side: Side, opts: &HomOptions) -> Result<Truncated, ModuleError> {
    Ok(match side {
        Side::Le => Truncated::Perfect(tau_le(alg, x, s, opts)?),
        Side::Ge => {
            let (module, stable) = tau_ge(alg, x, s, opts);
            Truncated::FinDim { module, stable }
        }
    })
}
