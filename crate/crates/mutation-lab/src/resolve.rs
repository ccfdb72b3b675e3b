use std::collections::BTreeMap;

use silting_dg_core::DgPathAlgebra;
use silting_perf_modules::{hom_derived, simple_resolution, HomOptions, PerfModule};
use silting_potential_calculus::DoubledAlgebra;

use crate::MutationError;

/// `Y = P_i (+) Sigma P'_0 (+) ... (+) Sigma^{m+2} P'_{m+1}` with its
/// homology certified.
#[derive(Clone, Debug)]
pub struct SimpleResolution {
    pub vertex: usize,
    pub y: PerfModule,
    /// Summand indices of `Sigma^{j+1} P'_j`, keyed by `j + 1` (key 0 is `P_i`).
    pub levels: BTreeMap<i64, Vec<usize>>,
    /// Nonzero `dim H^n(Y e_v)` as `((v, n), dim)`.
    pub homology: Vec<((usize, i64), usize)>,
    pub stable: bool,
}

pub fn resolve_simple(alg: &DgPathAlgebra, i: usize, opts: &HomOptions) -> Result<SimpleResolution, MutationError> {
    let y = simple_resolution(alg, i);
    y.check_d_squared(alg).map_err(MutationError::Module)?;
    let mut levels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &(_, s)) in y.summands.iter().enumerate() {
        levels.entry(s).or_default().push(k);
    }
    let top = y.max_shift().unwrap_or(0);
    let mut homology = Vec::new();
    let mut stable = true;
    for v in 0..alg.quiver.n_vertices() {
        let p = PerfModule::projective(v, 0, alg.trunc());
        for n in -top - 1..=1 {
            let h = hom_derived(alg, &p, &y, n, opts);
            stable &= h.stable;
            if h.dim > 0 {
                homology.push(((v, n), h.dim));
            }
        }
    }
    if homology != vec![((i, 0), 1)] {
        return Err(MutationError::NotASimple { vertex: i, homology });
    }
    Ok(SimpleResolution {
        vertex: i,
        y,
        levels,
        homology,
        stable,
    })
}

/// `(eps_{<=t} Y, eps_{>=t+1} Y)`: the submodule on summands of shift at
/// most `t` and the quotient on the rest.
pub fn truncate_weights(y: &PerfModule, t: i64) -> (PerfModule, PerfModule) {
    let k = y.summands.iter().take_while(|s| s.1 <= t).count();
    debug_assert!(y.summands[k..].iter().all(|s| s.1 > t));
    let block = |lo: usize, hi: usize| PerfModule {
        summands: y.summands[lo..hi].to_vec(),
        delta: y.delta[lo..hi].iter().map(|row| row[lo..hi].to_vec()).collect(),
        trunc: y.trunc,
    };
    (block(0, k), block(k, y.len()))
}

/// `(Sigma^{-t} eps_{<=t} Y, Sigma^{-t-1} eps_{>=t+1} Y)`. Refuses vertices
/// carrying a loop of the base quiver.
pub fn truncation_oracle(d: &DoubledAlgebra, i: usize, t: i64) -> Result<(PerfModule, PerfModule), MutationError> {
    if let Some(a) = d.base.arrows.iter().find(|a| a.src == i && a.tgt == i) {
        return Err(MutationError::LoopAtVertex {
            vertex: d.base.vertices[i].clone(),
            arrow: a.name.clone(),
        });
    }
    if t < 0 || t > d.m + 1 {
        return Err(MutationError::StepRange(t, d.m + 1));
    }
    let y = simple_resolution(&d.alg, i);
    let (lo, hi) = truncate_weights(&y, t);
    Ok((lo.shift(-t), hi.shift(-t - 1)))
}
