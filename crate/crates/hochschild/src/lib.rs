//! Low-degree Hochschild homology of completed dg path algebras through a
//! truncated `l`-relative reduced model, and the rigidity checks built on it.

pub mod complex;

use std::collections::BTreeMap;

use serde::Serialize;
use silting_dg_core::{DgPathAlgebra, HomologyOptions};
use silting_quiver_dsl::Path;

pub use complex::{Chain, Computed, HochschildComplex};

pub const MODEL: &str = "truncated l-relative model";

/// `HH_0, ..., HH_{p_max}`; `HH_p` sits in total degree `-p`.
#[derive(Clone, Debug, Serialize)]
pub struct HochschildSlice {
    pub p_max: usize,
    pub model: &'static str,
    pub trunc: usize,
    pub recheck_trunc: usize,
    pub dims: Vec<usize>,
    pub recheck_dims: Vec<usize>,
    pub stable: bool,
    /// Cycle representatives per `p`.
    pub basis: BTreeMap<usize, Vec<String>>,
    /// The classes of the trivial paths `e_v` are linearly independent.
    pub trivial_paths_independent: bool,
}

fn compute(alg: &DgPathAlgebra, p_max: usize, trunc: usize, opts: &HomologyOptions, reps: bool) -> Computed {
    Computed::new(&alg.with_trunc(trunc), -(p_max as i64) - 1, 1, opts.exec, reps)
}

fn trivial_independent(c: &Computed) -> bool {
    let mut e = silting_dg_core::Echelon::new();
    for col in &c.columns[&-1] {
        let _ = e.insert(col);
    }
    (0..c.complex.alg.quiver.n_vertices()).all(|v| {
        let u = c.unit(0, &Chain(vec![Path::trivial(v)])).expect("trivial path chain");
        e.insert(&u).is_ok()
    })
}

fn slice_and_model(alg: &DgPathAlgebra, p_max: usize, opts: &HomologyOptions) -> (HochschildSlice, Computed) {
    let (l, l2) = (opts.trunc, opts.trunc + opts.delta);
    let mut runs = opts.exec.map(&[(l, true), (l2, false)], |&(t, r)| compute(alg, p_max, t, opts, r));
    let second = runs.pop().unwrap();
    let first = runs.pop().unwrap();
    let dims: Vec<usize> = (0..=p_max).map(|p| first.dims[&-(p as i64)]).collect();
    let recheck_dims: Vec<usize> = (0..=p_max).map(|p| second.dims[&-(p as i64)]).collect();
    let basis = (0..=p_max)
        .map(|p| {
            let n = -(p as i64);
            (p, first.reps[&n].iter().map(|v| first.display(n, v)).collect())
        })
        .collect();
    let slice = HochschildSlice {
        p_max,
        model: MODEL,
        trunc: l,
        recheck_trunc: l2,
        stable: dims == recheck_dims,
        dims,
        recheck_dims,
        basis,
        trivial_paths_independent: trivial_independent(&first),
    };
    (slice, first)
}

pub fn hochschild_homology(alg: &DgPathAlgebra, p_max: usize, opts: &HomologyOptions) -> HochschildSlice {
    slice_and_model(alg, p_max, opts).0
}

/// Loops of degree `-p` with zero differential.
pub fn loop_obstruction(alg: &DgPathAlgebra, p: i64) -> Vec<String> {
    let q = &alg.quiver;
    (0..q.n_arrows())
        .filter(|&a| q.arrows[a].is_loop() && q.arrows[a].deg == -p && alg.d_arrow(a).is_zero())
        .map(|a| q.arrows[a].name.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub r: usize,
    pub slice: HochschildSlice,
    pub hh0_is_l: bool,
    /// `p` with `HH_p != 0`, `1 <= p <= r - 1`.
    pub nonvanishing: Vec<usize>,
    /// Loops with zero differential giving nonzero classes, else printed
    /// cycle representatives.
    pub witnesses: Vec<String>,
    /// Loops with zero differential of degree `-p`, `0 <= p <= r - 1`.
    pub loops: BTreeMap<usize, Vec<String>>,
    /// Any such loop forces failure.
    pub loops_consistent: bool,
    pub caveat: String,
    pub pass: bool,
}

/// `HH_0 = l` on the trivial paths and `HH_p = 0` for `1 <= p <= r - 1`.
pub fn rigidity_check(alg: &DgPathAlgebra, r: usize, opts: &HomologyOptions) -> RigidityReport {
    let p_max = r.saturating_sub(1);
    let (slice, model) = slice_and_model(alg, p_max, opts);
    let n_vertices = alg.quiver.n_vertices();
    let hh0_is_l = slice.dims[0] == n_vertices && slice.trivial_paths_independent;
    let nonvanishing: Vec<usize> = (1..=p_max).filter(|&p| slice.dims[p] != 0).collect();
    let mut witnesses = Vec::new();
    let mut loops = BTreeMap::new();
    for p in 0..=p_max {
        let ls = loop_obstruction(alg, p as i64);
        let n = -(p as i64);
        for name in &ls {
            let a = alg.quiver.arrow_index(name).unwrap();
            let chain = Chain(vec![Path::arrow(&alg.quiver, a)]);
            if let Some(v) = model.unit(n, &chain) {
                if model.nonzero_class(n, &v) && (p > 0 || !hh0_is_l) {
                    witnesses.push(name.clone());
                }
            }
        }
        if !ls.is_empty() {
            loops.insert(p, ls);
        }
    }
    if witnesses.is_empty() {
        for &p in &nonvanishing {
            witnesses.extend(slice.basis[&p].iter().cloned());
        }
    }
    let pass = hh0_is_l && nonvanishing.is_empty() && slice.stable;
    let loops_consistent = loops.is_empty() || !pass;
    let caveat = format!(
        "{MODEL}: dims at L = {} rechecked at L = {}{}",
        slice.trunc,
        slice.recheck_trunc,
        if slice.stable { "" } else { ", not stable" }
    );
    RigidityReport {
        r,
        slice,
        hh0_is_l,
        nonvanishing,
        witnesses,
        loops,
        loops_consistent,
        caveat,
        pass,
    }
}
