use silting_dg_core::DgPathAlgebra;
use silting_perf_modules::{hom_to_findim, minimal_model, FinDimDgModule, HomOptions, PerfModule};

use crate::approx::{approximate, Approximation, Direction};
use crate::MutationError;

/// `RA_t` or `LA_t` together with the triangles that produced it.
#[derive(Clone, Debug)]
pub struct MutationState {
    pub vertex: usize,
    pub direction: Direction,
    pub t: usize,
    pub current: PerfModule,
    pub history: Vec<Approximation>,
    /// Named degree and support checks on `current`.
    pub checks: Vec<(String, bool)>,
}

impl MutationState {
    /// `RA_0 = LA_0 = e_i A`.
    pub fn start(vertex: usize, direction: Direction, opts: &HomOptions) -> Self {
        MutationState {
            vertex,
            direction,
            t: 0,
            current: PerfModule::projective(vertex, 0, opts.trunc),
            history: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1) && self.history.iter().all(|a| a.factors && a.minimal)
    }
}

/// The complement `M` of `e_i A`: every other vertex.
pub fn complement(alg: &DgPathAlgebra, i: usize) -> Vec<usize> {
    (0..alg.quiver.n_vertices()).filter(|&j| j != i).collect()
}

/// One mutation step with respect to `add M`.
pub fn mutate(alg: &DgPathAlgebra, state: &MutationState, opts: &HomOptions) -> Result<MutationState, MutationError> {
    let a = alg.with_trunc(opts.trunc);
    let cat = complement(alg, state.vertex);
    let ap = approximate(&a, &state.current, &cat, state.direction, opts)?;
    let next = match state.direction {
        // RA_t -> A^(t) -> RA_{t-1} -> Sigma RA_t
        Direction::Right => ap.object.cocone(&a, &state.current.with_trunc(opts.trunc), &ap.map)?,
        // LA_{t-1} -> B^(t) -> LA_t -> Sigma LA_{t-1}
        Direction::Left => state.current.with_trunc(opts.trunc).cone(&a, &ap.object, &ap.map)?,
    };
    let current = minimal_model(&a, &next);
    let t = state.t + 1;
    let checks = degree_checks(&a, &current, state.direction, t as i64);
    let mut history = state.history.clone();
    history.push(ap);
    Ok(MutationState {
        vertex: state.vertex,
        direction: state.direction,
        t,
        current,
        history,
        checks,
    })
}

/// `RA_0, ..., RA_steps` (or the `LA`s).
pub fn mutation_sequence(
    alg: &DgPathAlgebra,
    vertex: usize,
    direction: Direction,
    steps: usize,
    opts: &HomOptions,
) -> Result<Vec<MutationState>, MutationError> {
    let mut out = vec![MutationState::start(vertex, direction, opts)];
    for _ in 0..steps {
        let next = mutate(alg, out.last().unwrap(), opts)?;
        out.push(next);
    }
    Ok(out)
}

/// `RA_t` in `D^{<=t}` with no maps to `Sigma^{>=1}` simples; `LA_t` in
/// `D^{<=0}` with no maps to `Sigma^{>=t+1}` simples. Checked on the summands
/// and again through Homs into shifted simples.
pub fn degree_checks(alg: &DgPathAlgebra, x: &PerfModule, dir: Direction, t: i64) -> Vec<(String, bool)> {
    let (top_bound, hom_from) = match dir {
        Direction::Right => (t, 1),
        Direction::Left => (0, t + 1),
    };
    let lo = x.min_shift().unwrap_or(0);
    let hi = x.max_shift().unwrap_or(0);
    let q = &alg.quiver;
    let mut vanish = true;
    for v in 0..q.n_vertices() {
        let s = FinDimDgModule::simple(q.n_arrows(), v);
        for r in hom_from..=hom_from.max(hi) + 1 {
            vanish &= hom_to_findim(alg, x, &s, r) == 0;
        }
    }
    vec![
        (format!("homology in degrees <= {top_bound}"), -lo <= top_bound),
        (format!("Hom(X, Sigma^r S) = 0 for r >= {hom_from}"), vanish),
    ]
}
