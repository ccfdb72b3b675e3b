use std::collections::BTreeMap;

use serde::Serialize;
use silting_dg_core::linalg::{rank, SparseVec};
use silting_dg_core::{AlgebraElement, DgPathAlgebra};
use silting_scalars::Scalar;

use crate::build::DoubledAlgebra;

#[derive(Clone, Debug, Serialize)]
pub struct CyReport {
    /// No arrow differential has a term of length one.
    pub no_linear_terms: bool,
    /// One loop `t_i` of degree `-m-1` per vertex, the rest in `[-m, 0]`.
    pub central_split: bool,
    /// `dz` is quadratic and `eta` is antisymmetric under the flip.
    pub antisymmetric: bool,
    /// `eta^+` sends the dual basis to a basis.
    pub nondegenerate: bool,
    /// `eta^+(phi_u)` for each arrow `u` of `V_c`.
    pub eta_plus: Vec<(String, String)>,
    pub problems: Vec<String>,
}

impl CyReport {
    pub fn pass(&self) -> bool {
        self.no_linear_terms && self.central_split && self.antisymmetric && self.nondegenerate
    }
}

pub fn check_strongly_cy(d: &DoubledAlgebra) -> CyReport {
    check_strongly_cy_presentation(&d.alg, &d.t, d.m)
}

/// Structural check of a triple-quiver presentation; `t` lists the loops
/// spanning `l z`.
pub fn check_strongly_cy_presentation(alg: &DgPathAlgebra, t: &[usize], m: i64) -> CyReport {
    let q = &alg.quiver;
    let mut problems = Vec::new();

    let mut no_linear_terms = true;
    for k in 0..q.n_arrows() {
        if alg.d_arrow(k).terms().any(|(p, _)| p.len() == 1) {
            no_linear_terms = false;
            problems.push(format!("d({}) has a linear term", q.arrows[k].name));
        }
    }

    let mut central_split = t.len() == q.n_vertices();
    for (i, &ti) in t.iter().enumerate() {
        let a = &q.arrows[ti];
        if a.src != i || a.tgt != i || a.deg != -m - 1 {
            central_split = false;
            problems.push(format!("{} is not a loop at vertex {} of degree {}", a.name, i, -m - 1));
        }
    }
    let vc: Vec<usize> = (0..q.n_arrows()).filter(|k| !t.contains(k)).collect();
    for &k in &vc {
        let dg = q.arrows[k].deg;
        if dg < -m || dg > 0 {
            central_split = false;
            problems.push(format!("{} has degree {} outside [-m, 0]", q.arrows[k].name, dg));
        }
    }

    // eta from dz = sum_i d(t_i)
    let mut dz = AlgebraElement::zero(alg.trunc());
    for &ti in t {
        dz = dz.add(alg.d_arrow(ti));
    }
    let mut eta: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut antisymmetric = true;
    for (p, c) in dz.terms() {
        if p.len() != 2 || t.contains(&(p.arrows[0] as usize)) || t.contains(&(p.arrows[1] as usize)) {
            antisymmetric = false;
            problems.push(format!("dz has a term {} outside V_c (x) V_c", p.display(q)));
            continue;
        }
        eta.insert((p.arrows[0] as usize, p.arrows[1] as usize), c.clone());
    }
    let zero = Scalar::from_int(0);
    for (&(u, v), c) in &eta {
        let flipped = eta.get(&(v, u)).unwrap_or(&zero);
        let koszul = Scalar::sign(q.arrows[u].deg * q.arrows[v].deg);
        // F(eta) = -eta
        if *flipped != -(c * &koszul) {
            antisymmetric = false;
            problems.push(format!(
                "eta not antisymmetric at ({}, {})",
                q.arrows[u].name, q.arrows[v].name
            ));
        }
    }

    // eta^+(phi_u) = (-1)^{m|u|} sum_v eta_{uv} v
    let pos: BTreeMap<usize, usize> = vc.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut eta_plus = Vec::new();
    for &u in &vc {
        let s = Scalar::sign(m * q.arrows[u].deg);
        let mut row: SparseVec = eta
            .range((u, 0)..(u + 1, 0))
            .map(|(&(_, v), c)| (pos[&v], c * &s))
            .collect();
        row.sort_by_key(|x| x.0);
        let mut img = AlgebraElement::zero(alg.trunc());
        for (j, c) in &row {
            img.add_term(silting_quiver_dsl::Path::arrow(q, vc[*j]), c.clone());
        }
        eta_plus.push((q.arrows[u].name.clone(), img.display(q)));
        rows.push(row);
    }
    let nondegenerate = rank(&rows) == vc.len();
    if !nondegenerate {
        problems.push("eta^+ is not bijective".into());
    }

    CyReport {
        no_linear_terms,
        central_split,
        antisymmetric,
        nondegenerate,
        eta_plus,
        problems,
    }
}
