use serde::Serialize;
use silting_dg_core::linalg::Echelon;
use silting_dg_core::DgPathAlgebra;
use silting_perf_modules::{cocycles, HomOptions, Morphism, PerfModule};
use silting_potential_calculus::DoubledAlgebra;

use crate::MutationError;

#[derive(Clone, Debug, Serialize)]
pub struct ARAngleReport {
    pub vertex: String,
    /// Terms `P_i, P'_m, ..., P'_0, P_i`, as vertex names.
    pub terms: Vec<Vec<String>>,
    /// Maps between consecutive terms, as entry matrices.
    pub maps: Vec<Vec<Vec<String>>>,
    pub ends_are_p_i: bool,
    pub middle_in_add_m: bool,
    pub composites_vanish: bool,
    pub sink: bool,
    pub source: bool,
    pub problems: Vec<String>,
}

impl ARAngleReport {
    pub fn pass(&self) -> bool {
        self.ends_are_p_i && self.middle_in_add_m && self.composites_vanish && self.sink && self.source
    }
}

fn unshifted(vs: &[usize], trunc: usize) -> PerfModule {
    let mut x = PerfModule::zero(trunc);
    for &v in vs {
        x = x.direct_sum(&PerfModule::projective(v, 0, trunc));
    }
    x
}

/// `f . u` over all cocycles `u` (or `u . f`) spans the radical part of
/// `Hom(P_j, target)` (or `Hom(source, P_j)`) for every vertex `j`.
fn almost_split(alg: &DgPathAlgebra, f: &Morphism, src: &PerfModule, tgt: &PerfModule, i: usize, sink: bool, opts: &HomOptions) -> bool {
    let l = opts.trunc;
    (0..alg.quiver.n_vertices()).all(|j| {
        let p = PerfModule::projective(j, 0, l);
        let (hc, z) = if sink {
            cocycles(alg, &p, tgt, 0, l, opts.exec)
        } else {
            cocycles(alg, src, &p, 0, l, opts.exec)
        };
        let (hu, zu) = if sink {
            cocycles(alg, &p, src, 0, l, opts.exec)
        } else {
            cocycles(alg, tgt, &p, 0, l, opts.exec)
        };
        let mut through: Echelon = z.boundaries.clone();
        for u in &zu.cocycles {
            let u = hu.morphism(0, &zu.basis, u);
            let c = if sink { f.compose(&u) } else { u.compose(f) };
            let _ = through.insert(&hc.coords(&c, &z.basis));
        }
        let mut all = z.boundaries.clone();
        for v in &z.cocycles {
            let _ = all.insert(v);
        }
        let radical = all.rank() - usize::from(j == i);
        let got = through.rank();
        // everything radical factors, and the identity of P_i does not
        got == radical && (j != i || z.cocycles.iter().any(|v| !through.contains(v)))
    })
}

/// The `(m+3)`-angle `P_i -> P'_m -> ... -> P'_0 -> P_i` read off the
/// degree-zero blocks of the simple resolution's differential.
pub fn ar_angle(d: &DoubledAlgebra, i: usize, opts: &HomOptions) -> Result<ARAngleReport, MutationError> {
    if let Some(a) = d.base.arrows.iter().find(|a| a.src == i && a.tgt == i) {
        return Err(MutationError::LoopAtVertex {
            vertex: d.base.vertices[i].clone(),
            arrow: a.name.clone(),
        });
    }
    let l = opts.trunc;
    let alg = d.alg.with_trunc(l);
    let q = &alg.quiver;
    let y = silting_perf_modules::simple_resolution(&alg, i);
    let mut problems = Vec::new();
    // level k holds the summands of shift k; P'_j sits at level j + 1
    let level = |k: i64| -> Vec<usize> { (0..y.len()).filter(|&r| y.summands[r].1 == k).collect() };
    // terms from level m+2 down to level 0
    let idx: Vec<Vec<usize>> = (0..=d.m + 2).rev().map(level).collect();
    let terms: Vec<PerfModule> = idx
        .iter()
        .map(|ids| unshifted(&ids.iter().map(|&r| y.summands[r].0).collect::<Vec<_>>(), l))
        .collect();
    let mut maps = Vec::new();
    for w in idx.windows(2) {
        let (cols, rows) = (&w[0], &w[1]);
        let mut f = Morphism::zero(0, rows.len(), cols.len(), l);
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                f.entries[a][b] = y.delta[r][c].clone();
            }
        }
        maps.push(f);
    }
    // unshifted terms are sorted by vertex, as are the levels of y
    let ends_are_p_i = idx[0].len() == 1
        && idx.last().unwrap().len() == 1
        && terms[0].summands == vec![(i, 0)]
        && terms.last().unwrap().summands == vec![(i, 0)];
    let middle_in_add_m = terms[1..terms.len() - 1].iter().all(|t| t.summands.iter().all(|s| s.0 != i));
    let mut composites_vanish = true;
    for k in 0..maps.len() - 1 {
        let c = maps[k + 1].compose(&maps[k]);
        let (hc, z) = cocycles(&alg, &terms[k], &terms[k + 2], 0, l, opts.exec);
        let v = hc.coords(&c, &z.basis);
        if !z.boundaries.contains(&v) {
            composites_vanish = false;
            problems.push(format!("composite {k}->{} is not null-homotopic", k + 2));
        }
    }
    let n = maps.len();
    let sink = almost_split(&alg, &maps[n - 1], &terms[n - 1], &terms[n], i, true, opts);
    let source = almost_split(&alg, &maps[0], &terms[0], &terms[1], i, false, opts);
    if !sink {
        problems.push("last map is not a sink map".into());
    }
    if !source {
        problems.push("first map is not a source map".into());
    }
    Ok(ARAngleReport {
        vertex: q.vertices[i].clone(),
        terms: terms
            .iter()
            .map(|t| t.summands.iter().map(|s| q.vertices[s.0].clone()).collect())
            .collect(),
        maps: maps.iter().map(|f| f.display(q)).collect(),
        ends_are_p_i,
        middle_in_add_m,
        composites_vanish,
        sink,
        source,
        problems,
    })
}
