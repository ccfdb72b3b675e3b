use std::collections::HashMap;

use serde::Serialize;
use silting_dg_core::linalg::{kernel, rank, Echelon, SparseVec};
use silting_dg_core::{AlgebraElement, DgPathAlgebra, Exec, PathCatalog, DEFAULT_DELTA, DEFAULT_TRUNC};
use silting_quiver_dsl::Path;

use crate::findim::FinDimDgModule;
use crate::module::{Morphism, PerfModule};

#[derive(Clone, Copy, Debug)]
pub struct HomOptions {
    pub trunc: usize,
    pub delta: usize,
    pub exec: Exec,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            trunc: DEFAULT_TRUNC,
            delta: DEFAULT_DELTA,
            exec: Exec::default(),
        }
    }
}

/// `Hom^n(X, Z)` with basis `(r, c, path)`, path in `e_{i_r} A e_{j_c}` of
/// degree `n + s^Z_r - s^X_c`, at a fixed truncation.
pub struct HomComplex {
    pub x: PerfModule,
    pub z: PerfModule,
    pub alg: DgPathAlgebra,
    catalog: PathCatalog,
    exec: Exec,
}

pub type HomBasis = Vec<(usize, usize, Path)>;

impl HomComplex {
    /// Covers degrees `lo` and up.
    pub fn new(alg: &DgPathAlgebra, x: &PerfModule, z: &PerfModule, lo: i64, trunc: usize, exec: Exec) -> Self {
        let a = alg.with_trunc(trunc);
        let smin = z.min_shift().unwrap_or(0);
        let smax = x.max_shift().unwrap_or(0);
        let plo = (lo + smin - smax).min(0);
        let catalog = PathCatalog::new(&a.quiver, plo, trunc);
        HomComplex {
            x: x.with_trunc(trunc),
            z: z.with_trunc(trunc),
            alg: a,
            catalog,
            exec,
        }
    }

    pub fn basis(&self, n: i64) -> HomBasis {
        let mut out = Vec::new();
        for (r, &(vr, sr)) in self.z.summands.iter().enumerate() {
            for (c, &(vc, sc)) in self.x.summands.iter().enumerate() {
                let g = n + sr - sc;
                if g > 0 {
                    continue;
                }
                for p in self.catalog.get(g, vc, vr) {
                    out.push((r, c, p.clone()));
                }
            }
        }
        out
    }

    pub fn morphism(&self, n: i64, basis: &HomBasis, v: &SparseVec) -> Morphism {
        let mut f = Morphism::zero(n, self.z.len(), self.x.len(), self.alg.trunc());
        for (k, c) in v {
            let (r, col, p) = &basis[*k];
            f.entries[*r][*col].add_term(p.clone(), c.clone());
        }
        f
    }

    pub fn coords(&self, f: &Morphism, basis: &HomBasis) -> SparseVec {
        let idx: HashMap<(usize, usize, &Path), usize> =
            basis.iter().enumerate().map(|(k, (r, c, p))| ((*r, *c, p), k)).collect();
        to_coords(f, &idx)
    }

    /// Columns of `D: Hom^n -> Hom^{n+1}`.
    pub fn differential(&self, n: i64, src: &HomBasis, tgt: &HomBasis) -> Vec<SparseVec> {
        let idx: HashMap<(usize, usize, &Path), usize> =
            tgt.iter().enumerate().map(|(k, (r, c, p))| ((*r, *c, p), k)).collect();
        let trunc = self.alg.trunc();
        self.exec.map(src, |(r, c, p)| {
            let mut f = Morphism::zero(n, self.z.len(), self.x.len(), trunc);
            f.entries[*r][*c] = AlgebraElement::from_path(p.clone(), trunc);
            let df = self.x.hom_differential(&self.alg, &self.z, &f);
            to_coords(&df, &idx)
        })
    }
}

fn to_coords(f: &Morphism, idx: &HashMap<(usize, usize, &Path), usize>) -> SparseVec {
    let mut v: SparseVec = Vec::new();
    for (r, row) in f.entries.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            for (p, x) in e.terms() {
                let k = *idx.get(&(r, c, p)).expect("image path in Hom basis");
                v.push((k, x.clone()));
            }
        }
    }
    v.sort_by_key(|(k, _)| *k);
    v
}

/// `dim`, and cocycle representatives of a basis of `ker cur / im prev`.
pub fn cohomology(prev: &[SparseVec], cur: &[SparseVec], dim: usize, with_basis: bool) -> (usize, Vec<SparseVec>) {
    let h = dim - rank(cur) - rank(prev);
    if !with_basis {
        return (h, Vec::new());
    }
    let mut e = Echelon::new();
    for c in prev {
        let _ = e.insert(c);
    }
    let reps: Vec<SparseVec> = kernel(cur).into_iter().filter(|z| e.insert(z).is_ok()).collect();
    debug_assert_eq!(reps.len(), h);
    (h, reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct HomResult {
    pub n: i64,
    pub dim: usize,
    pub trunc: usize,
    pub recheck_dim: usize,
    pub recheck_trunc: usize,
    pub stable: bool,
    /// Cocycle representatives as entry matrices.
    pub basis: Vec<Vec<Vec<String>>>,
    #[serde(skip)]
    pub morphisms: Vec<Morphism>,
}

fn hom_at(alg: &DgPathAlgebra, x: &PerfModule, z: &PerfModule, n: i64, trunc: usize, exec: Exec, with_basis: bool) -> (usize, Vec<Morphism>) {
    let hc = HomComplex::new(alg, x, z, n - 1, trunc, exec);
    let (b0, b1, b2) = (hc.basis(n - 1), hc.basis(n), hc.basis(n + 1));
    let prev = hc.differential(n - 1, &b0, &b1);
    let cur = hc.differential(n, &b1, &b2);
    let (h, reps) = cohomology(&prev, &cur, b1.len(), with_basis);
    (h, reps.iter().map(|v| hc.morphism(n, &b1, v)).collect())
}

/// `dim H^n Hom(X, Z)` at `L` and `L + delta`.
pub fn hom_derived(alg: &DgPathAlgebra, x: &PerfModule, z: &PerfModule, n: i64, opts: &HomOptions) -> HomResult {
    let l2 = opts.trunc + opts.delta;
    let mut runs = opts
        .exec
        .map(&[opts.trunc, l2], |&l| hom_at(alg, x, z, n, l, opts.exec, l == opts.trunc))
        .into_iter();
    let (dim, morphisms) = runs.next().unwrap();
    let (recheck_dim, _) = runs.next().unwrap();
    HomResult {
        n,
        dim,
        trunc: opts.trunc,
        recheck_dim,
        recheck_trunc: l2,
        stable: dim == recheck_dim,
        basis: morphisms.iter().map(|f| f.display(&alg.quiver)).collect(),
        morphisms,
    }
}

/// `Z^n Hom(X, Z)` basis, with the coboundary space as an echelon form.
pub struct Cocycles {
    pub basis: HomBasis,
    pub cocycles: Vec<SparseVec>,
    pub boundaries: Echelon,
    pub complex_trunc: usize,
}

pub fn cocycles(alg: &DgPathAlgebra, x: &PerfModule, z: &PerfModule, n: i64, trunc: usize, exec: Exec) -> (HomComplex, Cocycles) {
    let hc = HomComplex::new(alg, x, z, n - 1, trunc, exec);
    let (b0, b1, b2) = (hc.basis(n - 1), hc.basis(n), hc.basis(n + 1));
    let prev = hc.differential(n - 1, &b0, &b1);
    let cur = hc.differential(n, &b1, &b2);
    let mut boundaries = Echelon::new();
    for c in &prev {
        let _ = boundaries.insert(c);
    }
    let z = kernel(&cur);
    (
        hc,
        Cocycles {
            basis: b1,
            cocycles: z,
            boundaries,
            complex_trunc: trunc,
        },
    )
}

/// `dim H^0 Hom(X, Sigma^shift N)`; exact, `N` being finite-dimensional.
pub fn hom_to_findim(alg: &DgPathAlgebra, x: &PerfModule, n: &FinDimDgModule, shift: i64) -> usize {
    debug_assert!(n.check(alg).is_ok());
    let n = n.shift(shift);
    // Hom^k: phi(g_c) in (N e_{i_c})^{k - s_c}
    let basis = |k: i64| -> Vec<(usize, usize)> {
        let mut b = Vec::new();
        for (c, &(v, s)) in x.summands.iter().enumerate() {
            for (j, &(w, d)) in n.basis.iter().enumerate() {
                if w == v && d == k - s {
                    b.push((c, j));
                }
            }
        }
        b
    };
    let diff = |k: i64, src: &[(usize, usize)], tgt: &[(usize, usize)]| -> Vec<SparseVec> {
        let idx: HashMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let sk = silting_scalars::Scalar::sign(k + 1);
        src.iter()
            .map(|&(c, j)| {
                // D(phi)(g_p) = d_N phi(g_p) - (-1)^k sum_q phi(g_q) delta_qp
                let mut out: std::collections::BTreeMap<usize, silting_scalars::Scalar> = Default::default();
                let mut push = |p: usize, vec: &SparseVec, s: &silting_scalars::Scalar| {
                    for (jj, x) in vec {
                        let key = idx[&(p, *jj)];
                        let e = out.entry(key).or_insert_with(|| num_traits::Zero::zero());
                        *e += &(x * s);
                    }
                };
                push(c, &n.d[j], &num_traits::One::one());
                for p in 0..x.len() {
                    if !x.delta[c][p].is_zero() {
                        let img = n.act_element(j, &x.delta[c][p]);
                        push(p, &img, &sk);
                    }
                }
                out.into_iter().filter(|(_, x)| !num_traits::Zero::is_zero(x)).collect()
            })
            .collect()
    };
    let (bm, b0, bp) = (basis(-1), basis(0), basis(1));
    let prev = diff(-1, &bm, &b0);
    let cur = diff(0, &b0, &bp);
    cohomology(&prev, &cur, b0.len(), false).0
}
