use std::collections::BTreeMap;

use serde::Serialize;
use silting_quiver_dsl::{GradedQuiver, Path};

use crate::algebra::DgPathAlgebra;
use crate::element::AlgebraElement;
use crate::exec::Exec;
use crate::linalg::{kernel, rank, Echelon, SparseVec};
use crate::paths::{index_of, paths_in_window};

pub const DEFAULT_TRUNC: usize = 8;
pub const DEFAULT_DELTA: usize = 2;

#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub trunc: usize,
    pub delta: usize,
    /// `(i, j)` restricts to `e_j A e_i`, paths from `i` to `j`.
    pub piece: Option<(usize, usize)>,
    pub exec: Exec,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            trunc: DEFAULT_TRUNC,
            delta: DEFAULT_DELTA,
            piece: None,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySlice {
    pub window: (i64, i64),
    pub piece: Option<(String, String)>,
    pub trunc: usize,
    pub recheck_trunc: usize,
    pub dims: BTreeMap<i64, usize>,
    pub recheck_dims: BTreeMap<i64, usize>,
    /// Cycle representatives, printed.
    pub basis: BTreeMap<i64, Vec<String>>,
    #[serde(skip)]
    pub basis_elements: BTreeMap<i64, Vec<AlgebraElement>>,
    pub stable: bool,
    /// Truncation order from which the numbers are provably exact.
    pub exact_from: Option<usize>,
    pub exact: bool,
    pub warnings: Vec<String>,
}

impl HomologySlice {
    pub fn dim(&self, p: i64) -> usize {
        self.dims.get(&p).copied().unwrap_or(0)
    }
}

/// `L* = d + (d+1) c` with `d = -lo` and `c` the longest degree-zero path,
/// or `None` when degree-zero arrows form a cycle.
pub fn stability_bound(q: &GradedQuiver, lo: i64) -> Option<usize> {
    let c = q.longest_degree_zero_path()?;
    let d = (-lo).max(0) as usize;
    Some(d + (d + 1) * c)
}

struct Raw {
    dims: BTreeMap<i64, usize>,
    basis: BTreeMap<i64, Vec<AlgebraElement>>,
}

fn to_sparse(x: &AlgebraElement, idx: &std::collections::HashMap<Path, usize>) -> SparseVec {
    let mut v: SparseVec = x
        .terms()
        .map(|(p, c)| (*idx.get(p).expect("path in target basis"), c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn raw_homology(alg: &DgPathAlgebra, lo: i64, hi: i64, opts: &HomologyOptions, with_basis: bool) -> Raw {
    let q = &alg.quiver;
    let l = alg.trunc();
    let mut chains = paths_in_window(q, lo - 1, hi.min(0) + 1, l);
    if let Some((i, j)) = opts.piece {
        for ps in chains.values_mut() {
            ps.retain(|p| p.src() == i && p.tgt() == j);
        }
    }
    let empty: Vec<Path> = Vec::new();
    let basis_at = |p: i64| chains.get(&p).unwrap_or(&empty);

    // d^p : C^p -> C^{p+1} as columns, for p in [lo-1, hi].
    let degrees: Vec<i64> = (lo - 1..=hi).collect();
    let columns: Vec<Vec<SparseVec>> = degrees
        .iter()
        .map(|&p| {
            let src = basis_at(p);
            let idx = index_of(basis_at(p + 1));
            opts.exec.map(src, |path| to_sparse(&alg.d_path(path), &idx))
        })
        .collect();
    let ranks: Vec<usize> = opts.exec.map(&columns, |cols| rank(cols));

    let mut dims = BTreeMap::new();
    let mut basis = BTreeMap::new();
    for (k, &p) in degrees.iter().enumerate().skip(1) {
        let n = basis_at(p).len();
        dims.insert(p, n - ranks[k] - ranks[k - 1]);
        if with_basis {
            let mut e = Echelon::new();
            for c in &columns[k - 1] {
                let _ = e.insert(c);
            }
            let mut reps = Vec::new();
            for z in kernel(&columns[k]) {
                if e.insert(&z).is_ok() {
                    let mut x = AlgebraElement::zero(l);
                    for (i, c) in z {
                        x.add_term(basis_at(p)[i].clone(), c);
                    }
                    reps.push(x);
                }
            }
            debug_assert_eq!(reps.len(), dims[&p]);
            basis.insert(p, reps);
        }
    }
    Raw { dims, basis }
}

/// Homology of `A / m^{L+1}` (or of one piece `e_j A e_i`) in degrees
/// `lo..=hi`, rechecked at `L + delta`.
pub fn homology(alg: &DgPathAlgebra, lo: i64, hi: i64, opts: &HomologyOptions) -> HomologySlice {
    assert!(lo <= hi);
    let q = &alg.quiver;
    let l = opts.trunc;
    let l2 = l + opts.delta;
    let a1 = alg.with_trunc(l);
    let a2 = alg.with_trunc(l2);
    let (first, second) = if opts.exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            rayon::join(|| raw_homology(&a1, lo, hi, opts, true), || raw_homology(&a2, lo, hi, opts, false))
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        (raw_homology(&a1, lo, hi, opts, true), raw_homology(&a2, lo, hi, opts, false))
    };

    let mut warnings = Vec::new();
    let maxdeg = q.arrows.iter().map(|a| -a.deg).max().unwrap_or(0);
    if lo < -(l as i64) * maxdeg {
        warnings.push(format!(
            "window starts at {lo}, below -L*maxdeg = {}; truncated paths cannot reach it",
            -(l as i64) * maxdeg
        ));
    }
    let exact_from = stability_bound(q, lo).map(|b| b + 1);
    let basis = first
        .basis
        .iter()
        .map(|(&p, xs)| (p, xs.iter().map(|x| x.display(q)).collect()))
        .collect();
    HomologySlice {
        window: (lo, hi),
        piece: opts
            .piece
            .map(|(i, j)| (q.vertices[i].clone(), q.vertices[j].clone())),
        trunc: l,
        recheck_trunc: l2,
        stable: first.dims == second.dims,
        dims: first.dims,
        recheck_dims: second.dims,
        basis,
        basis_elements: first.basis,
        exact: exact_from.is_some_and(|b| l >= b),
        exact_from,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::UNTRUNCATED;

    fn one_loop(ginzburg: bool) -> DgPathAlgebra {
        let mut q = GradedQuiver::numbered(1);
        let a = q.add_arrow("a", 0, 0, -1);
        let s = if ginzburg { q.add_arrow("a*", 0, 0, -1) } else { a };
        let t = q.add_arrow("t", 0, 0, -3);
        let pa = AlgebraElement::arrow(&q, a, UNTRUNCATED);
        let ps = AlgebraElement::arrow(&q, s, UNTRUNCATED);
        let dt = pa.mul(&ps).add(&ps.mul(&pa));
        let mut darr = vec![AlgebraElement::zero(UNTRUNCATED); q.n_arrows()];
        darr[t] = dt;
        DgPathAlgebra::new(q, darr, UNTRUNCATED).unwrap()
    }

    #[test]
    fn one_loop_ginzburg_vs_preprojective() {
        let opts = HomologyOptions::default();
        let g = homology(&one_loop(true), -1, 0, &opts);
        assert_eq!(g.dim(-1), 2);
        assert_eq!(g.dim(0), 1);
        assert!(g.stable && g.exact);
        let p = homology(&one_loop(false), -1, 0, &opts);
        assert_eq!(p.dim(-1), 1);
    }

    #[test]
    fn bound_values() {
        let g = one_loop(true);
        assert_eq!(stability_bound(&g.quiver, -2), Some(2));
        let mut a2 = GradedQuiver::numbered(2);
        a2.add_arrow("a", 0, 1, 0);
        assert_eq!(stability_bound(&a2, -1), Some(3));
        let mut cyc = GradedQuiver::numbered(1);
        cyc.add_arrow("x", 0, 0, 0);
        assert_eq!(stability_bound(&cyc, -1), None);
    }

    #[test]
    fn sequential_matches_parallel() {
        let g = one_loop(true);
        let mut opts = HomologyOptions::default();
        let a = homology(&g, -4, 0, &opts);
        opts.exec = Exec::Sequential;
        let b = homology(&g, -4, 0, &opts);
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.basis, b.basis);
    }
}
