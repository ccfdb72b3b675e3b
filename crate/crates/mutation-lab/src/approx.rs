use silting_dg_core::linalg::SparseVec;
use silting_dg_core::{AlgebraElement, DgPathAlgebra, PathCatalog};
use silting_perf_modules::{cocycles, HomOptions, Morphism, PerfModule};
use silting_quiver_dsl::Path;

use crate::MutationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

/// `f: O -> X` (right) or `g: X -> O` (left), `O` a sum of vertex
/// projectives from the category.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub side: Direction,
    pub object: PerfModule,
    pub map: Morphism,
    /// Every cocycle against a generator factors through the map, up to
    /// coboundaries.
    pub factors: bool,
    /// No summand of `O` can be dropped without losing the factorisation.
    pub minimal: bool,
}

/// Degree-zero paths `from -> to` of length at least one.
fn radical_paths(cat: &PathCatalog, from: usize, to: usize) -> Vec<Path> {
    cat.get(0, from, to).iter().filter(|p| !p.is_trivial()).cloned().collect()
}

fn single(p: &Path, trunc: usize) -> Morphism {
    let mut f = Morphism::zero(0, 1, 1, trunc);
    f.entries[0][0] = AlgebraElement::from_path(p.clone(), trunc);
    f
}

/// Minimal add(cat)-approximation of `x`, built from the top of
/// `Hom(P_j, x)` (right) or `Hom(x, P_j)` (left) over the radical.
pub fn approximate(
    alg: &DgPathAlgebra,
    x: &PerfModule,
    cat: &[usize],
    side: Direction,
    opts: &HomOptions,
) -> Result<Approximation, MutationError> {
    let l = opts.trunc;
    let a = alg.with_trunc(l);
    let x = x.with_trunc(l);
    let paths = PathCatalog::new(&a.quiver, 0, l);
    let proj = |j: usize| PerfModule::projective(j, 0, l);

    // cocycles against every generator, computed once
    let pieces: Vec<_> = cat
        .iter()
        .map(|&j| match side {
            Direction::Right => cocycles(&a, &proj(j), &x, 0, l, opts.exec),
            Direction::Left => cocycles(&a, &x, &proj(j), 0, l, opts.exec),
        })
        .collect();

    let mut object = PerfModule::zero(l);
    let mut chosen: Vec<(usize, Morphism)> = Vec::new();
    for (k, &j) in cat.iter().enumerate() {
        let (hc, z) = &pieces[k];
        let mut ech = z.boundaries.clone();
        // radical part: psi . rho (right) or rho . psi (left)
        for (kk, &jj) in cat.iter().enumerate() {
            let (hc2, z2) = &pieces[kk];
            let rhos = match side {
                Direction::Right => radical_paths(&paths, j, jj),
                Direction::Left => radical_paths(&paths, jj, j),
            };
            for rho in &rhos {
                for zv in &z2.cocycles {
                    let psi = hc2.morphism(0, &z2.basis, zv);
                    let comp = match side {
                        Direction::Right => psi.compose(&single(rho, l)),
                        Direction::Left => single(rho, l).compose(&psi),
                    };
                    let _ = ech.insert(&hc.coords(&comp, &z.basis));
                }
            }
        }
        for zv in &z.cocycles {
            if ech.insert(zv).is_ok() {
                chosen.push((j, hc.morphism(0, &z.basis, zv)));
                object = object.direct_sum(&proj(j));
            }
        }
    }
    // object is sorted by (shift, vertex) = vertex here; match maps to rows
    chosen.sort_by_key(|(j, _)| *j);
    let n = chosen.len();
    let map = match side {
        Direction::Right => {
            let mut f = Morphism::zero(0, x.len(), n, l);
            for (c, (_, m)) in chosen.iter().enumerate() {
                for r in 0..x.len() {
                    f.entries[r][c] = m.entries[r][0].clone();
                }
            }
            f
        }
        Direction::Left => {
            let mut g = Morphism::zero(0, n, x.len(), l);
            for (r, (_, m)) in chosen.iter().enumerate() {
                g.entries[r] = m.entries[0].clone();
            }
            g
        }
    };

    let factors = factors_through(&a, cat, side, &pieces, &object, &map, opts);
    // dropping any one summand of O must break the factorisation
    let minimal = (0..object.len()).all(|k| {
        let keep: Vec<usize> = (0..object.len()).filter(|&c| c != k).collect();
        let o2 = PerfModule {
            summands: keep.iter().map(|&c| object.summands[c]).collect(),
            delta: vec![vec![AlgebraElement::zero(l); keep.len()]; keep.len()],
            trunc: l,
        };
        let m2 = Morphism {
            deg: 0,
            entries: match side {
                Direction::Right => map.entries.iter().map(|row| keep.iter().map(|&c| row[c].clone()).collect()).collect(),
                Direction::Left => keep.iter().map(|&c| map.entries[c].clone()).collect(),
            },
        };
        !factors_through(&a, cat, side, &pieces, &o2, &m2, opts)
    });
    Ok(Approximation {
        side,
        object,
        map,
        factors,
        minimal,
    })
}

type Piece = (silting_perf_modules::HomComplex, silting_perf_modules::Cocycles);

/// Every cocycle `P_j -> x` (or `x -> P_j`) is `map . u` (or `u . map`) up to
/// a coboundary.
#[allow(clippy::too_many_arguments)]
fn factors_through(
    a: &DgPathAlgebra,
    cat: &[usize],
    side: Direction,
    pieces: &[Piece],
    object: &PerfModule,
    map: &Morphism,
    opts: &HomOptions,
) -> bool {
    let l = opts.trunc;
    cat.iter().enumerate().all(|(k, &j)| {
        let (hc, z) = &pieces[k];
        let mut span = z.boundaries.clone();
        let p = PerfModule::projective(j, 0, l);
        let (hco, zo) = match side {
            Direction::Right => cocycles(a, &p, object, 0, l, opts.exec),
            Direction::Left => cocycles(a, object, &p, 0, l, opts.exec),
        };
        for u in &zo.cocycles {
            let u = hco.morphism(0, &zo.basis, u);
            let comp = match side {
                Direction::Right => map.compose(&u),
                Direction::Left => u.compose(map),
            };
            let _ = span.insert(&hc.coords(&comp, &z.basis));
        }
        z.cocycles.iter().all(|v: &SparseVec| span.contains(v))
    })
}
