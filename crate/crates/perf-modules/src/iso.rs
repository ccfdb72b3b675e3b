use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use silting_dg_core::linalg::{dense, SparseVec};
use silting_dg_core::DgPathAlgebra;
use silting_scalars::Scalar;

use crate::hom::{cocycles, HomOptions};
use crate::minimal::minimal_model;
use crate::module::{Morphism, PerfModule};

#[derive(Clone, Debug)]
pub struct IsoResult {
    pub iso: bool,
    pub witness: Option<Morphism>,
    pub reason: String,
}

const TRIES: usize = 12;

/// Isomorphism of minimal perfect modules: equal summand multisets and a
/// closed degree-zero map whose constant part is invertible. Non-minimal
/// input is minimised first.
pub fn iso_test(alg: &DgPathAlgebra, x: &PerfModule, y: &PerfModule, opts: &HomOptions, seed: u64) -> IsoResult {
    let a = alg.with_trunc(opts.trunc);
    let x = minimal_model(&a, &x.with_trunc(opts.trunc));
    let y = minimal_model(&a, &y.with_trunc(opts.trunc));
    if x.summand_multiset() != y.summand_multiset() {
        return IsoResult {
            iso: false,
            witness: None,
            reason: "summand multisets differ".into(),
        };
    }
    if x.is_empty() {
        return IsoResult {
            iso: true,
            witness: Some(Morphism::zero(0, 0, 0, opts.trunc)),
            reason: "both zero".into(),
        };
    }
    let (hc, z) = cocycles(&a, &x, &y, 0, opts.trunc, opts.exec);
    // constant coordinates: (row, col) -> Hom basis index
    let mut constants: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, (r, c, p)) in z.basis.iter().enumerate() {
        if p.is_trivial() && y.summands[*r] == x.summands[*c] {
            constants.insert((*r, *c), k);
        }
    }
    let mut classes: BTreeMap<(usize, i64), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (r, t) in y.summands.iter().enumerate() {
        classes.entry(*t).or_default().0.push(r);
    }
    for (c, t) in x.summands.iter().enumerate() {
        classes.entry(*t).or_default().1.push(c);
    }
    let invertible = |v: &SparseVec| -> bool {
        let coord: BTreeMap<usize, &Scalar> = v.iter().map(|(k, c)| (*k, c)).collect();
        classes.values().all(|(rows, cols)| {
            let m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|r| {
                    cols.iter()
                        .map(|c| {
                            constants
                                .get(&(*r, *c))
                                .and_then(|k| coord.get(k))
                                .map_or_else(Scalar::zero, |s| (*s).clone())
                        })
                        .collect()
                })
                .collect();
            dense::rank(m) == rows.len()
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..TRIES {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for zv in &z.cocycles {
            let lam = if t == 0 { 1 } else { rng.gen_range(-7i64..=7) };
            for (k, c) in zv {
                let e = acc.entry(*k).or_insert_with(Scalar::zero);
                *e += &(c * &Scalar::from_int(lam));
            }
        }
        let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if invertible(&v) {
            return IsoResult {
                iso: true,
                witness: Some(hc.morphism(0, &z.basis, &v)),
                reason: format!("closed map with invertible constant part (try {t})"),
            };
        }
    }
    IsoResult {
        iso: false,
        witness: None,
        reason: format!("no closed map with invertible constant part in {TRIES} random combinations"),
    }
}
