use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use silting_dg_core::linalg::{sv_scale, Echelon, SparseVec};
use silting_dg_core::{AlgebraElement, DgPathAlgebra, PathCatalog};
use silting_quiver_dsl::Path;
use silting_scalars::Scalar;

use crate::hom::cohomology;
use crate::module::PerfModule;
use crate::ModuleError;

/// A finite-dimensional right dg module given on a basis `b_j = b_j e_{v_j}`
/// of degree `d_j`. `d[j]` is `d(b_j)`; `act[a][j]` is `b_j . a`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinDimDgModule {
    pub basis: Vec<(usize, i64)>,
    pub d: Vec<SparseVec>,
    pub act: Vec<Vec<SparseVec>>,
}

fn add_into(acc: &mut BTreeMap<usize, Scalar>, v: &SparseVec, c: &Scalar) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Scalar::zero);
        *e += &(x * c);
    }
}

fn finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

impl FinDimDgModule {
    pub fn zero(n_arrows: usize) -> Self {
        FinDimDgModule {
            basis: Vec::new(),
            d: Vec::new(),
            act: vec![Vec::new(); n_arrows],
        }
    }

    /// The simple `S_v` in degree 0.
    pub fn simple(n_arrows: usize, v: usize) -> Self {
        FinDimDgModule {
            basis: vec![(v, 0)],
            d: vec![Vec::new()],
            act: vec![vec![Vec::new()]; n_arrows],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Sigma^n`: degrees drop by `n`, `d` picks up `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        let s = Scalar::sign(n);
        FinDimDgModule {
            basis: self.basis.iter().map(|&(v, d)| (v, d - n)).collect(),
            d: self.d.iter().map(|x| sv_scale(x, &s)).collect(),
            act: self.act.clone(),
        }
    }

    /// `b_j . p` for a path `p`, leftmost arrow acting first.
    pub fn act_path(&self, j: usize, p: &Path) -> SparseVec {
        if self.basis[j].0 != p.tgt() {
            return Vec::new();
        }
        let mut cur: SparseVec = vec![(j, Scalar::one())];
        for &a in p.arrows.iter() {
            let mut acc = BTreeMap::new();
            for (k, c) in &cur {
                add_into(&mut acc, &self.act[a as usize][*k], c);
            }
            cur = finish(acc);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn act_element(&self, j: usize, x: &AlgebraElement) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (p, c) in x.terms() {
            add_into(&mut acc, &self.act_path(j, p), c);
        }
        finish(acc)
    }

    /// Degree, vertex, `d^2 = 0` and the Leibniz rule
    /// `d(b a) = d(b) a + (-1)^{|b|} b d(a)` on every arrow.
    pub fn check(&self, alg: &DgPathAlgebra) -> Result<(), ModuleError> {
        let q = &alg.quiver;
        let n = self.dim();
        let bad = |m: String| Err(ModuleError::FinDim(m));
        for j in 0..n {
            for (k, _) in &self.d[j] {
                if self.basis[*k].0 != self.basis[j].0 || self.basis[*k].1 != self.basis[j].1 + 1 {
                    return bad(format!("d(b{j}) leaves degree/vertex"));
                }
            }
            let mut dd = BTreeMap::new();
            for (k, c) in &self.d[j] {
                add_into(&mut dd, &self.d[*k], c);
            }
            if !finish(dd).is_empty() {
                return bad(format!("d^2(b{j}) != 0"));
            }
            for a in 0..q.n_arrows() {
                let img = &self.act[a][j];
                let arr = &q.arrows[a];
                for (k, _) in img {
                    if self.basis[j].0 != arr.tgt || self.basis[*k] != (arr.src, self.basis[j].1 + arr.deg) {
                        return bad(format!("b{j}.{} misplaced", arr.name));
                    }
                }
                // d(b a) - d(b) a - (-1)^{|b|} b d(a)
                let mut acc = BTreeMap::new();
                for (k, c) in img {
                    add_into(&mut acc, &self.d[*k], c);
                }
                for (k, c) in &self.d[j] {
                    add_into(&mut acc, &self.act[a][*k], &-c.clone());
                }
                let s = -Scalar::sign(self.basis[j].1);
                let da = AlgebraElement::from_path(Path::arrow(q, a), alg.trunc());
                let da = alg.d_unchecked(&da);
                add_into(&mut acc, &self.act_element(j, &da), &s);
                if !finish(acc).is_empty() {
                    return bad(format!("Leibniz fails at b{j}, arrow {}", arr.name));
                }
            }
        }
        Ok(())
    }

    /// `dim H^p` for every degree present.
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        let mut degs: Vec<i64> = self.basis.iter().map(|b| b.1).collect();
        degs.sort();
        degs.dedup();
        let mut out = BTreeMap::new();
        let local = |p: i64| -> (Vec<usize>, HashMap<usize, usize>) {
            let ids: Vec<usize> = (0..self.dim()).filter(|&j| self.basis[j].1 == p).collect();
            let pos = ids.iter().enumerate().map(|(i, &j)| (j, i)).collect();
            (ids, pos)
        };
        for &p in &degs {
            let (im1, _) = local(p - 1);
            let (i0, pos0) = local(p);
            let (_, pos1) = local(p + 1);
            let remap = |v: &SparseVec, pos: &HashMap<usize, usize>| -> SparseVec {
                let mut w: SparseVec = v.iter().map(|(k, c)| (pos[k], c.clone())).collect();
                w.sort_by_key(|x| x.0);
                w
            };
            let prev: Vec<SparseVec> = im1.iter().map(|&j| remap(&self.d[j], &pos0)).collect();
            let cur: Vec<SparseVec> = i0.iter().map(|&j| remap(&self.d[j], &pos1)).collect();
            let h = cohomology(&prev, &cur, i0.len(), false).0;
            if h > 0 {
                out.insert(p, h);
            }
        }
        out
    }

    /// `X / X m^{L+1}` restricted to degrees `>= s`, divided by `ker d^s`:
    /// the brutal-then-smart truncation `tau_{>= s+1}` of the truncated
    /// module.
    pub fn from_perfect_above(alg: &DgPathAlgebra, x: &PerfModule, s: i64, trunc: usize) -> Self {
        let a = alg.with_trunc(trunc);
        let q = &a.quiver;
        let x = x.with_trunc(trunc);
        let top = -x.min_shift().unwrap_or(0);
        let cat = PathCatalog::new(q, (s - top).min(0), trunc);
        // raw basis: g_c p of degree -s_c + |p| >= s
        let mut raw: Vec<(usize, Path)> = Vec::new();
        for (c, &(v, sc)) in x.summands.iter().enumerate() {
            for g in (s + sc).min(1)..=0 {
                for w in 0..q.n_vertices() {
                    for p in cat.get(g, w, v) {
                        raw.push((c, p.clone()));
                    }
                }
            }
        }
        let idx: HashMap<(usize, Path), usize> = raw.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let deg = |k: usize| -> i64 { -x.summands[raw[k].0].1 + raw[k].1.degree(q) };
        let vec_of = |c: usize, e: &AlgebraElement| -> SparseVec {
            let mut v: SparseVec = e
                .terms()
                .filter_map(|(p, x)| idx.get(&(c, p.clone())).map(|&k| (k, x.clone())))
                .collect();
            v.sort_by_key(|t| t.0);
            v
        };
        // d(g_c p) = sum_q g_q delta_qc p + (-1)^{s_c} g_c d(p)
        let dvec = |k: usize| -> SparseVec {
            let (c, p) = &raw[k];
            let mut acc = BTreeMap::new();
            let pe = AlgebraElement::from_path(p.clone(), trunc);
            for qq in 0..x.len() {
                if !x.delta[qq][*c].is_zero() {
                    add_into(&mut acc, &vec_of(qq, &x.delta[qq][*c].mul(&pe)), &Scalar::one());
                }
            }
            add_into(&mut acc, &vec_of(*c, &a.d_unchecked(&pe)), &Scalar::sign(x.summands[*c].1));
            finish(acc)
        };
        let raw_d: Vec<SparseVec> = (0..raw.len()).map(dvec).collect();
        // quotient by ker d^s: keep degree > s, and replace degree s by its image
        let low: Vec<usize> = (0..raw.len()).filter(|&k| deg(k) == s).collect();
        let mut ech = Echelon::tracked();
        let mut kept_low = Vec::new();
        for &k in &low {
            if ech.insert(&raw_d[k]).is_ok() {
                kept_low.push(k);
            }
        }
        let high: Vec<usize> = (0..raw.len()).filter(|&k| deg(k) > s).collect();
        let mut order = kept_low.clone();
        order.extend_from_slice(&high);
        let newpos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        // a degree-s vector is known through its image: reduce modulo ker d^s
        let project = |v: &SparseVec| -> SparseVec {
            let mut acc = BTreeMap::new();
            let mut lowpart: SparseVec = Vec::new();
            for (k, c) in v {
                if deg(*k) == s {
                    lowpart.push((*k, c.clone()));
                } else if let Some(&i) = newpos.get(k) {
                    acc.insert(i, c.clone());
                }
            }
            if !lowpart.is_empty() {
                let mut img = BTreeMap::new();
                for (k, c) in &lowpart {
                    add_into(&mut img, &raw_d[*k], c);
                }
                let img = finish(img);
                let r = ech.reduce(&img);
                debug_assert!(r.rem.is_empty());
                for (i, c) in r.combo {
                    acc.insert(i, c);
                }
            }
            finish(acc)
        };
        let basis: Vec<(usize, i64)> = order.iter().map(|&k| (raw[k].1.src(), deg(k))).collect();
        let d: Vec<SparseVec> = order.iter().map(|&k| project(&raw_d[k])).collect();
        let mut act = vec![Vec::new(); q.n_arrows()];
        for (ar, slot) in act.iter_mut().enumerate() {
            let ap = Path::arrow(q, ar);
            for &k in &order {
                let (c, p) = &raw[k];
                let v = match p.compose(&ap) {
                    Some(pa) if pa.len() <= trunc => idx
                        .get(&(*c, pa))
                        .map(|&j| vec![(j, Scalar::one())])
                        .unwrap_or_default(),
                    _ => Vec::new(),
                };
                slot.push(project(&v));
            }
        }
        FinDimDgModule { basis, d, act }
    }
}
