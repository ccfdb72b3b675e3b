use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use silting_dg_core::{AlgebraElement, DgPathAlgebra};
use silting_quiver_dsl::{GradedQuiver, Path};
use silting_scalars::Scalar;

use crate::ModuleError;

/// A perfect dg module `X = (+)_r g_r A` on generators `g_r` at vertex `i_r`
/// with shift `s_r` (so `g_r` has degree `-s_r`), and differential
/// `d(g_c a) = sum_q g_q delta_qc a + (-1)^{s_c} g_c d(a)`.
///
/// `delta_qc` lies in `e_{i_q} A e_{i_c}` with degree `1 + s_q - s_c`; nonzero
/// entries therefore need `s_c > s_q`, and with summands sorted by
/// nondecreasing shift `delta` is strictly upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfModule {
    pub summands: Vec<(usize, i64)>,
    pub delta: Vec<Vec<AlgebraElement>>,
    pub trunc: usize,
}

/// A degree-`deg` map `X -> Z`: `phi(g_c) = sum_r g_r entries[r][c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub deg: i64,
    pub entries: Vec<Vec<AlgebraElement>>,
}

impl Morphism {
    pub fn zero(deg: i64, rows: usize, cols: usize, trunc: usize) -> Self {
        Morphism {
            deg,
            entries: vec![vec![AlgebraElement::zero(trunc); cols]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// `self . rhs`, `rhs` applied first.
    pub fn compose(&self, rhs: &Morphism) -> Morphism {
        let trunc = self
            .entries
            .iter()
            .flatten()
            .chain(rhs.entries.iter().flatten())
            .map(|e| e.trunc())
            .min()
            .unwrap_or(usize::MAX);
        let mut out = Morphism::zero(self.deg + rhs.deg, self.rows(), rhs.cols(), trunc);
        for r in 0..self.rows() {
            for c in 0..rhs.cols() {
                for q in 0..self.cols() {
                    if self.entries[r][q].is_zero() || rhs.entries[q][c].is_zero() {
                        continue;
                    }
                    let p = self.entries[r][q].mul(&rhs.entries[q][c]);
                    out.entries[r][c] = out.entries[r][c].add(&p);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            deg: self.deg,
            entries: self.entries.iter().map(|row| row.iter().map(|e| e.scale(c)).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.deg, other.deg);
        Morphism {
            deg: self.deg,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        }
    }

    pub fn display(&self, q: &GradedQuiver) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.display(q)).collect())
            .collect()
    }
}

impl PerfModule {
    pub fn zero(trunc: usize) -> Self {
        PerfModule {
            summands: Vec::new(),
            delta: Vec::new(),
            trunc,
        }
    }

    /// `Sigma^shift e_v A`.
    pub fn projective(v: usize, shift: i64, trunc: usize) -> Self {
        PerfModule {
            summands: vec![(v, shift)],
            delta: vec![vec![AlgebraElement::zero(trunc)]],
            trunc,
        }
    }

    /// The free module `A = (+)_v e_v A`.
    pub fn free(q: &GradedQuiver, trunc: usize) -> Self {
        let mut x = PerfModule::zero(trunc);
        for v in 0..q.n_vertices() {
            x = x.direct_sum(&PerfModule::projective(v, 0, trunc));
        }
        x
    }

    /// Builds and validates, then sorts summands by (shift, vertex).
    pub fn new(
        alg: &DgPathAlgebra,
        summands: Vec<(usize, i64)>,
        delta: Vec<Vec<AlgebraElement>>,
        trunc: usize,
    ) -> Result<Self, ModuleError> {
        let x = PerfModule { summands, delta, trunc };
        x.check_shape(alg)?;
        x.check_d_squared(alg)?;
        Ok(x.sorted())
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        PerfModule {
            summands: self.summands.clone(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|e| e.clone().with_trunc(trunc)).collect())
                .collect(),
            trunc,
        }
    }

    /// Expected degree of entry `(r, c)`.
    pub fn entry_degree(&self, r: usize, c: usize) -> i64 {
        1 + self.summands[r].1 - self.summands[c].1
    }

    pub fn check_shape(&self, alg: &DgPathAlgebra) -> Result<(), ModuleError> {
        let n = self.len();
        if self.delta.len() != n || self.delta.iter().any(|row| row.len() != n) {
            return Err(ModuleError::Shape(n));
        }
        for (v, _) in &self.summands {
            if *v >= alg.quiver.n_vertices() {
                return Err(ModuleError::Vertex(*v));
            }
        }
        for r in 0..n {
            for c in 0..n {
                let e = &self.delta[r][c];
                let want = self.entry_degree(r, c);
                for (p, _) in e.terms() {
                    if p.src() != self.summands[c].0 || p.tgt() != self.summands[r].0 {
                        return Err(ModuleError::Endpoints(r, c));
                    }
                    if p.degree(&alg.quiver) != want {
                        return Err(ModuleError::EntryDegree { r, c, want, got: p.degree(&alg.quiver) });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(delta delta)_qc + (-1)^{s_q} d(delta_qc)`, first nonzero.
    pub fn check_d_squared(&self, alg: &DgPathAlgebra) -> Result<(), ModuleError> {
        let n = self.len();
        let a = alg.with_trunc(alg.trunc().min(self.trunc));
        for q in 0..n {
            for c in 0..n {
                let mut acc = a.d_unchecked(&self.delta[q][c]);
                if self.summands[q].1 % 2 != 0 {
                    acc = acc.neg();
                }
                for p in 0..n {
                    if !self.delta[q][p].is_zero() && !self.delta[p][c].is_zero() {
                        acc = acc.add(&self.delta[q][p].mul(&self.delta[p][c]));
                    }
                }
                if !acc.is_zero() {
                    return Err(ModuleError::DSquared {
                        r: q,
                        c,
                        residual: acc.display(&alg.quiver),
                    });
                }
            }
        }
        Ok(())
    }

    /// Entries all in the arrow ideal.
    pub fn is_minimal(&self) -> bool {
        self.delta.iter().flatten().all(|e| e.constant_terms().is_empty())
    }

    /// Stable sort by (shift, vertex); returns the module.
    pub fn sorted(self) -> Self {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&k| (self.summands[k].1, self.summands[k].0));
        self.permuted(&perm)
    }

    /// New summand `k` is old summand `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        PerfModule {
            summands: perm.iter().map(|&k| self.summands[k]).collect(),
            delta: perm
                .iter()
                .map(|&r| perm.iter().map(|&c| self.delta[r][c].clone()).collect())
                .collect(),
            trunc: self.trunc,
        }
    }

    /// `Sigma^n`: shifts go up by `n`, `delta` picks up `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        let s = Scalar::sign(n);
        PerfModule {
            summands: self.summands.iter().map(|&(v, t)| (v, t + n)).collect(),
            delta: self.delta.iter().map(|row| row.iter().map(|e| e.scale(&s)).collect()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn direct_sum(&self, other: &PerfModule) -> Self {
        let (n, m) = (self.len(), other.len());
        let trunc = self.trunc.min(other.trunc);
        let mut delta = vec![vec![AlgebraElement::zero(trunc); n + m]; n + m];
        for r in 0..n {
            for c in 0..n {
                delta[r][c] = self.delta[r][c].clone();
            }
        }
        for r in 0..m {
            for c in 0..m {
                delta[n + r][n + c] = other.delta[r][c].clone();
            }
        }
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        PerfModule { summands, delta, trunc }.sorted()
    }

    /// `D(f) = delta^Z f + (-1)^{s_r} d(f_rc) - (-1)^n f delta^X` for `f: self -> z`.
    pub fn hom_differential(&self, alg: &DgPathAlgebra, z: &PerfModule, f: &Morphism) -> Morphism {
        let (rows, cols) = (z.len(), self.len());
        let trunc = self.trunc.min(z.trunc).min(alg.trunc());
        let a = alg.with_trunc(trunc);
        let mut out = Morphism::zero(f.deg + 1, rows, cols, trunc);
        let sn = Scalar::sign(f.deg + 1);
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = a.d_unchecked(&f.entries[r][c]);
                if z.summands[r].1 % 2 != 0 {
                    acc = acc.neg();
                }
                for q in 0..rows {
                    if !z.delta[r][q].is_zero() && !f.entries[q][c].is_zero() {
                        acc = acc.add(&z.delta[r][q].mul(&f.entries[q][c]));
                    }
                }
                for q in 0..cols {
                    if !f.entries[r][q].is_zero() && !self.delta[q][c].is_zero() {
                        acc.add_scaled(&f.entries[r][q].mul(&self.delta[q][c]), &sn);
                    }
                }
                out.entries[r][c] = acc.with_trunc(trunc);
            }
        }
        out
    }

    pub fn identity(&self) -> Morphism {
        let mut f = Morphism::zero(0, self.len(), self.len(), self.trunc);
        for (k, &(v, _)) in self.summands.iter().enumerate() {
            f.entries[k][k] = AlgebraElement::idempotent(v, self.trunc);
        }
        f
    }

    /// `cone(f: self -> y)` on `y (+) Sigma self`.
    pub fn cone(&self, alg: &DgPathAlgebra, y: &PerfModule, f: &Morphism) -> Result<Self, ModuleError> {
        if f.deg != 0 || f.rows() != y.len() || (!y.is_empty() && f.cols() != self.len()) {
            return Err(ModuleError::Shape(self.len()));
        }
        let df = self.hom_differential(alg, y, f);
        if !df.is_zero() {
            let (r, c) = first_nonzero(&df);
            return Err(ModuleError::NotClosed {
                r,
                c,
                residual: df.entries[r][c].display(&alg.quiver),
            });
        }
        let (n, m) = (y.len(), self.len());
        let trunc = self.trunc.min(y.trunc);
        let mut delta = vec![vec![AlgebraElement::zero(trunc); n + m]; n + m];
        for r in 0..n {
            for c in 0..n {
                delta[r][c] = y.delta[r][c].clone();
            }
            for c in 0..m {
                delta[r][n + c] = f.entries[r][c].clone();
            }
        }
        for r in 0..m {
            for c in 0..m {
                delta[n + r][n + c] = self.delta[r][c].neg();
            }
        }
        let mut summands = y.summands.clone();
        summands.extend(self.summands.iter().map(|&(v, s)| (v, s + 1)));
        let out = PerfModule { summands, delta, trunc };
        debug_assert!(out.check_d_squared(alg).is_ok());
        Ok(out.sorted())
    }

    /// `Sigma^{-1} cone(f)`.
    pub fn cocone(&self, alg: &DgPathAlgebra, y: &PerfModule, f: &Morphism) -> Result<Self, ModuleError> {
        Ok(self.cone(alg, y, f)?.shift(-1))
    }

    /// Set of shifts; equals the support when the module is minimal.
    pub fn support(&self) -> BTreeSet<i64> {
        self.summands.iter().map(|&(_, s)| s).collect()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.summands.iter().map(|&(_, s)| s).min()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.summands.iter().map(|&(_, s)| s).max()
    }

    /// Number of summands `Sigma^s e_v A`.
    pub fn multiplicity(&self, v: usize, s: i64) -> usize {
        self.summands.iter().filter(|&&x| x == (v, s)).count()
    }

    /// Summands printed as `Σ^s P_v`.
    pub fn display_summands(&self, q: &GradedQuiver) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(|&(v, s)| match s {
                0 => format!("P_{}", q.vertices[v]),
                1 => format!("ΣP_{}", q.vertices[v]),
                _ => format!("Σ^{}P_{}", s, q.vertices[v]),
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    pub fn to_json(&self, q: &GradedQuiver) -> Value {
        json!({
            "summands": self.summands.iter().map(|&(v, s)| json!([q.vertices[v], s])).collect::<Vec<_>>(),
            "delta": self.delta.iter().map(|row| row.iter().map(|e| e.display(q)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`to_json`](Self::to_json); entries use the element
    /// notation `c*(a b) + ...`, `0` for zero and `@v` for `e_v`.
    pub fn from_json(alg: &DgPathAlgebra, v: &Value, trunc: usize) -> Result<Self, ModuleError> {
        let q = &alg.quiver;
        let bad = |m: &str| ModuleError::Json(m.to_string());
        let summands = v["summands"]
            .as_array()
            .ok_or_else(|| bad("missing summands"))?
            .iter()
            .map(|s| {
                let name = s[0].as_str().ok_or_else(|| bad("summand vertex"))?;
                let vtx = q.vertex_index(name).ok_or_else(|| bad(&format!("unknown vertex {name}")))?;
                let sh = s[1].as_i64().ok_or_else(|| bad("summand shift"))?;
                Ok((vtx, sh))
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        let n = summands.len();
        let delta = match v.get("delta") {
            None | Some(Value::Null) => vec![vec![AlgebraElement::zero(trunc); n]; n],
            Some(d) => d
                .as_array()
                .ok_or_else(|| bad("delta"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| bad("delta row"))?
                        .iter()
                        .map(|e| parse_element(q, e.as_str().ok_or_else(|| bad("delta entry"))?, trunc))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        PerfModule::new(alg, summands, delta, trunc)
    }

    /// Maps `Sigma^s e_v A` summands to a `(vertex, shift)` multiset, sorted.
    pub fn summand_multiset(&self) -> Vec<(usize, i64)> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }
}

pub(crate) fn first_nonzero(f: &Morphism) -> (usize, usize) {
    for (r, row) in f.entries.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !e.is_zero() {
                return (r, c);
            }
        }
    }
    (0, 0)
}

/// Parses `2*(a b) + -1*(c) + 1*(@v)`; `0` is the zero element.
pub fn parse_element(q: &GradedQuiver, s: &str, trunc: usize) -> Result<AlgebraElement, ModuleError> {
    let bad = |m: String| ModuleError::Json(m);
    let mut out = AlgebraElement::zero(trunc);
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(out);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(|| bad(format!("expected '(' in {s}")))?;
        let close = rest.find(')').ok_or_else(|| bad(format!("expected ')' in {s}")))?;
        let coeff = rest[..open].trim().trim_start_matches('+').trim().trim_end_matches('*').trim();
        let c: Scalar = if coeff.is_empty() {
            Scalar::one()
        } else if coeff == "-" {
            -Scalar::one()
        } else {
            coeff.parse().map_err(|_| bad(format!("bad coefficient {coeff}")))?
        };
        let body = rest[open + 1..close].trim();
        let p = if let Some(v) = body.strip_prefix('@') {
            Path::trivial(q.vertex_index(v).ok_or_else(|| bad(format!("unknown vertex {v}")))?)
        } else {
            let arrows = body
                .split_whitespace()
                .map(|a| q.arrow_index(a).ok_or_else(|| bad(format!("unknown arrow {a}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Path::from_arrows(q, &arrows).ok_or_else(|| bad(format!("arrows do not compose: {body}")))?
        };
        if !c.is_zero() {
            out.add_term(p, c);
        }
        rest = rest[close + 1..].trim();
    }
    Ok(out)
}
