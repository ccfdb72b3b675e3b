use num_traits::One;
use serde::Serialize;
use silting_dg_core::{AlgebraElement, DgPathAlgebra, UNTRUNCATED};
use silting_quiver_dsl::{special_loops, Ambient, GradedQuiver, Path, Superpotential};
use silting_scalars::Scalar;
use thiserror::Error;

use crate::derivative::{cyclic_derivative_words, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("arrow `{0}` has degree outside [-m, 0]")]
    DegreeRange(String),
    #[error("potential term {0} is not a cycle")]
    NotCyclic(usize),
    #[error("potential term {0} has degree {1}, expected {2}")]
    Inhomogeneous(usize, i64, i64),
    #[error("potential term {0} has length below 3")]
    NotReduced(usize),
    #[error("a Ginzburg potential may only use arrows of Q (term {0} has a dual letter)")]
    DualLetter(usize),
    #[error("d^2 != 0 on `{arrow}`: {residual} ({{W,W}} != 0 obstruction)")]
    DSquared { arrow: String, residual: String },
    #[error("m must be positive")]
    BadM,
}

/// A Ginzburg or deformed preprojective dg algebra together with the
/// bookkeeping of how its arrows arose.
#[derive(Clone, Debug)]
pub struct DoubledAlgebra {
    pub base: GradedQuiver,
    pub m: i64,
    pub kind: Ambient,
    pub potential: Superpotential,
    /// `dual[a]` is the arrow `a*` of the triple quiver; equal to `a` for
    /// self-dual special loops.
    pub dual: Vec<usize>,
    /// `t[i]` is the loop `t_i`.
    pub t: Vec<usize>,
    pub alg: DgPathAlgebra,
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialTable {
    pub kind: Ambient,
    pub m: i64,
    pub arrows: Vec<ArrowRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowRow {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
    pub d: String,
}

impl DoubledAlgebra {
    pub fn quiver(&self) -> &GradedQuiver {
        &self.alg.quiver
    }

    /// `W` with letters resolved to arrows of the triple quiver.
    pub fn words(&self) -> Vec<Word> {
        resolve(&self.potential, &self.dual)
    }

    pub fn cyclic_derivative(&self, x: usize) -> AlgebraElement {
        cyclic_derivative_words(self.quiver(), &self.words(), x)
    }

    pub fn is_t_loop(&self, a: usize) -> bool {
        self.t.contains(&a)
    }

    pub fn table(&self) -> DifferentialTable {
        let q = self.quiver();
        DifferentialTable {
            kind: self.kind,
            m: self.m,
            arrows: q
                .arrows
                .iter()
                .enumerate()
                .map(|(k, a)| ArrowRow {
                    name: a.name.clone(),
                    src: q.vertices[a.src].clone(),
                    tgt: q.vertices[a.tgt].clone(),
                    deg: a.deg,
                    d: self.alg.d_arrow(k).display(q),
                })
                .collect(),
        }
    }
}

pub(crate) fn resolve(w: &Superpotential, dual: &[usize]) -> Vec<Word> {
    w.terms
        .iter()
        .map(|t| {
            let letters = t
                .word
                .iter()
                .map(|l| if l.star { dual[l.arrow] } else { l.arrow })
                .collect();
            (t.coeff.clone(), letters)
        })
        .collect()
}

fn t_name(q: &GradedQuiver, v: usize) -> String {
    let mut name = if q.n_vertices() == 1 {
        "t".to_string()
    } else {
        format!("t_{}", q.vertices[v])
    };
    while q.arrow_index(&name).is_some() {
        name.push('\'');
    }
    name
}

fn check_inputs(q: &GradedQuiver, w: &Superpotential, m: i64, dual: &[usize], triple: &GradedQuiver) -> Result<(), BuildError> {
    if m <= 0 {
        return Err(BuildError::BadM);
    }
    if let Some(a) = q.arrows.iter().find(|a| a.deg > 0 || a.deg < -m) {
        return Err(BuildError::DegreeRange(a.name.clone()));
    }
    for (k, (_, word)) in resolve(w, dual).iter().enumerate() {
        let Some(p) = Path::from_arrows(triple, word) else {
            return Err(BuildError::NotCyclic(k));
        };
        if !p.is_cycle() {
            return Err(BuildError::NotCyclic(k));
        }
        let d = p.degree(triple);
        if d != 1 - m {
            return Err(BuildError::Inhomogeneous(k, d, 1 - m));
        }
        if word.len() < 3 {
            return Err(BuildError::NotReduced(k));
        }
    }
    Ok(())
}

/// Adds duals (except for `self_dual` arrows) and the loops `t_i`.
fn triple_quiver(q: &GradedQuiver, m: i64, self_dual: &[usize]) -> (GradedQuiver, Vec<usize>, Vec<usize>) {
    let mut tq = q.clone();
    let mut dual = Vec::with_capacity(q.n_arrows());
    for (k, a) in q.arrows.iter().enumerate() {
        if self_dual.contains(&k) {
            dual.push(k);
        } else {
            dual.push(tq.add_arrow(format!("{}*", a.name), a.tgt, a.src, -m - a.deg));
        }
    }
    let t = (0..q.n_vertices())
        .map(|v| {
            let name = t_name(&tq, v);
            tq.add_arrow(name, v, v, -m - 1)
        })
        .collect();
    (tq, dual, t)
}

/// `e_i (sum_a [a, a*]) e_i` with `[a, a*] = a a* - (-1)^{|a||a*|} a* a`.
fn d_t(tq: &GradedQuiver, base: &GradedQuiver, dual: &[usize], i: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(UNTRUNCATED);
    for (a, ar) in base.arrows.iter().enumerate() {
        let s = dual[a];
        let sign = if (ar.deg * tq.arrows[s].deg).rem_euclid(2) == 0 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        if ar.tgt == i {
            out.add_term(Path::from_arrows(tq, &[a, s]).unwrap(), Scalar::one());
        }
        if ar.src == i {
            out.add_term(Path::from_arrows(tq, &[s, a]).unwrap(), sign);
        }
    }
    out
}

fn sign(e: i64) -> Scalar {
    Scalar::sign(e)
}

fn finish(
    base: &GradedQuiver,
    w: &Superpotential,
    m: i64,
    kind: Ambient,
    tq: GradedQuiver,
    dual: Vec<usize>,
    t: Vec<usize>,
    darr: Vec<AlgebraElement>,
) -> Result<DoubledAlgebra, BuildError> {
    let alg = DgPathAlgebra::new(tq, darr, UNTRUNCATED).expect("differential table is graded by construction");
    if let Err((a, res)) = alg.check_d_squared() {
        return Err(BuildError::DSquared {
            arrow: alg.quiver.arrows[a].name.clone(),
            residual: res.display(&alg.quiver),
        });
    }
    Ok(DoubledAlgebra {
        base: base.clone(),
        m,
        kind,
        potential: w.clone(),
        dual,
        t,
        alg,
    })
}

/// The Ginzburg dg algebra: `d(a) = 0`, `d(a*) = (-1)^{|a|} dW/da`,
/// `d(t_i) = e_i (sum [a, a*]) e_i`.
pub fn ginzburg(q: &GradedQuiver, w: &Superpotential, m: i64) -> Result<DoubledAlgebra, BuildError> {
    let (tq, dual, t) = triple_quiver(q, m, &[]);
    check_inputs(q, w, m, &dual, &tq)?;
    if let Some(k) = w.terms.iter().position(|t| t.word.iter().any(|l| l.star)) {
        return Err(BuildError::DualLetter(k));
    }
    let words = resolve(w, &dual);
    let mut darr = vec![AlgebraElement::zero(UNTRUNCATED); tq.n_arrows()];
    for (a, ar) in q.arrows.iter().enumerate() {
        darr[dual[a]] = cyclic_derivative_words(&tq, &words, a).scale(&sign(ar.deg));
    }
    for (i, &ti) in t.iter().enumerate() {
        darr[ti] = d_t(&tq, q, &dual, i);
    }
    finish(q, w, m, Ambient::GinzburgDouble, tq, dual, t, darr)
}

/// The deformed preprojective dg algebra: special loops are self-dual,
/// `da = (-1)^{(|a|+1)|a*|} dW/da*`, `da* = (-1)^{|a|+1} dW/da`.
pub fn preprojective(q: &GradedQuiver, w: &Superpotential, m: i64) -> Result<DoubledAlgebra, BuildError> {
    let special = special_loops(q, m);
    let (tq, dual, t) = triple_quiver(q, m, &special);
    check_inputs(q, w, m, &dual, &tq)?;
    let words = resolve(w, &dual);
    let mut darr = vec![AlgebraElement::zero(UNTRUNCATED); tq.n_arrows()];
    for (a, ar) in q.arrows.iter().enumerate() {
        let s = dual[a];
        let ds = tq.arrows[s].deg;
        let da = cyclic_derivative_words(&tq, &words, s).scale(&sign((ar.deg + 1) * ds));
        let dstar = cyclic_derivative_words(&tq, &words, a).scale(&sign(ar.deg + 1));
        if s == a {
            assert_eq!(da, dstar, "the two formulas for a self-dual loop disagree");
        } else {
            darr[s] = dstar;
        }
        darr[a] = da;
    }
    for (i, &ti) in t.iter().enumerate() {
        darr[ti] = d_t(&tq, q, &dual, i);
    }
    finish(q, w, m, Ambient::PreprojectiveDouble, tq, dual, t, darr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use silting_quiver_dsl::parse;

    fn build(src: &str, g: bool) -> DoubledAlgebra {
        let m = parse(src).unwrap();
        if g {
            ginzburg(&m.quiver, &m.potential, m.m).unwrap()
        } else {
            preprojective(&m.quiver, &m.potential, m.m).unwrap()
        }
    }

    const ONE_LOOP: &str = "m 2\nvertex •\narrow a: • -> • deg -1\n";

    #[test]
    fn one_loop_ginzburg() {
        let g = build(ONE_LOOP, true);
        let q = g.quiver();
        assert_eq!(q.n_arrows(), 3);
        assert_eq!(q.arrows[1].deg, -1);
        assert_eq!(q.arrows[2].deg, -3);
        assert!(g.alg.d_arrow(0).is_zero() && g.alg.d_arrow(1).is_zero());
        assert_eq!(g.alg.d_arrow(2).display(q), "1*(a a*) + 1*(a* a)");
    }

    #[test]
    fn one_loop_preprojective() {
        let p = build(ONE_LOOP, false);
        let q = p.quiver();
        assert_eq!(q.n_arrows(), 2);
        assert_eq!(p.alg.d_arrow(1).display(q), "2*(a a)");
    }

    #[test]
    fn a2_ginzburg() {
        let g = build("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n", true);
        let q = g.quiver();
        assert_eq!(q.arrows[1].name, "a*");
        assert_eq!((q.arrows[1].src, q.arrows[1].tgt, q.arrows[1].deg), (1, 0, -1));
        assert_eq!(g.alg.d_arrow(g.t[0]).display(q), "-1*(a* a)");
        assert_eq!(g.alg.d_arrow(g.t[1]).display(q), "1*(a a*)");
    }

    #[test]
    fn isolated_vertex() {
        let g = build("m 1\nvertex 1\n", true);
        assert_eq!(g.quiver().n_arrows(), 1);
        assert!(g.alg.d_arrow(0).is_zero());
    }

    #[test]
    fn two_loops_preprojective() {
        let p = build("m 2\nvertex x\narrow α: x -> x deg -1\narrow β: x -> x deg -1\n", false);
        assert_eq!(p.alg.d_arrow(p.t[0]).display(p.quiver()), "2*(α α) + 2*(β β)");
    }

    #[test]
    fn triangle_with_potential() {
        let src = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\npotential 1*(c b a)\n";
        let g = build(src, true);
        let q = g.quiver();
        // d(a*) = dW/da = c b
        assert_eq!(g.alg.d_arrow(g.dual[0]).display(q), "1*(c b)");
        assert_eq!(g.alg.d_arrow(g.dual[1]).display(q), "1*(a c)");
    }

    #[test]
    fn rejects_bad_input() {
        let m = parse("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\npotential 1*(a b)\n").unwrap();
        assert!(matches!(ginzburg(&m.quiver, &m.potential, 1), Err(BuildError::NotReduced(0))));
        assert!(matches!(ginzburg(&m.quiver, &m.potential, 2), Err(BuildError::Inhomogeneous(0, 0, -1))));
        let m = parse("m 1\nvertex 1\narrow a: 1 -> 1 deg -2\n").unwrap();
        assert!(matches!(ginzburg(&m.quiver, &m.potential, 1), Err(BuildError::DegreeRange(_))));
    }
}
