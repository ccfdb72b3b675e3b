use num_traits::One;
use serde::Serialize;
use silting_dg_core::{AlgebraElement, DgPathAlgebra, UNTRUNCATED};
use silting_quiver_dsl::{special_loops, Ambient, GradedQuiver, Letter, Superpotential, Term};
use silting_scalars::Scalar;

use crate::build::{preprojective, BuildError, DoubledAlgebra};

/// Algebra map given on arrows: arrow `k` of the source goes to `images[k]`.
#[derive(Clone, Debug)]
pub struct ArrowMap {
    pub images: Vec<AlgebraElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMapReport {
    pub commutes: bool,
    /// `(arrow, iota(d x) - d(iota x))` for each failing generator.
    pub failures: Vec<(String, String)>,
    pub images: Vec<(String, String)>,
}

impl ArrowMap {
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(x.trunc());
        for (p, c) in x.terms() {
            let mut acc: Option<AlgebraElement> = None;
            for &a in p.arrows.iter() {
                let img = &self.images[a as usize];
                acc = Some(match acc {
                    None => img.clone(),
                    Some(y) => y.mul(img),
                });
            }
            match acc {
                Some(y) => out.add_scaled(&y, c),
                None => out.add_term(p.clone(), c.clone()),
            }
        }
        out
    }

    /// Compares `iota(d x)` with `d(iota x)` on every arrow of the source.
    pub fn check(&self, src: &DgPathAlgebra, tgt: &DgPathAlgebra) -> ChainMapReport {
        let mut failures = Vec::new();
        for k in 0..src.quiver.n_arrows() {
            let lhs = self.apply(src.d_arrow(k));
            let rhs = tgt.d_unchecked(&self.images[k]);
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                failures.push((src.quiver.arrows[k].name.clone(), diff.display(&tgt.quiver)));
            }
        }
        ChainMapReport {
            commutes: failures.is_empty(),
            failures,
            images: (0..src.quiver.n_arrows())
                .map(|k| {
                    (
                        src.quiver.arrows[k].name.clone(),
                        self.images[k].display(&tgt.quiver),
                    )
                })
                .collect(),
        }
    }
}

fn arrow_el(q: &GradedQuiver, a: usize, c: Scalar) -> AlgebraElement {
    AlgebraElement::arrow(q, a, UNTRUNCATED).scale(&c)
}

/// Replaces letters of `w` by linear combinations of letters of a new base
/// quiver, expanding products.
fn substitute_potential(w: &Superpotential, img: impl Fn(Letter) -> Vec<(Letter, Scalar)>) -> Superpotential {
    let mut terms = Vec::new();
    for t in &w.terms {
        let mut partial: Vec<(Vec<Letter>, Scalar)> = vec![(Vec::new(), t.coeff.clone())];
        for &l in &t.word {
            let opts = img(l);
            partial = partial
                .iter()
                .flat_map(|(word, c)| {
                    opts.iter().map(move |(nl, x)| {
                        let mut nw = word.clone();
                        nw.push(*nl);
                        (nw, c * x)
                    })
                })
                .collect();
        }
        terms.extend(partial.into_iter().map(|(word, coeff)| Term { coeff, word }));
    }
    Superpotential { terms }
}

#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub target: DoubledAlgebra,
    pub map: ArrowMap,
    pub report: ChainMapReport,
}

/// Doubles every special loop `a` into `a'`, `a''` and maps `a` to
/// `a' + a'' i`, `a*` to `a' - a'' i`, landing in `Pi(Q', m+2, -W')`.
pub fn ginzburg_to_dpp(g: &DoubledAlgebra) -> Result<Isomorphism, BuildError> {
    assert_eq!(g.kind, Ambient::GinzburgDouble);
    let q = &g.base;
    let m = g.m;
    let special = special_loops(q, m);
    let mut q2 = GradedQuiver::new(q.vertices.clone());
    // new index of each ordinary arrow, and of (a', a'') for special loops
    let mut plain = vec![usize::MAX; q.n_arrows()];
    let mut split = vec![(usize::MAX, usize::MAX); q.n_arrows()];
    for (k, a) in q.arrows.iter().enumerate() {
        if special.contains(&k) {
            let p = q2.add_arrow(format!("{}'", a.name), a.src, a.tgt, a.deg);
            let pp = q2.add_arrow(format!("{}''", a.name), a.src, a.tgt, a.deg);
            split[k] = (p, pp);
        } else {
            plain[k] = q2.add_arrow(a.name.clone(), a.src, a.tgt, a.deg);
        }
    }
    let i = Scalar::i();
    let one = Scalar::one();
    let w2 = substitute_potential(&g.potential, |l| {
        if special.contains(&l.arrow) {
            let (p, pp) = split[l.arrow];
            let s = if l.star { -i.clone() } else { i.clone() };
            vec![(Letter::plain(p), one.clone()), (Letter::plain(pp), s)]
        } else {
            vec![(Letter { arrow: plain[l.arrow], star: l.star }, one.clone())]
        }
    });
    let neg = Superpotential {
        terms: w2
            .terms
            .into_iter()
            .map(|t| Term {
                coeff: -t.coeff,
                word: t.word,
            })
            .collect(),
    };
    let target = preprojective(&q2, &neg, m)?;
    let tq = target.quiver();
    let mut images = vec![AlgebraElement::zero(UNTRUNCATED); g.quiver().n_arrows()];
    for k in 0..q.n_arrows() {
        if special.contains(&k) {
            let (p, pp) = split[k];
            let ap = arrow_el(tq, p, one.clone());
            images[k] = ap.add(&arrow_el(tq, pp, i.clone()));
            images[g.dual[k]] = ap.add(&arrow_el(tq, pp, -i.clone()));
        } else {
            images[k] = arrow_el(tq, plain[k], one.clone());
            images[g.dual[k]] = arrow_el(tq, target.dual[plain[k]], one.clone());
        }
    }
    for (v, &t) in g.t.iter().enumerate() {
        images[t] = arrow_el(tq, target.t[v], one.clone());
    }
    let map = ArrowMap { images };
    let report = map.check(&g.alg, &target.alg);
    Ok(Isomorphism { target, map, report })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizeReport {
    pub x: i64,
    pub y: i64,
    pub x_plus_y_is_minus_m: bool,
    pub moved: Vec<String>,
    pub chain_map: ChainMapReport,
}

/// Replaces every arrow `b` with `|b| < -m/2` by `b'` in the direction and
/// degree of `b*`; `iota(b) = (-1)^{|b||b*|+1} b'*`, `iota(b*) = b'`.
pub fn normalize_degrees(p: &DoubledAlgebra) -> Result<(Isomorphism, NormalizeReport), BuildError> {
    assert_eq!(p.kind, Ambient::PreprojectiveDouble);
    let q = &p.base;
    let m = p.m;
    let tq0 = p.quiver();
    let double_degs: Vec<i64> = q
        .arrows
        .iter()
        .enumerate()
        .flat_map(|(k, a)| [a.deg, tq0.arrows[p.dual[k]].deg])
        .collect();
    let x = double_degs.iter().copied().min().unwrap_or(0);
    let y = double_degs.iter().copied().max().unwrap_or(0);

    let moves: Vec<bool> = q.arrows.iter().map(|a| 2 * a.deg < -m).collect();
    let mut q2 = GradedQuiver::new(q.vertices.clone());
    for (k, a) in q.arrows.iter().enumerate() {
        if moves[k] {
            q2.add_arrow(format!("{}'", a.name), a.tgt, a.src, -m - a.deg);
        } else {
            q2.add_arrow(a.name.clone(), a.src, a.tgt, a.deg);
        }
    }
    let eps = |k: usize| {
        let b = q.arrows[k].deg;
        Scalar::sign(b * (-m - b) + 1)
    };
    let w2 = substitute_potential(&p.potential, |l| {
        if moves[l.arrow] {
            if l.star {
                vec![(Letter::plain(l.arrow), Scalar::one())]
            } else {
                vec![(Letter::dual(l.arrow), eps(l.arrow))]
            }
        } else {
            vec![(l, Scalar::one())]
        }
    });
    let target = preprojective(&q2, &w2, m)?;
    let tq = target.quiver();
    let mut images = vec![AlgebraElement::zero(UNTRUNCATED); tq0.n_arrows()];
    for k in 0..q.n_arrows() {
        if moves[k] {
            images[k] = arrow_el(tq, target.dual[k], eps(k));
            images[p.dual[k]] = arrow_el(tq, k, Scalar::one());
        } else {
            images[k] = arrow_el(tq, k, Scalar::one());
            images[p.dual[k]] = arrow_el(tq, target.dual[k], Scalar::one());
        }
    }
    for (v, &t) in p.t.iter().enumerate() {
        images[t] = arrow_el(tq, target.t[v], Scalar::one());
    }
    let map = ArrowMap { images };
    let chain_map = map.check(&p.alg, &target.alg);
    let report = NormalizeReport {
        x,
        y,
        x_plus_y_is_minus_m: q.n_arrows() == 0 || x + y == -m,
        moved: q
            .arrows
            .iter()
            .zip(&moves)
            .filter(|(_, &mv)| mv)
            .map(|(a, _)| a.name.clone())
            .collect(),
        chain_map: chain_map.clone(),
    };
    Ok((
        Isomorphism {
            target,
            map,
            report: chain_map,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::ginzburg;
    use silting_quiver_dsl::parse;

    #[test]
    fn one_loop_iota() {
        let m = parse("m 2\nvertex •\narrow a: • -> • deg -1\n").unwrap();
        let g = ginzburg(&m.quiver, &m.potential, 2).unwrap();
        let iso = ginzburg_to_dpp(&g).unwrap();
        let tq = iso.target.quiver();
        assert_eq!(tq.arrows[0].name, "a'");
        assert_eq!(tq.arrows[1].name, "a''");
        assert_eq!(iso.map.images[0].display(tq), "1*(a') + i*(a'')");
        assert_eq!(iso.map.images[1].display(tq), "1*(a') + -i*(a'')");
        assert!(iso.report.commutes, "{:?}", iso.report.failures);
        let img = iso.map.apply(g.alg.d_arrow(2));
        assert_eq!(img.display(tq), "2*(a' a') + 2*(a'' a'')");
    }

    #[test]
    fn identity_without_special_loops() {
        let src = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\npotential 1*(c b a)\n";
        let m = parse(src).unwrap();
        let g = ginzburg(&m.quiver, &m.potential, 1).unwrap();
        let iso = ginzburg_to_dpp(&g).unwrap();
        assert!(iso.report.commutes);
        for k in 0..g.quiver().n_arrows() {
            assert_eq!(g.alg.d_arrow(k), iso.target.alg.d_arrow(k));
        }
    }

    #[test]
    fn normalize_moves_low_arrow() {
        let m = parse("m 2\nvertex 1 2\narrow b: 1 -> 2 deg -2\n").unwrap();
        let p = preprojective(&m.quiver, &m.potential, 2).unwrap();
        let (iso, rep) = normalize_degrees(&p).unwrap();
        let tq = iso.target.quiver();
        assert_eq!(tq.arrows[0].name, "b'");
        assert_eq!(tq.arrows[0].deg, 0);
        assert_eq!((tq.arrows[0].src, tq.arrows[0].tgt), (1, 0));
        assert_eq!(iso.map.images[0].display(tq), "-1*(b'*)");
        assert!(rep.x_plus_y_is_minus_m);
        assert!(rep.chain_map.commutes, "{:?}", rep.chain_map.failures);
    }

    #[test]
    fn normalize_is_identity_in_range() {
        let m = parse("m 2\nvertex 1 2\narrow b: 1 -> 2 deg 0\n").unwrap();
        let p = preprojective(&m.quiver, &m.potential, 2).unwrap();
        let (iso, rep) = normalize_degrees(&p).unwrap();
        assert!(rep.moved.is_empty());
        for k in 0..p.quiver().n_arrows() {
            assert_eq!(iso.map.images[k], AlgebraElement::arrow(iso.target.quiver(), k, UNTRUNCATED));
        }
    }
}
