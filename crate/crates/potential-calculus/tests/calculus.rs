use proptest::prelude::*;
use silting_dg_core::{AlgebraElement, UNTRUNCATED};
use silting_potential_calculus::{
    check_strongly_cy, cyclic_derivative_words, BuildError, ginzburg, ginzburg_to_dpp, normalize_degrees, preprojective,
};
use silting_quiver_dsl::{parse, GradedQuiver, Path, Superpotential, Term};
use silting_scalars::Scalar;

/// Splits `w` as `u x v` by trying every prefix/suffix pair and comparing
/// concatenations.
fn brute_force(q: &GradedQuiver, words: &[(Scalar, Vec<usize>)], x: usize) -> AlgebraElement {
    let deg = |w: &[usize]| -> i64 { w.iter().map(|&a| q.arrows[a].deg).sum() };
    let mut out = AlgebraElement::zero(UNTRUNCATED);
    for (c, w) in words {
        for i in 0..=w.len() {
            for j in i..=w.len() {
                let (u, v) = (&w[..i], &w[j..]);
                let mut glued = u.to_vec();
                glued.push(x);
                glued.extend_from_slice(v);
                if glued != *w {
                    continue;
                }
                let e = (q.arrows[x].deg + deg(v)) * deg(u);
                let mut vu = v.to_vec();
                vu.extend_from_slice(u);
                let p = if vu.is_empty() {
                    Path::trivial(q.arrows[x].tgt)
                } else {
                    Path::from_arrows(q, &vu).unwrap()
                };
                out.add_term(p, c * &Scalar::sign(e));
            }
        }
    }
    out
}

fn loops3() -> GradedQuiver {
    let mut q = GradedQuiver::numbered(1);
    q.add_arrow("a", 0, 0, -1);
    q.add_arrow("b", 0, 0, 0);
    q.add_arrow("c", 0, 0, -2);
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivative_matches_brute_force(
        terms in prop::collection::vec((-3i64..4, prop::collection::vec(0usize..3, 1..6)), 0..4),
        x in 0usize..3,
    ) {
        let q = loops3();
        let words: Vec<(Scalar, Vec<usize>)> =
            terms.into_iter().map(|(c, w)| (Scalar::from_int(c), w)).collect();
        prop_assert_eq!(cyclic_derivative_words(&q, &words, x), brute_force(&q, &words, x));
    }

    #[test]
    fn degree_zero_rotation_invariance(w in prop::collection::vec(0usize..2, 3..7), k in 0usize..7, x in 0usize..2) {
        let mut q = GradedQuiver::numbered(1);
        q.add_arrow("a", 0, 0, 0);
        q.add_arrow("b", 0, 0, 0);
        let k = k % w.len();
        let mut r = w[k..].to_vec();
        r.extend_from_slice(&w[..k]);
        let one = Scalar::from_int(1);
        prop_assert_eq!(
            cyclic_derivative_words(&q, &[(one.clone(), w)], x),
            cyclic_derivative_words(&q, &[(one, r)], x)
        );
    }
}

/// Graded terms are not re-rotated: moving an odd letter around an odd
/// remainder flips the sign of the derivative.
#[test]
fn graded_rotation_sign() {
    let q = loops3();
    let one = Scalar::from_int(1);
    // a a c: degree -4. Rotate to a c a.
    let d1 = cyclic_derivative_words(&q, &[(one.clone(), vec![0, 0, 2])], 2);
    let d2 = cyclic_derivative_words(&q, &[(one, vec![0, 2, 0])], 2);
    assert_eq!(d1.display(&q), "1*(a a)");
    assert_eq!(d2.display(&q), "-1*(a a)");
}

#[test]
fn ginzburg_equals_preprojective_of_minus_w() {
    let src = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\npotential 2*(c b a)\n";
    let m = parse(src).unwrap();
    let g = ginzburg(&m.quiver, &m.potential, 1).unwrap();
    let neg = Superpotential {
        terms: m
            .potential
            .terms
            .iter()
            .map(|t| Term {
                coeff: -t.coeff.clone(),
                word: t.word.clone(),
            })
            .collect(),
    };
    let p = preprojective(&m.quiver, &neg, 1).unwrap();
    assert_eq!(g.quiver(), p.quiver());
    for k in 0..g.quiver().n_arrows() {
        assert_eq!(g.alg.d_arrow(k), p.alg.d_arrow(k), "arrow {k}");
    }
    assert!(check_strongly_cy(&g).pass());
    assert!(check_strongly_cy(&p).pass());
}

#[test]
fn degrees_raise_by_one() {
    let src = "m 3\nvertex 1 2\narrow a: 1 -> 2 deg -1\narrow b: 2 -> 1 deg 0\narrow c: 1 -> 1 deg -1\npotential 1*(b a c)\n";
    let m = parse(src).unwrap();
    for d in [
        ginzburg(&m.quiver, &m.potential, 3).unwrap(),
        preprojective(&m.quiver, &m.potential, 3).unwrap(),
    ] {
        let q = d.quiver();
        for k in 0..q.n_arrows() {
            if let Ok(Some(e)) = d.alg.d_arrow(k).degree(q) {
                assert_eq!(e, q.arrows[k].deg + 1);
            }
        }
        assert!(check_strongly_cy(&d).pass());
    }
}

/// A special loop inside W: the Ginzburg side is a dg algebra, but the
/// self-dual formulas on the target side give d^2 != 0.
#[test]
fn special_loop_in_potential_is_obstructed() {
    let src = "m 2\nvertex x\narrow a: x -> x deg -1\narrow b: x -> x deg 0\npotential 1*(a b b)\n";
    let m = parse(src).unwrap();
    let g = ginzburg(&m.quiver, &m.potential, 2).unwrap();
    match ginzburg_to_dpp(&g) {
        Err(BuildError::DSquared { arrow, .. }) => assert_eq!(arrow, "t"),
        other => panic!("expected an obstruction, got {:?}", other.map(|i| i.report)),
    }
    assert!(matches!(
        preprojective(&m.quiver, &m.potential, 2),
        Err(BuildError::DSquared { .. })
    ));
}

#[test]
fn normalize_with_potential() {
    let src = "m 3\nvertex 1 2\narrow b: 1 -> 2 deg -2\narrow c: 2 -> 1 deg 0\narrow g: 1 -> 1 deg 0\n\
               potential 1*(c b g)\n";
    let m = parse(src).unwrap();
    let p = preprojective(&m.quiver, &m.potential, 3).unwrap();
    let (iso, rep) = normalize_degrees(&p).unwrap();
    assert_eq!(rep.moved, vec!["b".to_string()]);
    assert!(rep.x_plus_y_is_minus_m);
    assert!(rep.chain_map.commutes, "{:?}", rep.chain_map.failures);
    let q2 = iso.target.quiver();
    for a in &iso.target.base.arrows {
        assert!(2 * a.deg >= -3 && a.deg <= rep.y);
    }
    assert_eq!(q2.arrows[0].name, "b'");
}
