use proptest::prelude::*;
use silting_dg_core::linalg::{dense, kernel, rank, SparseVec};
use silting_dg_core::{paths_in_window, AlgebraElement, DgPathAlgebra, UNTRUNCATED};
use silting_quiver_dsl::{GradedQuiver, Path};
use silting_scalars::Scalar;

/// One vertex, a, b of degree -1, c of degree -3 with d(c) = a b - b a,
/// and e of degree -1 with d(e) = 0.
fn algebra() -> DgPathAlgebra {
    let mut q = GradedQuiver::numbered(1);
    q.add_arrow("a", 0, 0, -1);
    q.add_arrow("b", 0, 0, -1);
    q.add_arrow("c", 0, 0, -3);
    q.add_arrow("e", 0, 0, 0);
    let a = AlgebraElement::arrow(&q, 0, UNTRUNCATED);
    let b = AlgebraElement::arrow(&q, 1, UNTRUNCATED);
    let z = AlgebraElement::zero(UNTRUNCATED);
    let dc = a.mul(&b).sub(&b.mul(&a));
    DgPathAlgebra::new(q, vec![z.clone(), z.clone(), dc, z], 10).unwrap()
}

fn element(q: &GradedQuiver, words: &[(Vec<usize>, i64)]) -> AlgebraElement {
    let mut x = AlgebraElement::zero(10);
    let Some(d) = words.first().map(|(w, _)| w.iter().map(|&a| q.arrows[a].deg).sum::<i64>()) else {
        return x;
    };
    for (w, c) in words {
        let p = if w.is_empty() {
            Path::trivial(0)
        } else {
            Path::from_arrows(q, w).unwrap()
        };
        if p.degree(q) == d {
            x.add_term(p, Scalar::from_int(*c));
        }
    }
    x
}

fn words() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..4, 0..5), -3i64..4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_is_a_graded_derivation(xs in words(), ys in words()) {
        let g = algebra();
        let q = &g.quiver;
        let x = element(q, &xs);
        let y = element(q, &ys);
        let dx = g.leibniz_d(&x).unwrap();
        let dy = g.leibniz_d(&y).unwrap();
        let lhs = g.leibniz_d(&x.mul(&y)).unwrap();
        let sign = match x.degree(q).unwrap() {
            Some(d) if d % 2 != 0 => Scalar::from_int(-1),
            _ => Scalar::from_int(1),
        };
        let rhs = dx.mul(&y).add(&x.mul(&dy).scale(&sign));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.leibniz_d(&dx).unwrap().is_zero());
    }

    #[test]
    fn sparse_rank_matches_dense(
        cols in prop::collection::vec(prop::collection::vec((0usize..6, -2i64..3), 0..5), 0..7)
    ) {
        let vecs: Vec<SparseVec> = cols
            .iter()
            .map(|c| {
                let mut m = std::collections::BTreeMap::new();
                for &(i, x) in c {
                    *m.entry(i).or_insert(Scalar::from_int(0)) += &Scalar::from_int(x);
                }
                m.into_iter().filter(|(_, x)| *x != Scalar::from_int(0)).collect()
            })
            .collect();
        let r = rank(&vecs);
        prop_assert_eq!(r, dense::rank(dense::from_sparse(&vecs, 6)));
        prop_assert_eq!(kernel(&vecs).len(), vecs.len() - r);
    }
}

#[test]
fn no_positive_degree_paths() {
    let g = algebra();
    let w = paths_in_window(&g.quiver, -2, 3, 6);
    assert!(w.keys().all(|&d| d <= 0));
}
