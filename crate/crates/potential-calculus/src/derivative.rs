use silting_dg_core::{AlgebraElement, UNTRUNCATED};
use silting_quiver_dsl::{ArrowSeq, GradedQuiver, Path};
use silting_scalars::Scalar;

/// A potential term with its letters already resolved to arrows of the
/// ambient quiver (left to right).
pub type Word = (Scalar, Vec<usize>);

fn degree(q: &GradedQuiver, w: &[usize]) -> i64 {
    w.iter().map(|&a| q.arrows[a].deg).sum()
}

/// `sum over p = u x v of (-1)^{(|x|+|v|)|u|} v u`, summed over every
/// occurrence of `x` in every term, as stored.
pub fn cyclic_derivative_words(q: &GradedQuiver, words: &[Word], x: usize) -> AlgebraElement {
    let dx = q.arrows[x].deg;
    let mut out = AlgebraElement::zero(UNTRUNCATED);
    for (c, w) in words {
        for k in 0..w.len() {
            if w[k] != x {
                continue;
            }
            let (u, v) = (&w[..k], &w[k + 1..]);
            let du = degree(q, u);
            let dv = degree(q, v);
            let sign = if ((dx + dv) * du).rem_euclid(2) == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            let mut arrows: ArrowSeq = v.iter().map(|&a| a as u32).collect();
            arrows.extend(u.iter().map(|&a| a as u32));
            // v u runs from t(x) to s(x).
            let path = Path {
                src: q.arrows[x].tgt as u32,
                tgt: q.arrows[x].src as u32,
                arrows,
            };
            out.add_term(path, sign);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GradedQuiver {
        let mut q = GradedQuiver::numbered(3);
        q.add_arrow("a", 0, 1, 0);
        q.add_arrow("b", 1, 2, 0);
        q.add_arrow("c", 2, 0, 0);
        q
    }

    #[test]
    fn three_cycle() {
        let q = triangle();
        let w = vec![(Scalar::from_int(1), vec![2, 1, 0])];
        let d = cyclic_derivative_words(&q, &w, 0);
        assert_eq!(d.display(&q), "1*(c b)");
        assert!(cyclic_derivative_words(&q, &[], 0).is_zero());
    }
}
