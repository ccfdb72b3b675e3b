use num_traits::Zero;
use silting_dg_core::{AlgebraElement, DgPathAlgebra};
use silting_quiver_dsl::Path;

use crate::module::PerfModule;

/// Inverse of a degree-zero `u = c e_v + n` with `n` in the arrow ideal, as
/// the geometric series in `n`. `None` if `c = 0`.
pub fn invert_unit(u: &AlgebraElement, v: usize) -> Option<AlgebraElement> {
    let trunc = u.trunc();
    let c = u.coeff(&Path::trivial(v));
    if c.is_zero() {
        return None;
    }
    let ci = c.inv().ok()?;
    let e = AlgebraElement::idempotent(v, trunc);
    // u^{-1} = c^{-1} sum_k (-c^{-1} n)^k
    let n = u.sub(&e.scale(&c)).scale(&-ci.clone());
    let mut out = e.clone();
    let mut pow = e;
    for k in 0.. {
        assert!(k < 4096, "unit inverse does not terminate; truncate first");
        pow = pow.mul(&n);
        if pow.is_zero() {
            break;
        }
        out = out.add(&pow);
    }
    Some(out.scale(&ci))
}

/// Splits off contractible pairs `g_c -> g_r` whose `delta_rc` has an
/// invertible constant part until the differential lies in the arrow ideal.
pub fn minimal_model(alg: &DgPathAlgebra, x: &PerfModule) -> PerfModule {
    let mut x = x.clone();
    loop {
        let n = x.len();
        let mut hit = None;
        'search: for c in 0..n {
            for r in 0..n {
                let (vr, sr) = x.summands[r];
                let (vc, sc) = x.summands[c];
                if vr == vc && sc == sr + 1 && !x.delta[r][c].coeff(&Path::trivial(vr)).is_zero() {
                    hit = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((r, c)) = hit else { break };
        let uinv = invert_unit(&x.delta[r][c], x.summands[r].0).expect("unit");
        let keep: Vec<usize> = (0..n).filter(|&k| k != r && k != c).collect();
        let mut delta = vec![vec![AlgebraElement::zero(x.trunc); keep.len()]; keep.len()];
        // delta'_qp = delta_qp - delta_qc u^{-1} delta_rp
        for (i, &q) in keep.iter().enumerate() {
            let left = if x.delta[q][c].is_zero() {
                None
            } else {
                Some(x.delta[q][c].mul(&uinv))
            };
            for (j, &p) in keep.iter().enumerate() {
                let mut e = x.delta[q][p].clone();
                if let Some(l) = &left {
                    if !x.delta[r][p].is_zero() {
                        e = e.sub(&l.mul(&x.delta[r][p]));
                    }
                }
                delta[i][j] = e;
            }
        }
        x = PerfModule {
            summands: keep.iter().map(|&k| x.summands[k]).collect(),
            delta,
            trunc: x.trunc,
        };
    }
    debug_assert!(x.check_d_squared(alg).is_ok());
    let _ = alg;
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use silting_quiver_dsl::GradedQuiver;
    use silting_scalars::Scalar;

    #[test]
    fn series_inverse() {
        let mut q = GradedQuiver::numbered(2);
        let a = q.add_arrow("a", 0, 1, 0);
        let b = q.add_arrow("b", 1, 0, 0);
        let e = AlgebraElement::idempotent(0, 6);
        let ba = AlgebraElement::arrow(&q, b, 6).mul(&AlgebraElement::arrow(&q, a, 6));
        let u = e.scale(&Scalar::from_int(2)).add(&ba);
        let ui = invert_unit(&u, 0).unwrap();
        assert_eq!(u.mul(&ui), e);
        assert_eq!(ui.mul(&u), e);
        assert!(invert_unit(&ba, 0).is_none());
    }
}
