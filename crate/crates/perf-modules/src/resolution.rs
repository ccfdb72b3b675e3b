use silting_dg_core::{AlgebraElement, DgPathAlgebra};

use crate::module::PerfModule;

/// Minimal perfect resolution of the simple `S_i`: the cone of the
/// inclusion `e_i m -> e_i A`, where `e_i m` is free on the arrows `rho`
/// ending at `i` and twisted by `d(rho) = sum_beta beta y^beta(rho)`,
/// grouped by leftmost arrow.
///
/// Summands: `e_i A` in shift 0 and `Sigma^{1-|rho|} e_{s(rho)} A` per arrow.
pub fn simple_resolution(alg: &DgPathAlgebra, i: usize) -> PerfModule {
    let q = &alg.quiver;
    let trunc = alg.trunc();
    let rhos: Vec<usize> = (0..q.n_arrows()).filter(|&a| q.arrows[a].tgt == i).collect();
    let n = rhos.len() + 1;
    let mut summands = vec![(i, 0)];
    summands.extend(rhos.iter().map(|&a| (q.arrows[a].src, 1 - q.arrows[a].deg)));
    let pos = |a: usize| rhos.iter().position(|&b| b == a).map(|k| k + 1);
    let mut delta = vec![vec![AlgebraElement::zero(trunc); n]; n];
    for (k, &rho) in rhos.iter().enumerate() {
        let c = k + 1;
        delta[0][c] = AlgebraElement::arrow(q, rho, trunc);
        for (p, x) in alg.d_arrow(rho).terms() {
            let beta = p.first_arrow().expect("no constant terms");
            let r = pos(beta).expect("leftmost arrow ends at i");
            delta[r][c].add_term(p.tail(q), -x.clone());
        }
    }
    let y = PerfModule { summands, delta, trunc }.sorted();
    debug_assert!(y.check_d_squared(alg).is_ok());
    y
}
