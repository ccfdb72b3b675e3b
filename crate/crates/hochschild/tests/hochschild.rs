use std::collections::HashMap;

use num_traits::Zero;
use silting_dg_core::{DgPathAlgebra, HomologyOptions};
use silting_hochschild::*;
use silting_potential_calculus::{ginzburg, preprojective};
use silting_quiver_dsl::parse;
use silting_scalars::Scalar;

fn ginz(src: &str) -> DgPathAlgebra {
    let m = parse(src).unwrap();
    ginzburg(&m.quiver, &m.potential, m.m).unwrap().alg
}

fn dpp(src: &str) -> DgPathAlgebra {
    let m = parse(src).unwrap();
    preprojective(&m.quiver, &m.potential, m.m).unwrap().alg
}

const A2_M2: &str = "m 2\nvertex 1 2\narrow a: 1 -> 2 deg 0\n";
const A3_M2: &str = "m 2\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n";
const ONE_LOOP: &str = "m 2\nvertex x\narrow a: x -> x deg -1\n";
const TWO_LOOPS: &str = "m 2\nvertex x\narrow alpha: x -> x deg -1\narrow beta: x -> x deg -1\n";
const CYCLE3: &str = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\npotential 1*(c b a)\n";

fn opts() -> HomologyOptions {
    HomologyOptions::default()
}

/// `D^2 = 0` on every chain of the truncated complex.
fn assert_square_zero(alg: &DgPathAlgebra, lo: i64) {
    let c = HochschildComplex::new(alg, lo, 1);
    let mut checked = 0;
    for n in lo..=-1 {
        for ch in &c.chains[&n] {
            let mut twice: HashMap<Chain, Scalar> = HashMap::new();
            for (c1, x) in c.apply(ch) {
                for (c2, y) in c.apply(&c1) {
                    *twice.entry(c2).or_insert_with(Scalar::zero) += &(&x * &y);
                }
            }
            assert!(twice.values().all(|v| v.is_zero()), "D^2 on {}", ch.display(&alg.quiver));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn differential_squares_to_zero() {
    assert_square_zero(&ginz(A2_M2).with_trunc(6), -4);
    assert_square_zero(&dpp(ONE_LOOP).with_trunc(6), -4);
    assert_square_zero(&ginz(ONE_LOOP).with_trunc(5), -3);
    assert_square_zero(&dpp(TWO_LOOPS).with_trunc(4), -3);
    assert_square_zero(&ginz(CYCLE3).with_trunc(6), -3);
}

#[test]
fn acyclic_preprojective_is_rigid() {
    for src in [A2_M2, A3_M2] {
        let alg = dpp(src);
        let n = alg.quiver.n_vertices();
        let h = hochschild_homology(&alg, 1, &opts());
        assert!(h.stable);
        assert_eq!(h.dims, vec![n, 0]);
        assert!(h.trivial_paths_independent);
        let r = rigidity_check(&alg, 2, &opts());
        assert!(r.pass, "{r:?}");
        assert!(r.loops.is_empty());
        assert!(loop_obstruction(&alg, 0).is_empty());
    }
    // Ginzburg and preprojective agree for W = 0
    let g = hochschild_homology(&ginz(A3_M2), 1, &opts());
    assert_eq!(g.dims, vec![3, 0]);
}

#[test]
fn one_loop_is_not_rigid() {
    let alg = dpp(ONE_LOOP);
    assert_eq!(loop_obstruction(&alg, 1), vec!["a".to_string()]);
    let r = rigidity_check(&alg, 2, &opts());
    assert!(!r.pass);
    assert_eq!(r.nonvanishing, vec![1]);
    assert_eq!(r.witnesses, vec!["a".to_string()]);
    assert!(r.loops_consistent);
    assert!(r.hh0_is_l);
}

#[test]
fn two_loops_degree_two() {
    let alg = dpp(TWO_LOOPS);
    assert_eq!(loop_obstruction(&alg, 1), vec!["alpha".to_string(), "beta".to_string()]);
    let o = HomologyOptions { trunc: 4, ..opts() };
    let h = hochschild_homology(&alg, 2, &o);
    assert!(h.stable);
    assert_eq!(h.dims, vec![1, 2, 3]);
    let m = Computed::new(&alg.with_trunc(4), -3, 1, o.exec, false);
    let a = alg.quiver.arrow_index("alpha").unwrap();
    let b = alg.quiver.arrow_index("beta").unwrap();
    let word = |w: &[usize]| {
        let p = silting_quiver_dsl::Path::from_arrows(&alg.quiver, w).unwrap();
        m.unit(-2, &Chain(vec![p])).unwrap()
    };
    // alpha beta survives; alpha^2 = [alpha, alpha] / 2 is a boundary
    assert!(m.nonzero_class(-2, &word(&[a, b])));
    assert!(!m.nonzero_class(-2, &word(&[a, a])));
    assert!(m.nonzero_class(-1, &m.unit(-1, &Chain(vec![silting_quiver_dsl::Path::arrow(&alg.quiver, a)])).unwrap()));
}

#[test]
fn no_arrows() {
    for alg in [ginz("m 2\nvertex x\n"), dpp("m 3\nvertex x y\n")] {
        let n = alg.quiver.n_vertices();
        let h = hochschild_homology(&alg, 2, &opts());
        assert!(h.stable);
        assert_eq!(h.dims[0], n);
        assert_eq!(&h.dims[1..], &[0, 0]);
        assert!(rigidity_check(&alg, 3, &opts()).pass);
    }
}

#[test]
fn sequential_matches_parallel() {
    let alg = ginz(A3_M2);
    let mut o = opts();
    let a = hochschild_homology(&alg, 2, &o);
    o.exec = silting_dg_core::Exec::Sequential;
    let b = hochschild_homology(&alg, 2, &o);
    assert_eq!(a.dims, b.dims);
    assert_eq!(a.basis, b.basis);
}

mod random {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// One vertex with a few loops of degree -1 or -2.
        #[test]
        fn square_zero_on_random_loops(degs in prop::collection::vec(-2i64..=-1, 1..3), m in 2i64..4, ginzburg_side in any::<bool>()) {
            let mut src = format!("m {m}\nvertex x\n");
            for (k, &d) in degs.iter().enumerate() {
                let d = if 2 * d < -m { -1 } else { d };
                src += &format!("arrow l{k}: x -> x deg {d}\n");
            }
            let alg = if ginzburg_side { ginz(&src) } else { dpp(&src) };
            assert_square_zero(&alg.with_trunc(4), -3);
        }
    }
}
