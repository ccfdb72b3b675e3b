use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use silting_dg_core::{homology, AlgebraElement, DgPathAlgebra, Exec, HomologyOptions, UNTRUNCATED};
use silting_quiver_dsl::GradedQuiver;

/// One vertex, loops a, b of degree -1 and c of degree -3 with
/// d(c) = ab - ba: the path spaces grow exponentially in L.
fn algebra() -> DgPathAlgebra {
    let mut q = GradedQuiver::numbered(1);
    q.add_arrow("a", 0, 0, -1);
    q.add_arrow("b", 0, 0, -1);
    q.add_arrow("c", 0, 0, -3);
    let a = AlgebraElement::arrow(&q, 0, UNTRUNCATED);
    let b = AlgebraElement::arrow(&q, 1, UNTRUNCATED);
    let z = AlgebraElement::zero(UNTRUNCATED);
    let dc = a.mul(&b).sub(&b.mul(&a));
    DgPathAlgebra::new(q, vec![z.clone(), z, dc], 12).unwrap()
}

fn bench(c: &mut Criterion) {
    let alg = algebra();
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for trunc in [6usize, 8] {
        for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            let opts = HomologyOptions { trunc, delta: 1, piece: None, exec };
            g.bench_with_input(BenchmarkId::new(name, trunc), &opts, |bch, o| bch.iter(|| homology(&alg, -5, 0, o)));
        }
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
