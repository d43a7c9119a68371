//! Sequential vs rayon execution of the batch workloads. Without the
//! `parallel` feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diffprim::algebra::{rat, var, RatFunc};
use diffprim::field::{alg_trdeg, diff_trdeg, DiffFieldPresentation, FieldElement, RankOptions};
use diffprim::par::{self, Exec};
use diffprim::search::{density_step, SearchConfig};
use diffprim::wronskian::verify_lemmas;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn xy_field() -> DiffFieldPresentation {
    let (x, y) = (var("x"), var("y"));
    DiffFieldPresentation::new(vec![x.clone(), y.clone()], [(x, FieldElement::one()), (y, FieldElement::zero())]).unwrap()
}

fn corpus() -> Vec<(FieldElement, FieldElement)> {
    let x = FieldElement::var(var("x"));
    let y = FieldElement::var(var("y"));
    (1..=12)
        .map(|i| {
            let a = &y.pow(i % 3 + 1) + &x.scale(&rat(i as i64, 1));
            let b = &x.pow(i % 2 + 1) + &RatFunc::constant(rat(i as i64, 7));
            (a, b)
        })
        .collect()
}

fn bench_lemmas(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_lemmas");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 4), &exec, |b, &exec| {
            b.iter(|| black_box(verify_lemmas(4, exec).unwrap()))
        });
    }
    group.finish();
}

fn bench_density(c: &mut Criterion) {
    let field = xy_field();
    let pairs = corpus();
    let mut group = c.benchmark_group("density_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SearchConfig { parallel: exec.is_parallel(), ..SearchConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, pairs.len()), &cfg, |b, cfg| {
            b.iter(|| {
                for (a, bb) in &pairs {
                    black_box(density_step(a, bb, &field, cfg).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_trdeg(c: &mut Criterion) {
    let field = xy_field();
    let elements: Vec<FieldElement> = corpus().into_iter().flat_map(|(a, b)| [&a * &b, &a + &b.pow(2)]).collect();
    let mut group = c.benchmark_group("trdeg_corpus");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, elements.len()), &exec, |b, &exec| {
            b.iter(|| {
                par::map(exec, &elements, |e| {
                    let opts = RankOptions::symbolic();
                    (alg_trdeg(std::slice::from_ref(e), &field, &opts).unwrap(), diff_trdeg(std::slice::from_ref(e), &field, &opts).unwrap().trdeg)
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_lemmas, bench_density, bench_trdeg);
criterion_main!(benches);
