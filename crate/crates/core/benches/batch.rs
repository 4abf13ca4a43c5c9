use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use toss_core::batch;
use toss_core::charge::Tsd;
use toss_core::oracle::cross_check;
use toss_core::quiver_core::weights_from_tag;
use toss_core::sample::{Axis, Sampler, Spread};

fn data(tag: &str, n: usize) -> Vec<Tsd> {
    let mut s = Sampler::new(&weights_from_tag(tag).unwrap(), 42);
    (0..n).map(|i| s.datum(if i % 2 == 0 { Spread::Narrow } else { Spread::Wide }, Axis::Upper).unwrap()).collect()
}

fn cross_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("cross_check");
    group.sample_size(20);
    for tag in ["D6", "E8"] {
        let items = data(tag, 512);
        // warm the per-type caches outside the timed region
        cross_check(&items[0]).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", tag), &items, |b, items| {
            b.iter(|| batch::map_seq(black_box(items), |t| cross_check(t).unwrap()))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", tag), &items, |b, items| {
            b.iter(|| batch::map_par(black_box(items), |t| cross_check(t).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, cross_checks);
criterion_main!(benches);
