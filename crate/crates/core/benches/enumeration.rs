use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blc::ancestry::{count_table_seq, WordCtx};
use blc::perm::Permutation;

fn eta(n: usize) -> WordCtx {
    WordCtx::canonical(&Permutation::top(n)).unwrap()
}

fn count_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_table");
    g.sample_size(10);
    for n in [4, 5, 6] {
        let ctx = eta(n);
        g.bench_with_input(BenchmarkId::new("seq", n), &ctx, |b, ctx| b.iter(|| count_table_seq(ctx)));
        #[cfg(feature = "parallel")]
        g.bench_with_input(BenchmarkId::new("par", n), &ctx, |b, ctx| {
            b.iter(|| blc::ancestry::count_table_par(ctx))
        });
    }
    g.finish();
}

criterion_group!(benches, count_tables);
criterion_main!(benches);
