use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fano_core::fermat::components::{component_census, sample_ruling_exact, fermat_form_in};
use fano_core::fermat::{count_360, fermat_form, fermat_point_numeric, FermatComponent};
use fano_core::geometry::line_type;
use fano_core::monodromy::experiments::{six_lines_base, MonodromyConfig};
use fano_core::numeric::family::{monodromy_loop, LoopPath};
use fano_core::numeric::lines::{solve_lines_through_point, FiberOptions};
use fano_core::{CubicExt, CubicForm};

fn exact(c: &mut Criterion) {
    let f = fermat_form_in::<CubicExt>(4);
    let comp = FermatComponent::JoinOfCurves { i: 0, j: 1, k: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("line_type_exact_join_ruling", |b| {
        b.iter_batched(|| sample_ruling_exact(&comp, &mut rng).unwrap(), |l| line_type(&f, &l).unwrap(), BatchSize::SmallInput)
    });
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("component_census_5", |b| b.iter(|| component_census(5, 0).unwrap()));
    g.finish();
}

fn numeric(c: &mut Criterion) {
    let f = CubicForm::from_poly(&fermat_form(3));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    c.bench_function("lines_through_point", |b| {
        b.iter_batched(
            || fermat_point_numeric(&mut rng, 5),
            |x| solve_lines_through_point(&f, &x, 0, &FiberOptions::default()).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let p = fermat_point_numeric(&mut ChaCha8Rng::seed_from_u64(3), 6);
    c.bench_function("count_360", |b| b.iter(|| count_360(&p, 3, 1e-6).unwrap()));
}

fn monodromy(c: &mut Criterion) {
    let f = CubicForm::from_poly(&fermat_form(3));
    let config = MonodromyConfig::default();
    let base = six_lines_base(&f, &config).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    c.bench_function("six_lines_loop", |b| {
        b.iter_batched(
            || LoopPath::random_triangle(&mut rng, &base.params, 1.0),
            |path| monodromy_loop(&base.family, &base.fiber, &path, &config.track, config.match_tol),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, exact, numeric, monodromy);
criterion_main!(benches);
