use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use depthzero::apartment::affine_double_cosets_bruteforce_with;
use depthzero::exec::Exec;
use depthzero::finlab::lie::build_sl;
use depthzero::rational::int;
use depthzero::rootdata::{RootDatum, WeylGroup};
use depthzero::stabilizers::{gxromega_sweep, sample_points, standard_radii};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn class_constants(c: &mut Criterion) {
    let g = build_sl(3, 3, false).unwrap();
    let cc = g.conjugacy_classes();
    let mut group = c.benchmark_group("class_constants_sl33");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(g.class_constants(&cc, exec)))
        });
    }
    group.finish();
}

fn gxromega(c: &mut Criterion) {
    let datum = RootDatum::new(&"C3".parse().unwrap()).unwrap();
    let points = sample_points(&datum, 20, 1);
    let radii = standard_radii();
    let mut group = c.benchmark_group("gxromega_sweep_c3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(gxromega_sweep(exec, &datum, &points, &radii).unwrap()))
        });
    }
    group.finish();
}

fn double_cosets(c: &mut Criterion) {
    let datum = RootDatum::new(&"C2".parse().unwrap()).unwrap();
    let weyl = WeylGroup::new(&datum).unwrap();
    let zero = vec![int(0), int(0)];
    let mut group = c.benchmark_group("double_coset_oracle_c2");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(affine_double_cosets_bruteforce_with(exec, &datum, &weyl, &zero, &zero, 3, 6).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, class_constants, gxromega, double_cosets);
criterion_main!(benches);
