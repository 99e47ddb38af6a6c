use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dicke_lattice::drive::drive_curve;
use dicke_lattice::superradiance::{emission_curve, time_grid, ProbeGeometry, Scenario};
use dicke_lattice::{Execution, LatticeMode, LatticeSpec, MomentumDistribution};

fn executions() -> Vec<Execution> {
    if Execution::parallel_available() {
        vec![Execution::Sequential, Execution::Parallel]
    } else {
        vec![Execution::Sequential]
    }
}

fn emission(c: &mut Criterion) {
    let spec = LatticeSpec::new(100).unwrap();
    let kappa = LatticeMode::new(1, 1);
    let geometry = ProbeGeometry::matched(&spec, kappa).unwrap();
    let delays = time_grid(100.0, 500).unwrap();
    let scenarios = [
        ("metallic", Scenario::Distribution(MomentumDistribution::metallic(&spec))),
        ("fermi_dirac", Scenario::Distribution(MomentumDistribution::fermi_dirac(&spec, 1.0, 1e4).unwrap())),
        ("quench", Scenario::Quench),
    ];
    let mut group = c.benchmark_group("emission_curve_L100_500");
    group.sample_size(20);
    for (name, scenario) in &scenarios {
        for execution in executions() {
            group.bench_with_input(BenchmarkId::new(*name, format!("{execution:?}")), &execution, |b, &e| {
                b.iter(|| emission_curve(black_box(scenario), &delays, &spec, &geometry, e).unwrap())
            });
        }
    }
    group.finish();
}

fn drive(c: &mut Criterion) {
    let spec = LatticeSpec::new(100).unwrap();
    let dist = MomentumDistribution::bose_einstein(&spec, 0.5, 1e4).unwrap();
    let delays = time_grid(100.0, 500).unwrap();
    let mut group = c.benchmark_group("drive_curve_L100_500");
    group.sample_size(20);
    for execution in executions() {
        group.bench_function(format!("{execution:?}"), |b| {
            b.iter(|| drive_curve(black_box(&dist), 0.3, -0.3, LatticeMode::new(1, 1), &delays, execution).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, emission, drive);
criterion_main!(benches);
