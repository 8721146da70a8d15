use boussinesq_bench::{params, small_data_state};
use boussinesq_core::linear::{evolve_linear, LinearSolution};
use boussinesq_core::nonlinear::DuhamelStepper;
use boussinesq_core::spectral::sobolev_norm;
use boussinesq_core::{Field, GridSpec};
use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

fn nonlinear_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("duhamel_step_2d");
    group.sample_size(20);
    for points in [128, 256, 512] {
        let state = small_data_state(2, points);
        let stepper = DuhamelStepper::new(state.grid, &params(), 0.1).unwrap();
        group.bench_function(format!("N={points}"), |b| {
            b.iter_batched(|| state.clone(), |mut s| stepper.step(&mut s).unwrap(), BatchSize::LargeInput)
        });
    }
    group.finish();
}

fn linear_evolution(c: &mut Criterion) {
    let grid = GridSpec::new(2, 512, 384.0).unwrap();
    let v1 = Field::from_fn(grid, |x| (-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp());
    let sol = LinearSolution::new(params(), &Field::zeros(grid), &v1).unwrap();
    c.bench_function("evolve_linear_2d N=512 + L2 norm", |b| {
        b.iter(|| sobolev_norm(&evolve_linear(&sol, black_box(50.0)).unwrap(), 0.0).unwrap())
    });
}

criterion_group!(benches, nonlinear_step, linear_evolution);
criterion_main!(benches);
