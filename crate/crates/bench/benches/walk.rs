use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use interwalk::markov::generators;
use interwalk::qff::{u_qff_explicit, QffConfig};
use interwalk::qpe::{attach_zero_ancilla, u_qee_explicit, QpeConfig};
use interwalk::walkspace::{embed_system, WalkOperator};

fn apply_w(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_w");
    for n in [8usize, 16, 32] {
        let op = WalkOperator::new(&generators::metropolis_random(n, 1, 0.2, 1.0).unwrap());
        let mut state = vec![Complex64::new(0.0, 0.0); n * n];
        state[0] = Complex64::new(1.0, 0.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| op.apply_w(&mut state).unwrap()));
    }
    group.finish();
}

fn phase_estimation(c: &mut Criterion) {
    let op = WalkOperator::new(&generators::cycle(8).unwrap());
    let psi = embed_system(&[1.0 / 8f64.sqrt(); 8]);
    let mut group = c.benchmark_group("u_qee_explicit_c8");
    group.sample_size(20);
    for tau in [4u32, 8, 10] {
        let config = QpeConfig::with_tau(tau);
        group.bench_with_input(BenchmarkId::from_parameter(tau), &tau, |b, &tau| {
            b.iter(|| {
                let mut state = attach_zero_ancilla(&psi, tau);
                u_qee_explicit(&op, &config, &mut state).unwrap();
                state
            })
        });
    }
    group.finish();
}

fn fast_forwarding(c: &mut Criterion) {
    let op = WalkOperator::new(&generators::cycle(8).unwrap());
    let psi = embed_system(&[1.0 / 8f64.sqrt(); 8]);
    let mut group = c.benchmark_group("u_qff_explicit_c8");
    group.sample_size(20);
    for t in [16u64, 64, 256] {
        let config = QffConfig::new(t, 1e-3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, _| {
            b.iter(|| {
                let mut state = attach_zero_ancilla(&psi, config.tau);
                u_qff_explicit(&op, &config, &mut state, false).unwrap();
                state
            })
        });
    }
    group.finish();
}

criterion_group!(benches, apply_w, phase_estimation, fast_forwarding);
criterion_main!(benches);
