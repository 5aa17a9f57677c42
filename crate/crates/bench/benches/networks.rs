use clusternet::code::encoder_map;
use clusternet::sim::{cluster_state, run, StateVector};
use clusternet::synth::{cluster_shift_form, encoder_network};
use clusternet_bench::{complete, path, star};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn synthesis(c: &mut Criterion) {
    let path_graph = path(2, 64);
    let complete_graph = complete(3, 32);
    c.bench_function("synth/cluster_shift/path64_d2", |b| {
        b.iter(|| black_box(cluster_shift_form(black_box(&path_graph))))
    });
    c.bench_function("synth/cluster_shift/complete32_d3", |b| {
        b.iter(|| black_box(cluster_shift_form(black_box(&complete_graph))))
    });
    let code_graph = star(2, 17);
    c.bench_function("synth/encoder/star17_d2", |b| {
        b.iter(|| black_box(encoder_network(black_box(&code_graph)).unwrap()))
    });
}

fn simulation(c: &mut Criterion) {
    let qubit_graph = path(2, 16);
    let qubit_circuit = cluster_shift_form(&qubit_graph);
    let qubit_ground = StateVector::ground(qubit_graph.vertices(), 2).unwrap();
    c.bench_function("sim/run/path16_d2", |b| {
        b.iter(|| black_box(run(&qubit_circuit, black_box(&qubit_ground)).unwrap()))
    });

    let qutrit_graph = path(3, 9);
    let qutrit_circuit = cluster_shift_form(&qutrit_graph);
    let qutrit_ground = StateVector::ground(qutrit_graph.vertices(), 3).unwrap();
    c.bench_function("sim/run/path9_d3", |b| {
        b.iter(|| black_box(run(&qutrit_circuit, black_box(&qutrit_ground)).unwrap()))
    });
}

fn oracles(c: &mut Criterion) {
    let graph = complete(2, 14);
    c.bench_function("oracle/cluster_state/complete14_d2", |b| {
        b.iter(|| black_box(cluster_state(black_box(&graph)).unwrap()))
    });
    let code_graph = star(2, 10);
    c.bench_function("oracle/encoder_map/star10_d2", |b| {
        b.iter(|| black_box(encoder_map(black_box(&code_graph)).unwrap()))
    });
}

criterion_group!(benches, synthesis, simulation, oracles);
criterion_main!(benches);
