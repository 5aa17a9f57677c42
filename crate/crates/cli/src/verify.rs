//! The verification checks behind `clusternet verify`: each check pits a
//! synthesized network against a reference built straight from the
//! closed-form definitions and reports the largest deviation.

use clap::ValueEnum;
use clusternet::code::{
    channel_agreement, encoder_map, isometry_check, measurement_uniformity,
    verify_encoder_identities,
};
use clusternet::linmap::{creation_operator, ground_embedding};
use clusternet::sim::{circuit_unitary, cluster_state, run, SimError, StateVector};
use clusternet::synth::{cluster_phase_form, cluster_shift_form, direct_encoder, encoder_network};
use clusternet::{CodeError, Report, WeightedGraph};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    /// Shift-form preparation against the closed-form cluster state
    Cluster,
    /// Exact gate-count formulas for every synthesizable form
    Gatecounts,
    /// Phase-form and shift-form unitary equivalence
    Equivalence,
    /// Phase lowering preserves the circuit unitary
    Lowering,
    /// Encoding-map factorization through the creation operator
    Factorization,
    /// Isometry of the encoding map
    Isometry,
    /// Encoder network against the conjugated creation operator
    Encoder,
    /// Direct encoder against the encoding map
    Direct,
    /// Definitional coding channel against the measured pipeline
    Channel,
    /// Uniform outcome statistics on random inputs (needs --seed)
    Measurement,
}

const ALL_CHECKS: [CheckName; 10] = [
    CheckName::Cluster,
    CheckName::Gatecounts,
    CheckName::Equivalence,
    CheckName::Lowering,
    CheckName::Factorization,
    CheckName::Isometry,
    CheckName::Encoder,
    CheckName::Direct,
    CheckName::Channel,
    CheckName::Measurement,
];

/// The checks to run, in canonical order, independent of flag order.
pub fn selection(all: bool, named: &[CheckName]) -> Vec<CheckName> {
    ALL_CHECKS
        .iter()
        .copied()
        .filter(|check| all || named.contains(check))
        .collect()
}

/// Runs the selected checks over one graph, buffering everything into a
/// report.
pub fn run_checks(graph: &WeightedGraph, selected: &[CheckName], seed: Option<u64>) -> Report {
    let mut report = Report::default();
    for &check in selected {
        match check {
            CheckName::Cluster => cluster_check(graph, &mut report),
            CheckName::Gatecounts => gatecount_check(graph, &mut report),
            CheckName::Equivalence => equivalence_check(graph, &mut report),
            CheckName::Lowering => lowering_check(graph, &mut report),
            CheckName::Factorization => factorization_check(graph, &mut report),
            CheckName::Isometry => isometry_report(graph, &mut report),
            CheckName::Encoder => encoder_check(graph, &mut report),
            CheckName::Direct => direct_check(graph, &mut report),
            CheckName::Channel => channel_check(graph, &mut report),
            CheckName::Measurement => measurement_check(graph, seed, &mut report),
        }
    }
    report
}

fn skip_if_too_large(report: &mut Report, name: &str, err: &SimError) -> bool {
    if matches!(err, SimError::RegisterTooLarge { .. }) {
        report.skip(name, err.to_string());
        true
    } else {
        false
    }
}

fn cluster_check(graph: &WeightedGraph, report: &mut Report) {
    let ground = match StateVector::ground(graph.vertices(), graph.level_count()) {
        Ok(state) => state,
        Err(err) => {
            if !skip_if_too_large(report, "cluster_state", &err) {
                report.skip("cluster_state", err.to_string());
            }
            return;
        }
    };
    let prepared = run(&cluster_shift_form(graph), &ground).expect("register sizes match");
    let oracle = cluster_state(graph).expect("same register as the ground state");
    report.check("cluster_state", prepared.max_amp_diff(&oracle));
}

fn gatecount_check(graph: &WeightedGraph, report: &mut Report) {
    let v = graph.vertex_count();
    let l = graph.edge_count();
    let shift = cluster_shift_form(graph).gate_counts();
    let phase = cluster_phase_form(graph).gate_counts();
    let expected = v + l;
    let dev = shift.total.abs_diff(expected).max(phase.total.abs_diff(expected)) as f64;
    report.check_with_note(
        "gate_count_cluster",
        dev,
        format!("shift {}, phase {}, expected v+l = {expected}", shift.total, phase.total),
    );
    if graph.inputs().is_empty() {
        report.skip("gate_count_encoder", "graph has no input vertices".to_string());
    } else {
        let enc = encoder_network(graph).expect("inputs are nonempty");
        let expected = v + graph.strip_input_edges().edge_count();
        let total = enc.circuit.gate_counts().total;
        report.check_with_note(
            "gate_count_encoder",
            total.abs_diff(expected) as f64,
            format!("{total} gates, expected v+l = {expected} after input-edge removal"),
        );
    }
    match direct_encoder(graph) {
        Ok(enc) => {
            let expected = (v - 1) + l - 1;
            let total = enc.circuit.gate_counts().total;
            report.check_with_note(
                "gate_count_direct",
                total.abs_diff(expected) as f64,
                format!("{total} gates, expected n+l-1 = {expected}"),
            );
        }
        Err(err) => {
            report.skip("gate_count_direct", err.to_string());
        }
    }
}

fn equivalence_check(graph: &WeightedGraph, report: &mut Report) {
    let shift = match circuit_unitary(&cluster_shift_form(graph)) {
        Ok(u) => u,
        Err(err) => {
            skip_if_too_large(report, "phase_shift_equivalence", &err);
            return;
        }
    };
    let phase = circuit_unitary(&cluster_phase_form(graph)).expect("same register");
    report.check("phase_shift_equivalence", shift.max_abs_diff(&phase));
}

fn lowering_check(graph: &WeightedGraph, report: &mut Report) {
    let phase_form = cluster_phase_form(graph);
    let phase = match circuit_unitary(&phase_form) {
        Ok(u) => u,
        Err(err) => {
            skip_if_too_large(report, "phase_lowering", &err);
            return;
        }
    };
    let lowered = circuit_unitary(&phase_form.lower_phases()).expect("same register");
    report.check("phase_lowering", phase.max_abs_diff(&lowered));
}

fn factorization_check(graph: &WeightedGraph, report: &mut Report) {
    match verify_encoder_identities(graph) {
        Ok(identities) => {
            report.extend(identities);
        }
        Err(CodeError::NoInputs) => {
            report.skip("encoder_factorization", "graph has no input vertices".to_string());
        }
        Err(CodeError::Sim(err)) => {
            skip_if_too_large(report, "encoder_factorization", &err);
        }
        Err(err) => {
            report.skip("encoder_factorization", err.to_string());
        }
    }
}

fn isometry_report(graph: &WeightedGraph, report: &mut Report) {
    match encoder_map(graph) {
        Ok(map) => {
            let check = isometry_check(&map);
            report.check("encoder_isometry", check.max_deviation);
        }
        Err(CodeError::NoInputs) => {
            report.skip("encoder_isometry", "graph has no input vertices".to_string());
        }
        Err(CodeError::Sim(err)) => {
            skip_if_too_large(report, "encoder_isometry", &err);
        }
        Err(err) => {
            report.skip("encoder_isometry", err.to_string());
        }
    }
}

fn encoder_check(graph: &WeightedGraph, report: &mut Report) {
    if graph.inputs().is_empty() {
        report.skip("encoder_network_unitary", "graph has no input vertices".to_string());
        return;
    }
    let enc = encoder_network(graph).expect("inputs are nonempty");
    let network = match circuit_unitary(&enc.circuit) {
        Ok(u) => u,
        Err(err) => {
            skip_if_too_large(report, "encoder_network_unitary", &err);
            return;
        }
    };
    let (renumbered, _) = graph.strip_input_edges().inputs_first();
    let x = renumbered.inputs().to_vec();
    let oracle = creation_operator(&renumbered)
        .and_then(|u| u.fourier_cols(&x, true))
        .and_then(|u| u.fourier_rows(&x, false))
        .expect("register already fit the unitary cap");
    report.check("encoder_network_unitary", network.max_abs_diff(&oracle));
}

fn direct_check(graph: &WeightedGraph, report: &mut Report) {
    let enc = match direct_encoder(graph) {
        Ok(enc) => enc,
        Err(err) => {
            report.skip("direct_encoder_map", err.to_string());
            return;
        }
    };
    let n = enc.circuit.register_size();
    let wires: Vec<usize> = (0..n).collect();
    let unitary = match circuit_unitary(&enc.circuit) {
        Ok(u) => u,
        Err(err) => {
            skip_if_too_large(report, "direct_encoder_map", &err);
            return;
        }
    };
    let seed = ground_embedding(&wires, &wires[1..], graph.level_count())
        .expect("register already fit the unitary cap");
    let oracle = encoder_map(graph).expect("single input implies nonempty inputs");
    report.check(
        "direct_encoder_map",
        unitary.compose(&seed).max_abs_diff(&oracle),
    );
}

fn channel_check(graph: &WeightedGraph, report: &mut Report) {
    match channel_agreement(graph) {
        Ok(channels) => {
            report.extend(channels);
        }
        Err(CodeError::NoInputs) => {
            report.skip("channel_superoperator_agreement", "graph has no input vertices".to_string());
        }
        Err(CodeError::Sim(err)) => {
            skip_if_too_large(report, "channel_superoperator_agreement", &err);
        }
        Err(err) => {
            report.skip("channel_superoperator_agreement", err.to_string());
        }
    }
}

fn measurement_check(graph: &WeightedGraph, seed: Option<u64>, report: &mut Report) {
    let Some(seed) = seed else {
        report.skip(
            "measurement_uniformity",
            "draws random inputs; pass --seed <u64> to run".to_string(),
        );
        return;
    };
    match measurement_uniformity(graph, seed, 20) {
        Ok(uniformity) => {
            report.extend(uniformity);
        }
        Err(CodeError::NoInputs) => {
            report.skip("measurement_uniformity", "graph has no input vertices".to_string());
        }
        Err(CodeError::Sim(err)) => {
            skip_if_too_large(report, "measurement_uniformity", &err);
        }
        Err(err) => {
            report.skip("measurement_uniformity", err.to_string());
        }
    }
}
