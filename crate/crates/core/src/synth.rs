//! Deterministic translation of a weighted graph into the three logical
//! network families: cluster-state preparation (phase form and shift
//! form), the measured graph-code encoder acting on inputs and outputs,
//! and the direct single-input encoder acting on the outputs alone.
//!
//! All traversals tie-break by ascending vertex index. Gates whose power
//! vanishes mod d are never emitted, which keeps the gate-count formulas
//! exact: `v + l` for both cluster forms and the measured encoder, and
//! `n + l - 1` for the direct encoder.

use crate::circuit::{Circuit, Gate};
use crate::graph::WeightedGraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("encoder synthesis needs a nonempty input set")]
    EmptyInputSet,
    #[error("direct encoder synthesis needs exactly one input vertex, got {0}")]
    NotSingleInput(usize),
    #[error("direct encoder synthesis needs at least one output vertex")]
    NoOutputs,
    #[error(
        "direct encoder synthesis needs weight 1 between the input and the \
         first output, got {0}"
    )]
    FirstOutputWeightNotOne(i64),
}

fn canonical_power(weight: i64, d: u32) -> Option<u32> {
    let p = weight.rem_euclid(d as i64) as u32;
    (p != 0).then_some(p)
}

/// Emits the shift-form cluster network of `graph` onto `circuit`, with
/// graph vertex `i` mapped to wire `offset + i`: per vertex a Fourier
/// gate followed by one controlled shift toward each higher neighbor.
fn push_cluster_shift(circuit: &mut Circuit, graph: &WeightedGraph, offset: usize) {
    let d = graph.level_count();
    for j in 0..graph.vertex_count() {
        circuit.push(Gate::Fourier(offset + j));
        for k in j + 1..graph.vertex_count() {
            if let Some(power) = canonical_power(graph.weight(j, k), d) {
                circuit.push(Gate::CShift {
                    control: offset + j,
                    target: offset + k,
                    power,
                });
            }
        }
    }
}

/// Cluster network in phase form: a Fourier gate per vertex, ascending,
/// followed by a controlled-phase gate per edge, ascending by `(i, j)`.
/// Input markers on the graph are ignored.
pub fn cluster_phase_form(graph: &WeightedGraph) -> Circuit {
    let (graph, _) = graph.canonicalize();
    let d = graph.level_count();
    let mut circuit = Circuit::new(d, graph.vertex_count());
    for j in 0..graph.vertex_count() {
        circuit.push(Gate::Fourier(j));
    }
    for (i, j, w) in graph.edges() {
        if let Some(power) = canonical_power(w, d) {
            circuit.push(Gate::cphase(i, j, power));
        }
    }
    circuit
}

/// Cluster network in shift form: for each vertex in ascending order, a
/// Fourier gate followed by controlled shifts toward every higher
/// neighbor. Exactly `v + l` gates.
pub fn cluster_shift_form(graph: &WeightedGraph) -> Circuit {
    let (graph, _) = graph.canonicalize();
    let mut circuit = Circuit::new(graph.level_count(), graph.vertex_count());
    push_cluster_shift(&mut circuit, &graph, 0);
    circuit
}

/// Result of measured-encoder synthesis.
#[derive(Debug, Clone)]
pub struct EncoderNetwork {
    /// Network over all `v` digits; wires `0..k` carry the inputs.
    pub circuit: Circuit,
    /// Original graph vertex carried by each wire.
    pub vertex_map: Vec<usize>,
    /// Input-input edges removed before synthesis, `(i, j, weight)` in
    /// original vertex labels.
    pub removed_edges: Vec<(usize, usize, i64)>,
}

/// The measured graph-code encoder network. Vertices are relabeled so
/// the inputs come first (reported in `vertex_map`), input-input edges
/// are removed first (reported in `removed_edges`), and the emitted
/// network has exactly `v + l` gates: per input its controlled shifts
/// toward the outputs then a Fourier gate, followed by the shift-form
/// cluster network of the output subgraph.
pub fn encoder_network(graph: &WeightedGraph) -> Result<EncoderNetwork, SynthError> {
    let (graph, _) = graph.canonicalize();
    if graph.inputs().is_empty() {
        return Err(SynthError::EmptyInputSet);
    }
    let removed_edges = graph.input_input_edges();
    let stripped = graph.strip_input_edges();
    let (renumbered, vertex_map) = stripped.inputs_first();
    let d = renumbered.level_count();
    let v = renumbered.vertex_count();
    let k = renumbered.inputs().len();

    let mut circuit = Circuit::new(d, v);
    if vertex_map.iter().enumerate().any(|(new, &old)| new != old) {
        let pairs: Vec<String> = vertex_map
            .iter()
            .enumerate()
            .map(|(new, &old)| format!("{new}->{old}"))
            .collect();
        circuit.comments.push(format!("wire map: {}", pairs.join(" ")));
    }
    for x in 0..k {
        for y in k..v {
            if let Some(power) = canonical_power(renumbered.weight(x, y), d) {
                circuit.push(Gate::CShift { control: x, target: y, power });
            }
        }
        circuit.push(Gate::Fourier(x));
    }
    if let Some(output_subgraph) = renumbered.output_subgraph() {
        push_cluster_shift(&mut circuit, &output_subgraph, k);
    }
    Ok(EncoderNetwork { circuit, vertex_map, removed_edges })
}

/// Result of direct-encoder synthesis.
#[derive(Debug, Clone)]
pub struct DirectEncoder {
    /// Network over the `n` output digits only; wire 0 carries the data.
    pub circuit: Circuit,
    /// Original graph vertex carried by each wire.
    pub wire_map: Vec<usize>,
}

/// The direct encoder for a single-input graph code, acting on the
/// output digits only. Requires weight 1 between the input and the first
/// output. Emits the input's controlled shifts replayed from the data
/// wire, then the shift-form cluster network of the output subgraph;
/// exactly `n + l - 1` gates.
pub fn direct_encoder(graph: &WeightedGraph) -> Result<DirectEncoder, SynthError> {
    let (graph, _) = graph.canonicalize();
    if graph.inputs().len() != 1 {
        return Err(SynthError::NotSingleInput(graph.inputs().len()));
    }
    let (renumbered, vertex_map) = graph.inputs_first();
    let n = renumbered.vertex_count() - 1;
    if n == 0 {
        return Err(SynthError::NoOutputs);
    }
    if renumbered.weight(0, 1) != 1 {
        return Err(SynthError::FirstOutputWeightNotOne(renumbered.weight(0, 1)));
    }
    let d = renumbered.level_count();
    // Output vertex i (renumbered 1..=n) lives on wire i - 1.
    let wire_map: Vec<usize> = vertex_map[1..].to_vec();

    let mut circuit = Circuit::new(d, n);
    let pairs: Vec<String> = wire_map
        .iter()
        .enumerate()
        .map(|(wire, &old)| format!("{wire}->{old}"))
        .collect();
    circuit.comments.push(format!("wire map: {}", pairs.join(" ")));
    for i in 2..=n {
        if let Some(power) = canonical_power(renumbered.weight(0, i), d) {
            circuit.push(Gate::CShift { control: 0, target: i - 1, power });
        }
    }
    let output_subgraph = renumbered
        .output_subgraph()
        .expect("single-input graph with n >= 1 outputs");
    push_cluster_shift(&mut circuit, &output_subgraph, 0);
    Ok(DirectEncoder { circuit, wire_map })
}
