//! Deterministic graph families for benchmarking.

use clusternet::WeightedGraph;

/// The path `0 - 1 - ... - (v-1)`, all weights 1.
pub fn path(d: u32, v: usize) -> WeightedGraph {
    let edges: Vec<(usize, usize, i64)> = (0..v - 1).map(|i| (i, i + 1, 1)).collect();
    WeightedGraph::new(d, v, &edges, &[]).expect("path is valid")
}

/// The complete graph on `v` vertices, weights cycling through `1..d`.
pub fn complete(d: u32, v: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut w = 1i64;
    for i in 0..v {
        for j in i + 1..v {
            edges.push((i, j, w));
            w = w % (d as i64 - 1).max(1) + 1;
        }
    }
    WeightedGraph::new(d, v, &edges, &[]).expect("complete graph is valid")
}

/// Star with input center 0 and `leaves` outputs, all weights 1.
pub fn star(d: u32, leaves: usize) -> WeightedGraph {
    let edges: Vec<(usize, usize, i64)> = (1..=leaves).map(|i| (0, i, 1)).collect();
    WeightedGraph::new(d, leaves + 1, &edges, &[0]).expect("star is valid")
}
