//! Seeded graph generators shared by the integration suites.

use clusternet::WeightedGraph;
use rand::Rng;

/// Random canonical graph: every unordered pair carries a weight in
/// `1..d` with probability `edge_prob`, no inputs.
pub fn random_graph<R: Rng>(rng: &mut R, d: u32, v: usize, edge_prob: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j, rng.gen_range(1..d) as i64));
            }
        }
    }
    WeightedGraph::new(d, v, &edges, &[]).expect("generated graph is valid")
}

/// Random canonical graph with `k` input vertices and no input-input
/// edges. When `prefix` is set the inputs are `0..k`; otherwise they are
/// a random subset in random order.
pub fn random_graph_with_inputs<R: Rng>(
    rng: &mut R,
    d: u32,
    v: usize,
    k: usize,
    prefix: bool,
) -> WeightedGraph {
    assert!(k >= 1 && k < v);
    let inputs: Vec<usize> = if prefix {
        (0..k).collect()
    } else {
        let mut all: Vec<usize> = (0..v).collect();
        for i in 0..v {
            let j = rng.gen_range(0..v);
            all.swap(i, j);
        }
        all.truncate(k);
        all
    };
    let mut edges = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            if inputs.contains(&i) && inputs.contains(&j) {
                continue;
            }
            if rng.gen_bool(0.6) {
                edges.push((i, j, rng.gen_range(1..d) as i64));
            }
        }
    }
    WeightedGraph::new(d, v, &edges, &inputs).expect("generated graph is valid")
}

/// The path `0 - 1 - ... - (v-1)` with the given edge weights (cycled).
pub fn path_graph(d: u32, v: usize, weights: &[i64]) -> WeightedGraph {
    let edges: Vec<(usize, usize, i64)> = (0..v.saturating_sub(1))
        .map(|i| (i, i + 1, weights[i % weights.len()]))
        .collect();
    WeightedGraph::new(d, v, &edges, &[]).expect("path is valid")
}

/// Star with input center 0 and `leaves` outputs, all weights 1.
pub fn star_graph(d: u32, leaves: usize) -> WeightedGraph {
    let edges: Vec<(usize, usize, i64)> = (1..=leaves).map(|i| (0, i, 1)).collect();
    WeightedGraph::new(d, leaves + 1, &edges, &[0]).expect("star is valid")
}
