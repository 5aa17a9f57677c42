//! Weighted-graph data model with input/output vertex partition,
//! validation, canonicalization and file I/O.
//!
//! A graph is a symmetric integer weight matrix over dense vertex indices
//! `0..v`, a level count `d` and an ordered input set `X`. Weights act on
//! states only through phases of order `d`, so canonicalization reduces
//! every weight into `[0, d)` and drops edges whose weight vanishes mod `d`.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// Upper bound on vertex count; the dense weight matrix is `v * v`.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("level count d must be at least 2, got {0}")]
    InvalidLevelCount(u32),
    #[error("vertex count must be at least 1, got {0}")]
    NoVertices(i64),
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(i64),
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("vertex index {index} out of range for {vertices} vertices")]
    VertexOutOfRange { index: i64, vertices: usize },
    #[error("edge ({i}, {j}) listed twice with conflicting weights {first} and {second}")]
    ConflictingWeights { i: usize, j: usize, first: i64, second: i64 },
    #[error("input vertex {index} out of range for {vertices} vertices")]
    InputOutOfRange { index: i64, vertices: usize },
    #[error("input vertex {0} listed twice")]
    DuplicateInput(usize),
    #[error("weight matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// An edge dropped by canonicalization because its weight is 0 mod d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovedEdge {
    pub i: usize,
    pub j: usize,
    pub weight: i64,
}

/// Warnings accumulated while canonicalizing a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CanonReport {
    pub removed: Vec<RemovedEdge>,
}

impl CanonReport {
    pub fn is_clean(&self) -> bool {
        self.removed.is_empty()
    }
}

/// On-disk form of a graph file. Field order is the serialization order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    d: u32,
    vertices: i64,
    edges: Vec<[i64; 3]>,
    inputs: Vec<i64>,
}

/// A weighted graph over levels `Z_d` with an ordered input vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    d: u32,
    vertex_count: usize,
    /// Flat symmetric `v x v` matrix, zero diagonal.
    weights: Vec<i64>,
    inputs: Vec<usize>,
}

impl WeightedGraph {
    /// Builds a graph from an explicit edge list. Weights are stored as
    /// given (possibly outside `[0, d)`); call [`Self::canonicalize`] to
    /// reduce them.
    pub fn new(
        d: u32,
        vertex_count: usize,
        edges: &[(usize, usize, i64)],
        inputs: &[usize],
    ) -> Result<Self, GraphError> {
        if d < 2 {
            return Err(GraphError::InvalidLevelCount(d));
        }
        if vertex_count == 0 {
            return Err(GraphError::NoVertices(0));
        }
        if vertex_count > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(vertex_count as i64));
        }
        let mut weights = vec![0i64; vertex_count * vertex_count];
        let mut set = vec![false; vertex_count * vertex_count];
        for &(i, j, w) in edges {
            if i >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    index: i as i64,
                    vertices: vertex_count,
                });
            }
            if j >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    index: j as i64,
                    vertices: vertex_count,
                });
            }
            if i == j {
                return Err(GraphError::SelfLoop(i, j));
            }
            let (a, b) = (i.min(j), i.max(j));
            if set[a * vertex_count + b] && weights[a * vertex_count + b] != w {
                return Err(GraphError::ConflictingWeights {
                    i: a,
                    j: b,
                    first: weights[a * vertex_count + b],
                    second: w,
                });
            }
            set[a * vertex_count + b] = true;
            weights[a * vertex_count + b] = w;
            weights[b * vertex_count + a] = w;
        }
        let mut seen = vec![false; vertex_count];
        for &x in inputs {
            if x >= vertex_count {
                return Err(GraphError::InputOutOfRange {
                    index: x as i64,
                    vertices: vertex_count,
                });
            }
            if seen[x] {
                return Err(GraphError::DuplicateInput(x));
            }
            seen[x] = true;
        }
        Ok(WeightedGraph {
            d,
            vertex_count,
            weights,
            inputs: inputs.to_vec(),
        })
    }

    /// Parses and validates a graph file, returning the canonicalized
    /// graph together with any canonicalization warnings.
    pub fn parse(text: &str) -> Result<(Self, CanonReport), GraphError> {
        let file: GraphFile = serde_json::from_str(text)?;
        if file.d < 2 {
            return Err(GraphError::InvalidLevelCount(file.d));
        }
        if file.vertices < 1 {
            return Err(GraphError::NoVertices(file.vertices));
        }
        if file.vertices > MAX_VERTICES as i64 {
            return Err(GraphError::TooManyVertices(file.vertices));
        }
        let vertex_count = file.vertices as usize;
        let check_vertex = |x: i64| -> Result<usize, GraphError> {
            if x < 0 || x >= vertex_count as i64 {
                Err(GraphError::VertexOutOfRange {
                    index: x,
                    vertices: vertex_count,
                })
            } else {
                Ok(x as usize)
            }
        };
        let mut edges = Vec::with_capacity(file.edges.len());
        for [i, j, w] in file.edges {
            edges.push((check_vertex(i)?, check_vertex(j)?, w));
        }
        let mut inputs = Vec::with_capacity(file.inputs.len());
        for x in file.inputs {
            if x < 0 || x >= vertex_count as i64 {
                return Err(GraphError::InputOutOfRange {
                    index: x,
                    vertices: vertex_count,
                });
            }
            inputs.push(x as usize);
        }
        let raw = Self::new(file.d, vertex_count, &edges, &inputs)?;
        Ok(raw.canonicalize())
    }

    /// Serializes to the graph file format: edges sorted by
    /// `(min(i,j), max(i,j))`, inputs in their stored order.
    pub fn serialize(&self) -> String {
        let file = GraphFile {
            d: self.d,
            vertices: self.vertex_count as i64,
            edges: self
                .edges()
                .map(|(i, j, w)| [i as i64, j as i64, w])
                .collect(),
            inputs: self.inputs.iter().map(|&x| x as i64).collect(),
        };
        serde_json::to_string(&file).expect("graph file serialization cannot fail")
    }

    pub fn level_count(&self) -> u32 {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// All vertex indices in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).collect()
    }

    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.weights[i * self.vertex_count + j]
    }

    /// Ordered input vertex set `X`.
    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    /// Output vertices `Y` (complement of `X`) in ascending order.
    pub fn outputs(&self) -> Vec<usize> {
        let mut is_input = vec![false; self.vertex_count];
        for &x in &self.inputs {
            is_input[x] = true;
        }
        (0..self.vertex_count).filter(|&v| !is_input[v]).collect()
    }

    /// Unordered edges `(i, j, weight)` with `i < j` and nonzero weight,
    /// ascending by `(i, j)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.vertex_count).flat_map(move |i| {
            (i + 1..self.vertex_count).filter_map(move |j| {
                let w = self.weight(i, j);
                (w != 0).then_some((i, j, w))
            })
        })
    }

    /// Number of edges with nonzero stored weight.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Number of edges incident to a vertex.
    pub fn degree(&self, vertex: usize) -> usize {
        (0..self.vertex_count)
            .filter(|&j| j != vertex && self.weight(vertex, j) != 0)
            .count()
    }

    /// Reduces every weight into `[0, d)`, dropping edges whose weight is
    /// congruent to zero and reporting them.
    pub fn canonicalize(&self) -> (Self, CanonReport) {
        let mut out = self.clone();
        let mut report = CanonReport::default();
        for i in 0..self.vertex_count {
            for j in i + 1..self.vertex_count {
                let w = self.weight(i, j);
                let r = w.rem_euclid(self.d as i64);
                if w != 0 && r == 0 {
                    report.removed.push(RemovedEdge { i, j, weight: w });
                }
                out.weights[i * self.vertex_count + j] = r;
                out.weights[j * self.vertex_count + i] = r;
            }
        }
        (out, report)
    }

    /// True when every weight already lies in `[0, d)`.
    pub fn is_canonical(&self) -> bool {
        self.weights.iter().all(|&w| w >= 0 && w < self.d as i64)
    }

    /// Zeroes every weight between two input vertices; all other entries
    /// are unchanged.
    pub fn strip_input_edges(&self) -> Self {
        let mut out = self.clone();
        for (a, &x) in self.inputs.iter().enumerate() {
            for &x2 in &self.inputs[a + 1..] {
                out.weights[x * self.vertex_count + x2] = 0;
                out.weights[x2 * self.vertex_count + x] = 0;
            }
        }
        out
    }

    /// Edges between input vertices, ascending by `(min, max)`.
    pub fn input_input_edges(&self) -> Vec<(usize, usize, i64)> {
        let mut found = Vec::new();
        for (a, &x) in self.inputs.iter().enumerate() {
            for &x2 in &self.inputs[a + 1..] {
                let (i, j) = (x.min(x2), x.max(x2));
                let w = self.weight(i, j);
                if w != 0 {
                    found.push((i, j, w));
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Restriction of the weight matrix to the output vertices, re-indexed
    /// densely with relative order preserved and an empty input set.
    /// Returns `None` when there are no outputs.
    pub fn output_subgraph(&self) -> Option<Self> {
        let outputs = self.outputs();
        if outputs.is_empty() {
            return None;
        }
        let n = outputs.len();
        let mut weights = vec![0i64; n * n];
        for (a, &i) in outputs.iter().enumerate() {
            for (b, &j) in outputs.iter().enumerate() {
                weights[a * n + b] = self.weight(i, j);
            }
        }
        Some(WeightedGraph {
            d: self.d,
            vertex_count: n,
            weights,
            inputs: Vec::new(),
        })
    }

    /// Relabels vertices so the inputs come first (in their stored order)
    /// followed by the outputs in ascending order. Returns the relabeled
    /// graph and the map from new index to original vertex.
    pub fn inputs_first(&self) -> (Self, Vec<usize>) {
        let mut new_to_old = self.inputs.clone();
        new_to_old.extend(self.outputs());
        let v = self.vertex_count;
        let mut weights = vec![0i64; v * v];
        for (a, &i) in new_to_old.iter().enumerate() {
            for (b, &j) in new_to_old.iter().enumerate() {
                weights[a * v + b] = self.weight(i, j);
            }
        }
        let graph = WeightedGraph {
            d: self.d,
            vertex_count: v,
            weights,
            inputs: (0..self.inputs.len()).collect(),
        };
        (graph, new_to_old)
    }

    /// Deterministic Graphviz text; inputs are drawn as boxes and weights
    /// appear as edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        let mut is_input = vec![false; self.vertex_count];
        for &x in &self.inputs {
            is_input[x] = true;
        }
        for (v, marked) in is_input.iter().enumerate() {
            if *marked {
                let _ = writeln!(out, "  {v} [shape=box];");
            } else {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (i, j, w) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j} [label=\"{w}\"];");
        }
        out.push_str("}\n");
        out
    }
}
