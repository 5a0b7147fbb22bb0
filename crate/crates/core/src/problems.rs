//! Graphs and the cost functions defining optimization instances.
//!
//! Everything downstream minimizes: instances with a maximization sense are
//! negated when materialized into a [`DiagonalCost`] table, so the engine
//! always searches for the table minimum.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::statevector::{DiagonalCost, MAX_QUBITS};

/// Undirected weighted graph with 0-indexed vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v, w) in &edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n_vertices} vertices"
                )));
            }
            if !w.is_finite() {
                return Err(Error::InvalidGraph(format!("non-finite weight on ({u}, {v})")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Complete graph on n vertices, unit weights.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1.0));
            }
        }
        Self::new(n, edges)
    }

    /// Neighbors of `v`, ascending, with edge weights.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = self
            .edges
            .iter()
            .filter_map(|&(a, b, w)| {
                if a == v {
                    Some((b, w))
                } else if b == v {
                    Some((a, w))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|&(u, _)| u);
        out
    }

    pub fn total_abs_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w.abs()).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n_vertices
    }

    /// Parse the graph JSON format:
    /// `{"n": int, "edges": [[u, v, w], ...]}`, 0-indexed vertices, the
    /// weight entry optional (omitted means 1.0).
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            edges: Vec<WireEdge>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum WireEdge {
            Weighted(usize, usize, f64),
            Unit(usize, usize),
        }
        let wire: Wire = serde_json::from_str(text)?;
        let edges = wire
            .edges
            .into_iter()
            .map(|e| match e {
                WireEdge::Weighted(u, v, w) => (u, v, w),
                WireEdge::Unit(u, v) => (u, v, 1.0),
            })
            .collect();
        Graph::new(wire.n, edges)
    }

    /// Render the graph JSON format (weights always explicit).
    pub fn to_json(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v, w)| format!("[{u},{v},{}]", crate::fmt::float(w)))
            .collect();
        format!("{{\"n\":{},\"edges\":[{}]}}", self.n_vertices, edges.join(","))
    }
}

/// Cycle 0-1-2-...-(n-1)-0 with unit weights.
pub fn ring_graph(n: usize) -> Result<Graph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGraph(format!(
            "ring instances need an even vertex count of at least 4, got {n}"
        )));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    Graph::new(n, edges)
}

/// Total weight of edges cut by the bitstring x (bit i = side of vertex i).
pub fn maxcut_value(graph: &Graph, x: u64) -> Result<f64> {
    let n = graph.n_vertices();
    if n > 64 || (n < 64 && x >= 1u64 << n) {
        return Err(Error::IndexOutOfRange { index: x, n });
    }
    Ok(graph
        .edges()
        .iter()
        .map(|&(u, v, w)| {
            if (x >> u) & 1 != (x >> v) & 1 {
                w
            } else {
                0.0
            }
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    MaxCut,
    RingOfDisagrees,
    OneHotDemo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Colors per vertex in the one-hot demo instance.
pub const ONE_HOT_COLORS: usize = 3;

/// An optimization instance: a graph plus the rule turning bitstrings into
/// costs.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    kind: ProblemKind,
    graph: Graph,
    sense: Sense,
}

impl ProblemInstance {
    /// MaxCut on an arbitrary graph (maximization).
    pub fn maxcut(graph: Graph) -> Self {
        Self {
            kind: ProblemKind::MaxCut,
            graph,
            sense: Sense::Maximize,
        }
    }

    /// MaxCut on the even unit-weight cycle (maximization).
    pub fn ring_of_disagrees(n: usize) -> Result<Self> {
        Ok(Self {
            kind: ProblemKind::RingOfDisagrees,
            graph: ring_graph(n)?,
            sense: Sense::Maximize,
        })
    }

    /// Demo instance for one-hot constrained mixing: each vertex gets a
    /// group of [`ONE_HOT_COLORS`] qubits (qubit `ONE_HOT_COLORS*v + c` is
    /// "vertex v has color c"), and the cost of a bitstring is the total
    /// weight of same-colored edges, summed over all colors both endpoints
    /// share. A minimization instance.
    pub fn one_hot_demo(graph: Graph) -> Result<Self> {
        if graph.n_vertices() * ONE_HOT_COLORS > MAX_QUBITS {
            return Err(Error::QubitCount {
                n: graph.n_vertices() * ONE_HOT_COLORS,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            kind: ProblemKind::OneHotDemo,
            graph,
            sense: Sense::Minimize,
        })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// Qubits needed to encode the instance.
    pub fn num_qubits(&self) -> usize {
        match self.kind {
            ProblemKind::MaxCut | ProblemKind::RingOfDisagrees => self.graph.n_vertices(),
            ProblemKind::OneHotDemo => self.graph.n_vertices() * ONE_HOT_COLORS,
        }
    }

    /// The one-hot qubit groups of the demo instance (empty otherwise).
    pub fn onehot_groups(&self) -> Vec<Vec<usize>> {
        match self.kind {
            ProblemKind::OneHotDemo => (0..self.graph.n_vertices())
                .map(|v| (0..ONE_HOT_COLORS).map(|c| ONE_HOT_COLORS * v + c).collect())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Cost of one bitstring, in the instance's native sense.
    pub fn cost(&self, x: u64) -> Result<f64> {
        match self.kind {
            ProblemKind::MaxCut | ProblemKind::RingOfDisagrees => maxcut_value(&self.graph, x),
            ProblemKind::OneHotDemo => {
                let n = self.num_qubits();
                if n < 64 && x >= 1u64 << n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
                Ok(self
                    .graph
                    .edges()
                    .iter()
                    .map(|&(u, v, w)| {
                        let mut shared = 0u32;
                        for c in 0..ONE_HOT_COLORS {
                            let bu = (x >> (ONE_HOT_COLORS * u + c)) & 1;
                            let bv = (x >> (ONE_HOT_COLORS * v + c)) & 1;
                            shared += (bu & bv) as u32;
                        }
                        w * shared as f64
                    })
                    .sum())
            }
        }
    }

    /// Materialize the full table of f(x). For maximization instances the
    /// table stores -cost, so downstream engines always minimize.
    pub fn cost_table(&self) -> Result<DiagonalCost> {
        let n = self.num_qubits();
        if n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let sign = match self.sense {
            Sense::Maximize => -1.0,
            Sense::Minimize => 1.0,
        };
        let mut values = Vec::with_capacity(1 << n);
        for x in 0..(1u64 << n) {
            values.push(sign * self.cost(x)?);
        }
        DiagonalCost::new(n, values)
    }
}
