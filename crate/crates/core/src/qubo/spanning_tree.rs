//! Level-based penalty encoding of rooted spanning trees.
//!
//! Variables, for a connected graph on n vertices rooted at vertex 0:
//!
//! * `x:u-v` — u is the parent of v, one per (neighbor u, non-root child v);
//! * `y:v@l` — non-root v sits at level l, levels 2..=n (the root is fixed
//!   at level 1 and carries no variables);
//! * `d:v#k` — optional degree slack, one-hot over k in 1..=delta (tree
//!   vertices always have degree at least one, so no k = 0 slot);
//! * `z:u-v@l` — quadratization ancillas representing x(u,v) * y(u,l),
//!   appended after the originals.
//!
//! Penalty terms, each scaled by A:
//!
//! * (sum_u x(u,v) - 1)^2 — every non-root child has exactly one parent;
//! * (sum_l y(v,l) - 1)^2 — every non-root child has exactly one level;
//! * y(v,l) y(u,l') x(u,v) for l' >= l — a chosen parent must sit at a
//!   strictly lower level than its child (root parents are level 1 and
//!   need no terms);
//! * with a degree bound: (sum_k d(v,k) - 1)^2 and
//!   (deg_v(x) - sum_k k d(v,k))^2, where deg_v(x) counts children plus
//!   one for the parent edge of a non-root vertex.
//!
//! The objective adds B * w(u,v) * x(u,v). Zero-penalty assignments are
//! exactly the rooted spanning trees (levels strictly decreasing toward
//! the root), and their energy is B times the tree weight: the expansion
//! constants live in the offset and cancel against the penalty terms'
//! linear and quadratic parts at feasible points.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::problems::Graph;

use super::quadratize::quadratize;
use super::{Pubo, Qubo};

/// Options for [`spanning_tree_pubo`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SpanningTreeOptions {
    /// Constraint weight A; defaults to B * (total |weight| + 1), which
    /// makes any single violation cost more than the whole objective range.
    pub penalty_a: Option<f64>,
    /// Objective weight B; defaults to 1.
    pub objective_b: Option<f64>,
    /// Optional per-vertex degree bound (at least 1).
    pub delta: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    /// (parent, child)
    X(usize, usize),
    /// (vertex, level)
    Y(usize, usize),
    /// (vertex, slack value)
    D(usize, usize),
    /// (parent, child, parent level)
    Z(usize, usize, usize),
}

/// The variable layout and constants of one spanning-tree encoding.
#[derive(Debug, Clone)]
pub struct SpanningTreeEncoding {
    graph: Graph,
    penalty_a: f64,
    objective_b: f64,
    delta: Option<usize>,
    kinds: Vec<VarKind>,
    x_index: BTreeMap<(usize, usize), u32>,
    y_index: BTreeMap<(usize, usize), u32>,
    d_index: BTreeMap<(usize, usize), u32>,
    z_index: BTreeMap<(usize, usize, usize), u32>,
    n_original: usize,
}

/// Root vertex of every encoding.
pub const ROOT: usize = 0;

/// Build the penalty polynomial and its variable layout.
pub fn spanning_tree_pubo(
    graph: &Graph,
    options: &SpanningTreeOptions,
) -> Result<(Pubo, SpanningTreeEncoding)> {
    let n = graph.n_vertices();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "spanning trees need at least 2 vertices".into(),
        ));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = options.objective_b.unwrap_or(1.0);
    let a = options
        .penalty_a
        .unwrap_or_else(|| b * (graph.total_abs_weight() + 1.0));
    if let Some(delta) = options.delta {
        if delta == 0 {
            return Err(Error::InvalidParams("degree bound must be at least 1".into()));
        }
    }

    // Variable layout: x-block, y-block, d-block.
    let mut kinds = Vec::new();
    let mut x_index = BTreeMap::new();
    let mut y_index = BTreeMap::new();
    let mut d_index = BTreeMap::new();
    for v in 1..n {
        for (u, _) in graph.neighbors(v) {
            x_index.insert((u, v), kinds.len() as u32);
            kinds.push(VarKind::X(u, v));
        }
    }
    for v in 1..n {
        for l in 2..=n {
            y_index.insert((v, l), kinds.len() as u32);
            kinds.push(VarKind::Y(v, l));
        }
    }
    if let Some(delta) = options.delta {
        for v in 0..n {
            for k in 1..=delta {
                d_index.insert((v, k), kinds.len() as u32);
                kinds.push(VarKind::D(v, k));
            }
        }
    }
    let n_original = kinds.len();

    let mut pubo = Pubo::new(n_original);

    // Exactly one parent per child.
    for v in 1..n {
        let linear: Vec<(u32, f64)> = graph
            .neighbors(v)
            .iter()
            .map(|&(u, _)| (x_index[&(u, v)], 1.0))
            .collect();
        pubo.add_square_of_affine(&linear, -1.0, a);
    }
    // Exactly one level per child.
    for v in 1..n {
        let linear: Vec<(u32, f64)> = (2..=n).map(|l| (y_index[&(v, l)], 1.0)).collect();
        pubo.add_square_of_affine(&linear, -1.0, a);
    }
    // Parent strictly below child: penalize parent level >= child level.
    for v in 1..n {
        for (u, _) in graph.neighbors(v) {
            if u == ROOT {
                continue;
            }
            let x = x_index[&(u, v)];
            for l in 2..=n {
                let yv = y_index[&(v, l)];
                for lp in l..=n {
                    let yu = y_index[&(u, lp)];
                    pubo.add_term(&[x, yv, yu], a);
                }
            }
        }
    }
    // Objective.
    for v in 1..n {
        for (u, w) in graph.neighbors(v) {
            pubo.add_term(&[x_index[&(u, v)]], b * w);
        }
    }
    // Degree bound.
    if let Some(delta) = options.delta {
        for v in 0..n {
            let slack: Vec<(u32, f64)> = (1..=delta).map(|k| (d_index[&(v, k)], 1.0)).collect();
            pubo.add_square_of_affine(&slack, -1.0, a);

            // deg_v(x) - sum_k k d(v,k) with deg_v = children + [v != root].
            let mut affine: Vec<(u32, f64)> = Vec::new();
            for (c, _) in graph.neighbors(v) {
                if c != ROOT {
                    affine.push((x_index[&(v, c)], 1.0));
                }
            }
            for k in 1..=delta {
                affine.push((d_index[&(v, k)], -(k as f64)));
            }
            let constant = if v == ROOT { 0.0 } else { 1.0 };
            pubo.add_square_of_affine(&affine, constant, a);
        }
    }

    let mut enc = SpanningTreeEncoding {
        graph: graph.clone(),
        penalty_a: a,
        objective_b: b,
        delta: options.delta,
        kinds,
        x_index,
        y_index,
        d_index,
        z_index: BTreeMap::new(),
        n_original,
    };

    // Dry-run the quadratizer to fix the ancilla block of the layout.
    let (_, ancillas) = quadratize(&pubo, 2.0 * a, enc.pair_rule())?;
    let mut z_kinds = vec![None; ancillas.len()];
    for (&(i, j), &w) in &ancillas {
        let (u, v, lp) = enc.ancilla_identity(i, j);
        enc.z_index.insert((u, v, lp), w);
        z_kinds[(w as usize) - n_original] = Some(VarKind::Z(u, v, lp));
    }
    enc.kinds
        .extend(z_kinds.into_iter().map(|k| k.expect("contiguous ancillas")));

    Ok((pubo, enc))
}

impl SpanningTreeEncoding {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn penalty_a(&self) -> f64 {
        self.penalty_a
    }

    pub fn objective_b(&self) -> f64 {
        self.objective_b
    }

    pub fn delta(&self) -> Option<usize> {
        self.delta
    }

    /// Variables before quadratization ancillas.
    pub fn n_original(&self) -> usize {
        self.n_original
    }

    /// All variables including ancillas.
    pub fn n_total(&self) -> usize {
        self.kinds.len()
    }

    /// Label of one variable index ("x:u-v", "y:v@l", "d:v#k", "z:u-v@l").
    pub fn label(&self, index: usize) -> String {
        match self.kinds[index] {
            VarKind::X(u, v) => format!("x:{u}-{v}"),
            VarKind::Y(v, l) => format!("y:{v}@{l}"),
            VarKind::D(v, k) => format!("d:{v}#{k}"),
            VarKind::Z(u, v, l) => format!("z:{u}-{v}@{l}"),
        }
    }

    /// The sidecar JSON: an object mapping each variable index to its label,
    /// in ascending index order.
    pub fn sidecar_json(&self) -> String {
        let entries: Vec<String> = (0..self.n_total())
            .map(|i| format!("\"{i}\":\"{}\"", self.label(i)))
            .collect();
        format!("{{{}}}", entries.join(","))
    }

    /// The pair rule steering [`quadratize`]: in the cubic
    /// y(v,l) y(u,l') x(u,v), substitute the (x(u,v), y(u,l')) pair, so one
    /// ancilla serves every child level l.
    pub fn pair_rule(&self) -> impl Fn([u32; 3]) -> (u32, u32) + '_ {
        move |triple| {
            let x = triple
                .iter()
                .copied()
                .find(|&t| matches!(self.kinds[t as usize], VarKind::X(..)))
                .expect("cubic term contains an x variable");
            let VarKind::X(u, _) = self.kinds[x as usize] else {
                unreachable!()
            };
            let y_parent = triple
                .iter()
                .copied()
                .find(|&t| matches!(self.kinds[t as usize], VarKind::Y(vv, _) if vv == u))
                .expect("cubic term contains the parent's level variable");
            (x, y_parent)
        }
    }

    /// Quadratize a spanning-tree polynomial with the canonical penalty
    /// (2A) and this encoding's pair rule.
    pub fn quadratized(&self, pubo: &Pubo) -> Result<Qubo> {
        let (qubo, ancillas) = quadratize(pubo, 2.0 * self.penalty_a, self.pair_rule())?;
        debug_assert_eq!(ancillas.len(), self.z_index.len());
        Ok(qubo)
    }

    fn ancilla_identity(&self, i: u32, j: u32) -> (usize, usize, usize) {
        match (self.kinds[i as usize], self.kinds[j as usize]) {
            (VarKind::X(u, v), VarKind::Y(yu, lp)) | (VarKind::Y(yu, lp), VarKind::X(u, v)) => {
                debug_assert_eq!(u, yu);
                (u, v, lp)
            }
            _ => unreachable!("ancilla pair is always (x, y)"),
        }
    }

    pub fn x_var(&self, parent: usize, child: usize) -> Option<u32> {
        self.x_index.get(&(parent, child)).copied()
    }

    pub fn y_var(&self, vertex: usize, level: usize) -> Option<u32> {
        self.y_index.get(&(vertex, level)).copied()
    }

    /// Encode a parent assignment (parent[v] for v = 1..n) as a full
    /// zero-penalty bitstring: levels from root distance, forced slack and
    /// ancilla values. Fails if the parents do not form a tree within the
    /// degree bound.
    pub fn encode_tree(&self, parents: &[usize]) -> Result<Vec<bool>> {
        let n = self.graph.n_vertices();
        if parents.len() != n - 1 {
            return Err(Error::InvalidParams(format!(
                "need {} parent entries, got {}",
                n - 1,
                parents.len()
            )));
        }
        // Levels by following parents; cycle detection via step cap.
        let mut levels = vec![0usize; n];
        levels[ROOT] = 1;
        for (v, level) in levels.iter_mut().enumerate().skip(1) {
            let mut cur = v;
            let mut depth = 0;
            while cur != ROOT {
                cur = parents[cur - 1];
                depth += 1;
                if depth > n {
                    return Err(Error::InvalidParams("parent pointers contain a cycle".into()));
                }
            }
            *level = depth + 1;
        }
        let mut assign = vec![false; self.n_total()];
        for v in 1..n {
            let u = parents[v - 1];
            let x = self
                .x_index
                .get(&(u, v))
                .ok_or_else(|| Error::InvalidParams(format!("({u}, {v}) is not an edge")))?;
            assign[*x as usize] = true;
            assign[self.y_index[&(v, levels[v])] as usize] = true;
        }
        if let Some(delta) = self.delta {
            for v in 0..n {
                let children = (1..n).filter(|&c| parents[c - 1] == v).count();
                let degree = children + usize::from(v != ROOT);
                if degree == 0 || degree > delta {
                    return Err(Error::InvalidParams(format!(
                        "vertex {v} has tree degree {degree}, bound is {delta}"
                    )));
                }
                assign[self.d_index[&(v, degree)] as usize] = true;
            }
        }
        for (&(u, v, lp), &z) in &self.z_index {
            let x_set = assign[self.x_index[&(u, v)] as usize];
            let y_set = assign[self.y_index[&(u, lp)] as usize];
            assign[z as usize] = x_set && y_set;
        }
        Ok(assign)
    }
}

/// One decoded constraint violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ParentCount { vertex: usize, count: usize },
    LevelCount { vertex: usize, count: usize },
    LevelOrder { parent: usize, child: usize },
    Degree { vertex: usize, degree: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ParentCount { vertex, count } => {
                write!(f, "parent count: vertex {vertex} has {count} parents")
            }
            Violation::LevelCount { vertex, count } => {
                write!(f, "level count: vertex {vertex} has {count} levels")
            }
            Violation::LevelOrder { parent, child } => {
                write!(f, "level order: parent {parent} not below child {child}")
            }
            Violation::Degree { vertex, degree } => {
                write!(f, "degree: vertex {vertex} has degree {degree}")
            }
        }
    }
}

/// Result of reading a bitstring back through an encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedTree {
    /// Selected (parent, child) edges.
    pub edges: Vec<(usize, usize)>,
    pub violations: Vec<Violation>,
}

impl DecodedTree {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Read the x/y blocks of an assignment and report the selected edges plus
/// every violated constraint kind. Infeasibility is data, not an error.
pub fn decode_tree(assign: &[bool], enc: &SpanningTreeEncoding) -> DecodedTree {
    let n = enc.graph.n_vertices();
    let mut edges = Vec::new();
    let mut violations = Vec::new();

    let mut parent_count = vec![0usize; n];
    for (&(u, v), &x) in &enc.x_index {
        if assign[x as usize] {
            edges.push((u, v));
            parent_count[v] += 1;
        }
    }
    let mut levels: Vec<Option<usize>> = vec![None; n];
    levels[ROOT] = Some(1);
    for v in 1..n {
        let mut count = 0;
        let mut level = None;
        for l in 2..=n {
            if assign[enc.y_index[&(v, l)] as usize] {
                count += 1;
                level = Some(l);
            }
        }
        if count != 1 {
            violations.push(Violation::LevelCount { vertex: v, count });
        } else {
            levels[v] = level;
        }
    }
    for (v, &count) in parent_count.iter().enumerate().skip(1) {
        if count != 1 {
            violations.push(Violation::ParentCount { vertex: v, count });
        }
    }
    for &(u, v) in &edges {
        if let (Some(lu), Some(lv)) = (levels[u], levels[v]) {
            if lu >= lv {
                violations.push(Violation::LevelOrder { parent: u, child: v });
            }
        }
    }
    if let Some(delta) = enc.delta {
        for v in 0..n {
            let degree = edges.iter().filter(|&&(a, b)| a == v || b == v).count();
            if degree > delta {
                violations.push(Violation::Degree { vertex: v, degree });
            }
        }
    }
    DecodedTree { edges, violations }
}
