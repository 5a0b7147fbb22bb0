//! Binary polynomial optimization: types, the spanning-tree penalty
//! encoder, degree reduction, and classical solvers.

mod quadratize;
mod solvers;
mod spanning_tree;

pub use quadratize::{lowest_pair, quadratize, AncillaMap};
pub use solvers::{
    brute_force_minimize, brute_force_minimize_with_free_tail, simulated_annealing,
    simulated_annealing_restarts, SaResult, SaSchedule, BRUTE_FORCE_MAX_VARS,
};
pub use spanning_tree::{
    decode_tree, spanning_tree_pubo, DecodedTree, SpanningTreeEncoding, SpanningTreeOptions,
    Violation,
};

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Polynomial over binary variables with monomials of any degree.
///
/// Keys are strictly increasing index tuples; the empty tuple is the
/// constant term. Zero coefficients are never stored. Adding a term with
/// repeated indices collapses them (x^2 = x).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pubo {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Pubo {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, f64> {
        &self.terms
    }

    /// Accumulate `coeff` onto the monomial over `vars` (sorted and
    /// deduplicated here). Entries that cancel to exactly zero are removed.
    pub fn add_term(&mut self, vars: &[u32], coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let mut key: Vec<u32> = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        debug_assert!(key.iter().all(|&v| (v as usize) < self.n_vars));
        let entry = self.terms.entry(key).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            let key: Vec<u32> = {
                let mut k = vars.to_vec();
                k.sort_unstable();
                k.dedup();
                k
            };
            self.terms.remove(&key);
        }
    }

    /// Add scale * (sum_i coef_i x_i + constant)^2, expanded.
    pub fn add_square_of_affine(&mut self, linear: &[(u32, f64)], constant: f64, scale: f64) {
        for (i, &(vi, ci)) in linear.iter().enumerate() {
            // Diagonal: x^2 = x.
            self.add_term(&[vi], scale * ci * ci);
            for &(vj, cj) in &linear[i + 1..] {
                self.add_term(&[vi, vj], scale * 2.0 * ci * cj);
            }
            self.add_term(&[vi], scale * 2.0 * ci * constant);
        }
        self.add_term(&[], scale * constant * constant);
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    /// Evaluate at an assignment.
    pub fn energy(&self, assign: &[bool]) -> f64 {
        debug_assert_eq!(assign.len(), self.n_vars);
        self.terms
            .iter()
            .map(|(vars, &c)| {
                if vars.iter().all(|&v| assign[v as usize]) {
                    c
                } else {
                    0.0
                }
            })
            .sum()
    }
}

/// Quadratic binary polynomial: offset + sum linear_i x_i + sum q_ij x_i x_j.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    n_vars: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(u32, u32), f64>,
    offset: f64,
}

impl Qubo {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            linear: vec![0.0; n_vars],
            quadratic: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(u32, u32), f64> {
        &self.quadratic
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn add_offset(&mut self, c: f64) {
        self.offset += c;
    }

    pub fn add_linear(&mut self, i: u32, c: f64) {
        self.linear[i as usize] += c;
    }

    pub fn add_quadratic(&mut self, i: u32, j: u32, c: f64) {
        debug_assert_ne!(i, j);
        let key = (i.min(j), i.max(j));
        let entry = self.quadratic.entry(key).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.quadratic.remove(&key);
        }
    }

    /// Convert a degree-<=2 Pubo.
    pub fn from_pubo(p: &Pubo) -> Result<Self> {
        if p.degree() > 2 {
            return Err(Error::DegreeTooHigh { degree: p.degree() });
        }
        let mut q = Qubo::new(p.n_vars());
        for (vars, &c) in p.terms() {
            match vars.as_slice() {
                [] => q.add_offset(c),
                [i] => q.add_linear(*i, c),
                [i, j] => q.add_quadratic(*i, *j, c),
                _ => unreachable!(),
            }
        }
        Ok(q)
    }

    pub fn energy(&self, assign: &[bool]) -> f64 {
        debug_assert_eq!(assign.len(), self.n_vars);
        let mut e = self.offset;
        for (i, &c) in self.linear.iter().enumerate() {
            if assign[i] {
                e += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if assign[i as usize] && assign[j as usize] {
                e += c;
            }
        }
        e
    }

    /// Largest magnitude among linear and quadratic coefficients.
    pub fn max_abs_coefficient(&self) -> f64 {
        let lin = self.linear.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let quad = self.quadratic.values().map(|c| c.abs()).fold(0.0, f64::max);
        lin.max(quad)
    }

    /// Per-variable adjacency: for each i, the (j, coeff) couplings.
    pub fn adjacency(&self) -> Vec<Vec<(u32, f64)>> {
        let mut adj = vec![Vec::new(); self.n_vars];
        for (&(i, j), &c) in &self.quadratic {
            adj[i as usize].push((j, c));
            adj[j as usize].push((i, c));
        }
        adj
    }

    /// Render the Qubo JSON format:
    /// `{"n": int, "offset": float, "linear": [...], "quadratic": [[i, j, c], ...]}`
    /// with i < j, pairs in lexicographic order.
    pub fn to_json(&self) -> String {
        let fl = crate::fmt::float;
        let linear: Vec<String> = self.linear.iter().map(|&c| fl(c)).collect();
        let quad: Vec<String> = self
            .quadratic
            .iter()
            .map(|(&(i, j), &c)| format!("[{i},{j},{}]", fl(c)))
            .collect();
        format!(
            "{{\"n\":{},\"offset\":{},\"linear\":[{}],\"quadratic\":[{}]}}",
            self.n_vars,
            fl(self.offset),
            linear.join(","),
            quad.join(",")
        )
    }

    /// Parse the Qubo JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            #[serde(default)]
            offset: f64,
            linear: Vec<f64>,
            quadratic: Vec<(u32, u32, f64)>,
        }
        let wire: Wire = serde_json::from_str(text)?;
        if wire.linear.len() != wire.n {
            return Err(Error::Format(format!(
                "linear length {} does not match n = {}",
                wire.linear.len(),
                wire.n
            )));
        }
        let mut q = Qubo::new(wire.n);
        q.add_offset(wire.offset);
        for (i, c) in wire.linear.iter().enumerate() {
            q.add_linear(i as u32, *c);
        }
        for &(i, j, c) in &wire.quadratic {
            if i >= j || j as usize >= wire.n {
                return Err(Error::Format(format!("bad quadratic entry ({i}, {j})")));
            }
            q.add_quadratic(i, j, c);
        }
        Ok(q)
    }
}

/// Unpack a u64 assignment (bit i = variable i) into booleans.
pub fn bits_to_assignment(x: u64, n_vars: usize) -> Vec<bool> {
    (0..n_vars).map(|i| (x >> i) & 1 == 1).collect()
}

/// Pack booleans into a u64 (variable 0 = least significant bit).
pub fn assignment_to_bits(assign: &[bool]) -> u64 {
    assign
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
}

/// Render an assignment as a 0/1 string, variable 0 first.
pub fn assignment_to_string(assign: &[bool]) -> String {
    assign.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
