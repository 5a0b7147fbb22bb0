//! Oracle-search iteration built from alternating phase and mixing factors,
//! and the empirical query-scaling measurement.
//!
//! One search step applies two resonant kernels:
//!
//! ```text
//!   W(gamma) = [ e^{-i (pi/3n) H_M} e^{-i gamma H_P} ]^2
//! ```
//!
//! with H_M the transverse field sum_j X_j and H_P the diagonal projector
//! onto the target bitstring; each step contains two oracle-phase factors.
//!
//! Why this form works: under e^{-i beta H_M} the top and bottom H_M bands
//! pick up phases e^{-+ i n beta}, and the uniform state lives on the top
//! band while the target couples to both edges with strength sqrt(2/N).
//! Amplitude accumulates on the target exactly when the per-kernel oracle
//! phase cancels the band drift, gamma = (n-1) beta (mod 2pi) after the
//! level shift, which the gamma scan locates inside (0, pi]. The mixing
//! angle beta = pi/(3n) keeps that resonance wide enough for a 64-point
//! scan and the hitting times on the sqrt(N) scale through n = 12.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::statevector::StateVector;

/// Success-probability trace of repeated W applications.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverRun {
    pub n: usize,
    pub target: u64,
    pub gamma: f64,
    /// trace[k] is the success probability after k+1 applications.
    pub trace: Vec<f64>,
}

/// Mixing angle of each kernel factor at a given qubit count.
pub fn mixer_angle(n: usize) -> f64 {
    std::f64::consts::PI / (3.0 * n as f64)
}

/// Apply one W(gamma) step (two oracle queries) in place.
pub fn grover_step(state: &mut StateVector, target: u64, gamma: f64) -> Result<()> {
    let beta = mixer_angle(state.num_qubits());
    for _ in 0..2 {
        state.apply_indicator_phase(target, gamma)?; // e^{-i gamma H_P}
        state.apply_rx_all(beta); // e^{-i (pi/3n) H_M}
    }
    Ok(())
}

/// Run max_steps applications of W from the uniform state, recording the
/// success probability after each.
pub fn run_grover(n: usize, target: u64, gamma: f64, max_steps: usize) -> Result<GroverRun> {
    if max_steps == 0 {
        return Err(Error::InvalidParams("max_steps must be at least 1".into()));
    }
    let mut state = StateVector::uniform(n)?;
    if target >= state.dim() as u64 {
        return Err(Error::IndexOutOfRange { index: target, n });
    }
    let mut trace = Vec::with_capacity(max_steps);
    for _ in 0..max_steps {
        grover_step(&mut state, target, gamma)?;
        trace.push(state.probability(target));
    }
    Ok(GroverRun {
        n,
        target,
        gamma,
        trace,
    })
}

/// Smallest k (1-based) with trace[k-1] >= threshold, or None.
pub fn first_hit(run: &GroverRun, threshold: f64) -> Option<usize> {
    run.trace.iter().position(|&p| p >= threshold).map(|i| i + 1)
}

/// The uniform gamma grid over (0, pi]: pi * k / count for k = 1..=count.
pub fn gamma_grid(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| std::f64::consts::PI * k as f64 / count as f64)
        .collect()
}

/// Step budget for the scaling measurement at a given n: generous slack
/// over the sqrt(N)-scale hitting times.
pub fn default_step_budget(n: usize) -> usize {
    let sqrt_dim = ((1u64 << n) as f64).sqrt().ceil() as usize;
    (8 * sqrt_dim).max(64)
}

/// Per-size outcome of the scaling measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct PerSize {
    pub n: usize,
    /// Fewest steps to reach the threshold, minimized over the gamma grid.
    pub t: usize,
    /// The smallest gamma attaining that minimum.
    pub gamma: f64,
    /// The trace for that gamma.
    pub trace: Vec<f64>,
}

/// Least-squares fit of log2 T(n) against n.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub per_n: Vec<PerSize>,
}

impl ScalingFit {
    /// Render the fit summary JSON.
    pub fn to_json(&self) -> String {
        let fl = crate::fmt::float;
        let per: Vec<String> = self
            .per_n
            .iter()
            .map(|p| {
                format!(
                    "{{\"n\":{},\"T\":{},\"gamma\":{}}}",
                    p.n,
                    p.t,
                    fl(p.gamma)
                )
            })
            .collect();
        format!(
            "{{\"slope\":{},\"intercept\":{},\"per_n\":[{}]}}",
            fl(self.slope),
            fl(self.intercept),
            per.join(",")
        )
    }

    /// Render the per-step CSV ("n,gamma,step,success_probability"), one
    /// block per size, using the full recorded trace of the best gamma.
    pub fn to_csv(&self) -> String {
        let fl = crate::fmt::float;
        let mut out = String::from("n,gamma,step,success_probability\n");
        for p in &self.per_n {
            for (k, &prob) in p.trace.iter().enumerate() {
                out.push_str(&format!("{},{},{},{}\n", p.n, fl(p.gamma), k + 1, fl(prob)));
            }
        }
        out
    }
}

/// Measure T(n) for each size and fit log2 T against n.
///
/// The target is fixed at 0 for every run: success probabilities are
/// independent of the target (bit-flip conjugation maps any target to any
/// other while fixing the uniform start and the mixer).
pub fn scaling_fit(ns: &[usize], gamma_scan: usize, threshold: f64) -> Result<ScalingFit> {
    scaling_fit_with_budget(ns, gamma_scan, threshold, default_step_budget)
}

/// As [`scaling_fit`], with an explicit per-size step budget.
pub fn scaling_fit_with_budget(
    ns: &[usize],
    gamma_scan: usize,
    threshold: f64,
    budget: impl Fn(usize) -> usize,
) -> Result<ScalingFit> {
    {
        let mut distinct: Vec<usize> = ns.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 4 {
            return Err(Error::NotEnoughPoints {
                got: distinct.len(),
                need: 4,
            });
        }
    }
    if !(0.0 < threshold && threshold < 1.0) {
        return Err(Error::InvalidParams("threshold must lie in (0, 1)".into()));
    }

    let mut per_n = Vec::with_capacity(ns.len());
    let mut missing = Vec::new();
    for &n in ns {
        let gammas = gamma_grid(gamma_scan);
        let max_steps = budget(n);
        let runs: Vec<(usize, GroverRun)> = gammas
            .par_iter()
            .enumerate()
            .map(|(gi, &gamma)| (gi, run_grover(n, 0, gamma, max_steps).expect("valid run")))
            .collect();
        let best = runs
            .iter()
            .filter_map(|(gi, run)| first_hit(run, threshold).map(|t| (t, *gi)))
            .min();
        match best {
            Some((t, gi)) => per_n.push(PerSize {
                n,
                t,
                gamma: gammas[gi],
                trace: runs[gi].1.trace.clone(),
            }),
            None => missing.push(n),
        }
    }
    if !missing.is_empty() {
        return Err(Error::NoHit { ns: missing });
    }

    let points: Vec<(f64, f64)> = per_n
        .iter()
        .map(|p| (p.n as f64, (p.t as f64).log2()))
        .collect();
    let (slope, intercept) = least_squares(&points);
    Ok(ScalingFit {
        slope,
        intercept,
        per_n,
    })
}

/// Ordinary least squares y = slope * x + intercept.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Deterministic spot-check used by the invariant suite: traces coincide
/// for any two targets.
pub fn traces_match_for_targets(n: usize, gamma: f64, steps: usize, seed: u64) -> Result<f64> {
    let mut rng = SplitMix64::new(seed);
    let dim = 1u64 << n;
    let t1 = rng.next_u64() % dim;
    let t2 = rng.next_u64() % dim;
    let a = run_grover(n, t1, gamma, steps)?;
    let b = run_grover(n, t2, gamma, steps)?;
    Ok(a.trace
        .iter()
        .zip(&b.trace)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
