//! Classical baselines: exact enumeration and single-spin-flip annealing.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

use super::{assignment_to_bits, bits_to_assignment, Qubo};

/// Enumeration cap, mirroring the state-vector qubit cap.
pub const BRUTE_FORCE_MAX_VARS: usize = 26;

/// Exact global minimum by enumeration; all tied argmins, ascending.
///
/// Walks assignments in Gray-code order with incremental energy deltas.
/// Candidates within 1e-9 of the running best are re-evaluated from
/// scratch before comparing, so accumulated rounding cannot merge or split
/// ties; for integer-coefficient instances arithmetic is exact throughout.
pub fn brute_force_minimize(q: &Qubo) -> Result<(f64, Vec<u64>)> {
    let n = q.n_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables {
            n_vars: n,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    if n == 0 {
        return Ok((q.offset(), vec![0]));
    }
    let adj = q.adjacency();
    let mut assign = vec![false; n];
    let mut energy = q.energy(&assign);
    let mut best = energy;
    let mut argmins: Vec<u64> = vec![0];

    let total = 1u64 << n;
    let mut code = 0u64; // Gray code of the current assignment
    for k in 1..total {
        let flip = k.trailing_zeros() as usize; // next Gray step flips this bit
        let delta = flip_delta(q, &adj, &assign, flip);
        assign[flip] = !assign[flip];
        code ^= 1 << flip;
        energy += delta;

        if energy <= best + 1e-9 {
            // Exact re-evaluation before any comparison that matters.
            let exact = q.energy(&assign);
            energy = exact;
            if exact < best {
                best = exact;
                argmins.clear();
                argmins.push(code);
            } else if exact == best {
                argmins.push(code);
            }
        }
    }
    argmins.sort_unstable();
    Ok((best, argmins))
}

/// Energy change from flipping variable `i` in `assign`.
fn flip_delta(q: &Qubo, adj: &[Vec<(u32, f64)>], assign: &[bool], i: usize) -> f64 {
    let mut field = q.linear()[i];
    for &(j, c) in &adj[i] {
        if assign[j as usize] {
            field += c;
        }
    }
    if assign[i] {
        -field
    } else {
        field
    }
}

/// Exact minimization when only the first `n_head` variables interact with
/// each other: tail variables (quadratization ancillas) may couple to head
/// variables but not to one another, so for any head assignment the optimal
/// tail completion sets each tail variable independently by the sign of its
/// effective field. Enumerates head assignments in Gray-code order with the
/// tail contribution maintained incrementally.
///
/// Equivalent to full enumeration over all `n_vars` variables. Returns the
/// minimum and every tied full assignment (head bits plus its optimal
/// completion), ascending; a tail variable with an exactly zero field is
/// left clear.
pub fn brute_force_minimize_with_free_tail(q: &Qubo, n_head: usize) -> Result<(f64, Vec<u64>)> {
    let n = q.n_vars();
    if n_head > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables {
            n_vars: n_head,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    if n > 64 {
        return Err(Error::TooManyVariables { n_vars: n, max: 64 });
    }
    if n_head >= n {
        return brute_force_minimize(q);
    }
    for &(i, j) in q.quadratic().keys() {
        if i as usize >= n_head && j as usize >= n_head {
            return Err(Error::Format(format!(
                "tail variables {i} and {j} are coupled; free-tail enumeration needs an independent tail"
            )));
        }
    }

    let adj = q.adjacency();
    let n_tail = n - n_head;
    let mut head = vec![false; n_head];
    // Effective field of each tail variable under the current head.
    let mut field: Vec<f64> = (0..n_tail).map(|k| q.linear()[n_head + k]).collect();
    let mut tail_sum: f64 = field.iter().map(|&f| f.min(0.0)).sum();
    // Head-only energy (offset + head linear + head-head quadratic).
    let mut base = q.offset();

    let exact_energy = |head_code: u64, q: &Qubo, adj: &[Vec<(u32, f64)>]| -> (f64, u64) {
        let mut full = bits_to_assignment(head_code, q.n_vars());
        for k in 0..q.n_vars() - n_head {
            let i = n_head + k;
            let mut f = q.linear()[i];
            for &(j, c) in &adj[i] {
                if full[j as usize] {
                    f += c;
                }
            }
            full[i] = f < 0.0;
        }
        (q.energy(&full), assignment_to_bits(&full))
    };

    let (mut best, mut best_code) = exact_energy(0, q, &adj);
    let mut argmins = vec![best_code];
    let mut code = 0u64;
    let total = 1u64 << n_head;
    for step in 1..total {
        let flip = step.trailing_zeros() as usize;
        // Head-only delta.
        let mut local = q.linear()[flip];
        for &(j, c) in &adj[flip] {
            if (j as usize) < n_head && head[j as usize] {
                local += c;
            }
        }
        let sign = if head[flip] { -1.0 } else { 1.0 };
        base += sign * local;
        head[flip] = !head[flip];
        code ^= 1 << flip;
        // Tail fields touched by this head variable.
        for &(j, c) in &adj[flip] {
            if (j as usize) >= n_head {
                let k = j as usize - n_head;
                let old = field[k];
                let new = old + sign * c;
                tail_sum += new.min(0.0) - old.min(0.0);
                field[k] = new;
            }
        }

        let energy = base + tail_sum;
        if energy <= best + 1e-9 {
            let (exact, full_code) = exact_energy(code, q, &adj);
            if exact < best {
                best = exact;
                argmins.clear();
                argmins.push(full_code);
                best_code = full_code;
            } else if exact == best && full_code != best_code {
                argmins.push(full_code);
            }
        }
    }
    argmins.sort_unstable();
    argmins.dedup();
    Ok((best, argmins))
}

/// Annealing schedule. Temperatures interpolate geometrically from
/// `t_start` to `t_end` across sweeps; one sweep proposes n_vars
/// single-variable flips at uniformly random positions.
#[derive(Debug, Clone, Copy)]
pub struct SaSchedule {
    /// Defaults to 10 * max |coefficient| when None.
    pub t_start: Option<f64>,
    pub t_end: f64,
    pub sweeps: usize,
}

impl Default for SaSchedule {
    fn default() -> Self {
        Self {
            t_start: None,
            t_end: 0.01,
            sweeps: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaResult {
    pub energy: f64,
    pub assignment: Vec<bool>,
}

/// Single-spin-flip Metropolis annealing. Deterministic for a fixed seed:
/// the initial assignment, proposal order, and acceptance draws all come
/// from one SplitMix64 stream seeded with `seed`. Returns the best
/// configuration seen at any point.
pub fn simulated_annealing(q: &Qubo, schedule: &SaSchedule, seed: u64) -> Result<SaResult> {
    if schedule.sweeps == 0 {
        return Err(Error::InvalidParams("sweeps must be at least 1".into()));
    }
    let t_start = schedule
        .t_start
        .unwrap_or_else(|| 10.0 * q.max_abs_coefficient().max(0.1));
    if !(schedule.t_end > 0.0 && t_start >= schedule.t_end) {
        return Err(Error::InvalidParams(
            "need t_start >= t_end > 0".into(),
        ));
    }

    let n = q.n_vars();
    let mut rng = SplitMix64::new(seed);
    let mut assign: Vec<bool> = (0..n).map(|_| rng.next_u64() & 1 == 1).collect();
    let adj = q.adjacency();
    let mut energy = q.energy(&assign);
    let mut best = energy;
    let mut best_assign = assign.clone();

    let ratio = schedule.t_end / t_start;
    for sweep in 0..schedule.sweeps {
        let temp = t_start * ratio.powf(sweep as f64 / schedule.sweeps as f64);
        let inv_t = 1.0 / temp;
        for _ in 0..n.max(1) {
            let i = rng.next_below(n.max(1));
            if n == 0 {
                break;
            }
            let delta = flip_delta(q, &adj, &assign, i);
            if delta <= 0.0 || rng.next_f64() < (-delta * inv_t).exp() {
                assign[i] = !assign[i];
                energy += delta;
                if energy < best {
                    best = energy;
                    best_assign.copy_from_slice(&assign);
                }
            }
        }
    }
    // Refresh against accumulated float drift before reporting.
    let exact = q.energy(&best_assign);
    Ok(SaResult {
        energy: exact,
        assignment: best_assign,
    })
}

/// Best of `restarts` annealing runs; per-run seeds are drawn in index
/// order from a master stream seeded with `seed`, and ties keep the lowest
/// restart index.
pub fn simulated_annealing_restarts(
    q: &Qubo,
    schedule: &SaSchedule,
    seed: u64,
    restarts: usize,
) -> Result<SaResult> {
    use rayon::prelude::*;
    let mut master = SplitMix64::new(seed);
    let seeds: Vec<u64> = (0..restarts.max(1)).map(|_| master.next_u64()).collect();
    let runs: Vec<SaResult> = seeds
        .par_iter()
        .map(|&s| simulated_annealing(q, schedule, s))
        .collect::<Result<_>>()?;
    Ok(runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.energy
                .partial_cmp(&b.energy)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(ia.cmp(ib))
        })
        .map(|(_, r)| r)
        .expect("at least one restart"))
}
