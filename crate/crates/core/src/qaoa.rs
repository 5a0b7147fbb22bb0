//! Alternating-operator circuits: state assembly, objective evaluation,
//! parameter optimization, and landscape scans.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mixers::{apply_mixer, MixerSpec};
use crate::optim::nelder_mead;
use crate::rng::SplitMix64;
use crate::statevector::{DiagonalCost, StateVector};

/// Paired angle sequences (gamma_1..gamma_p, beta_1..beta_p).
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::InvalidParams(format!(
                "{} gammas vs {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|a| !a.is_finite()) {
            return Err(Error::InvalidParams("non-finite angle".into()));
        }
        Ok(Self { gammas, betas })
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    /// Angles wrapped to (-pi, pi].
    pub fn wrapped(&self) -> Self {
        Self {
            gammas: self.gammas.iter().map(|&a| wrap_angle(a)).collect(),
            betas: self.betas.iter().map(|&a| wrap_angle(a)).collect(),
        }
    }
}

/// Wrap an angle to (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let y = a.rem_euclid(two_pi);
    if y > std::f64::consts::PI {
        y - two_pi
    } else {
        y
    }
}

/// The symmetry-reduced parameter lift.
///
/// Interprets `half` as (gamma_1..gamma_p) and pairs it with
/// beta_i = -gamma_{p+1-i} / 2. The one-half comes from the cost
/// normalization: tables store cut counts, whose spin-pair form carries a
/// coefficient 1/2 per edge, while the mixer rate is one full unit per
/// qubit. Halving the mixer angle puts the two rotation rates on equal
/// footing, and the optima of the even-ring instances then lie inside the
/// lifted submanifold (verified numerically in this module's tests and the
/// acceptance suite).
pub fn symmetric_lift(half: &[f64]) -> Result<QaoaParams> {
    if half.is_empty() {
        return Err(Error::InvalidParams("empty symmetric parameter set".into()));
    }
    let gammas = half.to_vec();
    let betas = half.iter().rev().map(|&g| -g / 2.0).collect();
    QaoaParams::new(gammas, betas)
}

/// Run the alternating circuit: p layers, phase first within each layer,
/// layer 1 first. With p = 0 the initial state is returned unchanged.
pub fn run_qaoa(
    cost: &DiagonalCost,
    mixer: &MixerSpec,
    init: &StateVector,
    params: &QaoaParams,
) -> Result<StateVector> {
    if init.num_qubits() != cost.num_qubits() {
        return Err(Error::DimensionMismatch {
            left: init.num_qubits(),
            right: cost.num_qubits(),
        });
    }
    mixer.validate(init.num_qubits())?;
    let mut state = init.clone();
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        state.apply_diagonal_phase(cost, gamma)?;
        apply_mixer(&mut state, mixer, beta)?;
    }
    Ok(state)
}

/// Achieved objective over the optimum, for minimized tables derived from
/// maximization instances: ratio = <-cost> / (-min cost).
///
/// Undefined (error) for constant tables and for tables whose minimum is
/// not negative.
pub fn approximation_ratio(state: &StateVector, cost: &DiagonalCost) -> Result<f64> {
    let min = cost.min();
    let max = cost.max();
    if min == max {
        return Err(Error::UndefinedRatio("constant cost table".into()));
    }
    if min >= 0.0 {
        return Err(Error::UndefinedRatio(
            "table minimum is not negative; not a minimized maximization instance".into(),
        ));
    }
    Ok(-state.expectation(cost)? / -min)
}

/// Settings for [`optimize_params`].
#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    /// Number of seeded restarts.
    pub restarts: usize,
    /// Search the symmetry-reduced p-dimensional submanifold.
    pub symmetric: bool,
    /// Master seed for restart starting points.
    pub seed: u64,
    /// Evaluation budget per restart.
    pub max_evals: u64,
    /// Initial simplex edge length, radians.
    pub simplex_size: f64,
    /// Convergence tolerance on the expectation.
    pub ftol: f64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            symmetric: false,
            seed: 0,
            max_evals: 500,
            simplex_size: 0.3,
            ftol: 1e-8,
        }
    }
}

/// Outcome of a parameter search.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaResult {
    pub expectation: f64,
    /// Defined only when the table has the minimized-maximization shape.
    pub ratio: Option<f64>,
    pub best_params: QaoaParams,
    pub evaluations: u64,
}

impl QaoaResult {
    /// Render the result JSON format. `ratio` is null when undefined.
    pub fn to_json(&self) -> String {
        let fl = crate::fmt::float;
        let list = |v: &[f64]| {
            v.iter().map(|&x| fl(x)).collect::<Vec<_>>().join(",")
        };
        format!(
            "{{\"expectation\":{},\"ratio\":{},\"gammas\":[{}],\"betas\":[{}],\"evaluations\":{}}}",
            fl(self.expectation),
            self.ratio.map_or("null".to_string(), fl),
            list(&self.best_params.gammas),
            list(&self.best_params.betas),
            self.evaluations
        )
    }
}

/// Multi-start simplex search over QAOA parameters at depth p.
///
/// Starting points are drawn uniformly from (-pi, pi]^d using the seeded
/// master stream (one substream per restart, in index order). Restarts run
/// independently (possibly in parallel); ties are broken by lowest
/// expectation, then lowest restart index, so results are reproducible for
/// any thread count. Budget exhaustion returns best-so-far.
pub fn optimize_params(
    cost: &DiagonalCost,
    mixer: &MixerSpec,
    init: &StateVector,
    p: usize,
    config: &OptimizeConfig,
) -> Result<QaoaResult> {
    if p == 0 {
        return Err(Error::InvalidParams("optimization needs p >= 1".into()));
    }
    mixer.validate(init.num_qubits())?;
    let dim = if config.symmetric { p } else { 2 * p };

    let mut master = SplitMix64::new(config.seed);
    let starts: Vec<Vec<f64>> = (0..config.restarts)
        .map(|_| {
            let mut rng = master.substream();
            (0..dim)
                .map(|_| rng.next_range(-std::f64::consts::PI, std::f64::consts::PI))
                .collect()
        })
        .collect();

    let objective = |x: &[f64]| -> f64 {
        let params = decode_point(x, p, config.symmetric);
        match run_qaoa(cost, mixer, init, &params) {
            Ok(state) => state.expectation(cost).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    };

    let runs: Vec<(usize, crate::optim::SimplexResult)> = starts
        .par_iter()
        .enumerate()
        .map(|(idx, x0)| {
            let r = nelder_mead(
                objective,
                x0,
                config.simplex_size,
                config.ftol,
                config.max_evals,
            );
            (idx, r)
        })
        .collect();

    let evaluations: u64 = runs.iter().map(|(_, r)| r.evaluations).sum();
    let best = runs
        .into_iter()
        .min_by(|(ia, ra), (ib, rb)| {
            ra.fx
                .partial_cmp(&rb.fx)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(ia.cmp(ib))
        })
        .expect("at least one restart");

    let params = decode_point(&best.1.x, p, config.symmetric).wrapped();
    let state = run_qaoa(cost, mixer, init, &params)?;
    let expectation = state.expectation(cost)?;
    let ratio = approximation_ratio(&state, cost).ok();
    Ok(QaoaResult {
        expectation,
        ratio,
        best_params: params,
        evaluations,
    })
}

fn decode_point(x: &[f64], p: usize, symmetric: bool) -> QaoaParams {
    if symmetric {
        symmetric_lift(x).expect("non-empty point")
    } else {
        QaoaParams {
            gammas: x[..p].to_vec(),
            betas: x[p..].to_vec(),
        }
    }
}

/// One axis of a landscape scan.
#[derive(Debug, Clone, Copy)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + i as f64 * step).collect()
    }
}

/// Row-major grid of expectation values from [`landscape_scan`].
///
/// `values[i * y.count + j]` is the expectation at (x_i, y_j), where the
/// coordinates are (gamma_1, gamma_2) for a symmetric scan (betas via
/// [`symmetric_lift`], depth 2) and (gamma, beta) otherwise (depth 1).
#[derive(Debug, Clone)]
pub struct LandscapeGrid {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Vec<f64>,
    pub symmetric: bool,
}

/// Scan a 2-d slice of parameter space. Deterministic; cells may evaluate
/// in parallel.
pub fn landscape_scan(
    cost: &DiagonalCost,
    mixer: &MixerSpec,
    init: &StateVector,
    x_axis: AxisSpec,
    y_axis: AxisSpec,
    symmetric: bool,
) -> Result<LandscapeGrid> {
    if x_axis.count < 2 || y_axis.count < 2 {
        return Err(Error::GridTooSmall {
            nx: x_axis.count,
            ny: y_axis.count,
        });
    }
    mixer.validate(init.num_qubits())?;
    let xs = x_axis.points();
    let ys = y_axis.points();
    let cells: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| {
            let params = if symmetric {
                symmetric_lift(&[xs[i], ys[j]]).expect("two coordinates")
            } else {
                QaoaParams {
                    gammas: vec![xs[i]],
                    betas: vec![ys[j]],
                }
            };
            let state = run_qaoa(cost, mixer, init, &params).expect("validated dimensions");
            state.expectation(cost).expect("validated dimensions")
        })
        .collect();
    Ok(LandscapeGrid {
        x: xs,
        y: ys,
        values,
        symmetric,
    })
}

impl LandscapeGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.y.len() + j]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Interior cells strictly below all 8 neighbors.
    pub fn strict_interior_minima(&self) -> Vec<(usize, usize)> {
        let (nx, ny) = (self.x.len(), self.y.len());
        let mut out = Vec::new();
        for i in 1..nx - 1 {
            for j in 1..ny - 1 {
                let v = self.value(i, j);
                let mut strict = true;
                'nb: for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let u = self.value((i as i64 + di) as usize, (j as i64 + dj) as usize);
                        if u <= v {
                            strict = false;
                            break 'nb;
                        }
                    }
                }
                if strict {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Group cells into 8-connected clusters.
    pub fn cluster(cells: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
        let mut clusters: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut assigned = vec![false; cells.len()];
        for start in 0..cells.len() {
            if assigned[start] {
                continue;
            }
            let mut cluster = vec![cells[start]];
            assigned[start] = true;
            let mut frontier = vec![cells[start]];
            while let Some((ci, cj)) = frontier.pop() {
                for (k, &(i, j)) in cells.iter().enumerate() {
                    if !assigned[k]
                        && (i as i64 - ci as i64).abs() <= 1
                        && (j as i64 - cj as i64).abs() <= 1
                    {
                        assigned[k] = true;
                        cluster.push((i, j));
                        frontier.push((i, j));
                    }
                }
            }
            clusters.push(cluster);
        }
        clusters
    }

    /// A cell is a saddle here if it has strictly higher and strictly lower
    /// 8-neighbors.
    pub fn is_saddle(&self, i: usize, j: usize) -> bool {
        let v = self.value(i, j);
        let (nx, ny) = (self.x.len() as i64, self.y.len() as i64);
        let mut above = false;
        let mut below = false;
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if a < 0 || b < 0 || a >= nx || b >= ny {
                    continue;
                }
                let u = self.value(a as usize, b as usize);
                if u > v {
                    above = true;
                }
                if u < v {
                    below = true;
                }
            }
        }
        above && below
    }

    /// Render the landscape CSV. Header is "gamma1,gamma2,expectation" for
    /// symmetric grids and "gamma,beta,expectation" otherwise; one row per
    /// cell, row-major.
    pub fn to_csv(&self) -> String {
        let fl = crate::fmt::float;
        let mut out = String::new();
        out.push_str(if self.symmetric {
            "gamma1,gamma2,expectation\n"
        } else {
            "gamma,beta,expectation\n"
        });
        for (i, &x) in self.x.iter().enumerate() {
            for (j, &y) in self.y.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", fl(x), fl(y), fl(self.value(i, j))));
            }
        }
        out
    }
}
