//! Command-line front end: reproducible experiment runs writing plot-ready
//! data files.
//!
//! Every command is a pure function of its flags, config file, and seeds:
//! identical inputs produce byte-identical outputs. Exit codes: 0 success,
//! 2 configuration error, 3 infeasible or oversize instance.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aoa_core::grover;
use aoa_core::qaoa::{self, AxisSpec, OptimizeConfig};
use aoa_core::qubo::{self, SaSchedule, SpanningTreeOptions};
use aoa_core::statevector::StateVector;
use aoa_core::{Error, Graph, MixerSpec, ProblemInstance};

mod report;

use report::solve_report_json;

#[derive(Parser)]
#[command(name = "aoa", version, about = "Alternating-operator-ansatz simulation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize circuit parameters for a problem instance and write the
    /// result JSON.
    Qaoa(QaoaArgs),
    /// Scan a 2-d parameter landscape and write the grid CSV.
    Landscape(LandscapeArgs),
    /// Measure oracle-search hitting times across sizes; write the per-step
    /// CSV and the fit JSON.
    Grover(GroverArgs),
    /// Spanning-tree penalty encodings: build artifacts or solve them.
    #[command(subcommand)]
    Qubo(QuboCommand),
}

#[derive(Subcommand)]
enum QuboCommand {
    /// Encode a graph and write the QUBO JSON plus the label sidecar.
    Build(QuboBuildArgs),
    /// Encode a graph, solve it, and write the solve report JSON.
    Solve(QuboSolveArgs),
}

/// Flags shared by commands that build a problem instance.
#[derive(Args, Clone)]
struct ProblemArgs {
    /// Problem kind: "ring", "maxcut", or "onehot".
    #[arg(long)]
    problem: Option<String>,
    /// Vertex count (ring problems).
    #[arg(long)]
    n: Option<usize>,
    /// Graph JSON path (maxcut / onehot problems).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Mixer JSON path; defaults to the transverse field.
    #[arg(long)]
    mixer: Option<PathBuf>,
}

#[derive(Args)]
struct QaoaArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Circuit depth p (0 runs the degenerate no-layer evaluation).
    #[arg(long)]
    p: Option<usize>,
    /// Search the symmetry-reduced submanifold.
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget per restart.
    #[arg(long)]
    max_evals: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Output path for the result JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file supplying defaults for any of the above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct LandscapeArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Scan the symmetric depth-2 submanifold (gamma1, gamma2) instead of
    /// the depth-1 (gamma, beta) plane.
    #[arg(long)]
    symmetric: bool,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long)]
    x_count: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    y_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y_max: Option<f64>,
    #[arg(long)]
    y_count: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Output path for the landscape CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GroverArgs {
    /// Sizes to measure: comma-separated ("4,6,8") or a range ("4..12").
    #[arg(long)]
    ns: Option<String>,
    #[arg(long)]
    gamma_scan: Option<usize>,
    #[arg(long)]
    threshold: Option<f64>,
    /// Per-size step budget; defaults to a generous sqrt-scale rule.
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Output path for the per-step CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Output path for the fit JSON.
    #[arg(long)]
    fit: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct QuboBuildArgs {
    /// Graph JSON path.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Optional per-vertex degree bound.
    #[arg(long)]
    delta: Option<usize>,
    /// Constraint weight A; defaults to B * (total |weight| + 1).
    #[arg(long)]
    penalty_a: Option<f64>,
    /// Objective weight B; defaults to 1.
    #[arg(long)]
    objective_b: Option<f64>,
    /// Output path for the QUBO JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output path for the variable-label sidecar JSON.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct QuboSolveArgs {
    /// Graph JSON path; the encoding is re-derived deterministically from
    /// the same inputs `build` uses.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    penalty_a: Option<f64>,
    #[arg(long)]
    objective_b: Option<f64>,
    /// "brute" (exact enumeration) or "sa" (annealing).
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    t_start: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Output path for the solve report JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Qaoa(args) => run_qaoa(args),
        Command::Landscape(args) => run_landscape(args),
        Command::Grover(args) => run_grover(args),
        Command::Qubo(QuboCommand::Build(args)) => run_qubo_build(args),
        Command::Qubo(QuboCommand::Solve(args)) => run_qubo_solve(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn config_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn instance_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 3,
        message: message.into(),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disconnected
            | Error::TooManyVariables { .. }
            | Error::NoHit { .. }
            | Error::QubitCount { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Config-file defaults: a JSON object keyed by the long flag names. Flags
/// set on the command line take precedence.
struct ConfigFile {
    values: serde_json::Map<String, serde_json::Value>,
}

impl ConfigFile {
    fn load(path: &Option<PathBuf>) -> Result<Self, CliError> {
        let values = match path {
            None => serde_json::Map::new(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| config_error(format!("cannot read config {}: {e}", p.display())))?;
                serde_json::from_str::<serde_json::Value>(&text)
                    .map_err(|e| config_error(format!("bad config JSON: {e}")))?
                    .as_object()
                    .cloned()
                    .ok_or_else(|| config_error("config file must hold a JSON object"))?
            }
        };
        Ok(Self { values })
    }

    fn fill<T: serde::de::DeserializeOwned>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| config_error(format!("config key {key:?}: {e}"))),
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| config_error(format!("missing required setting --{what}")))
}

fn install_threads(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let threads = threads.unwrap_or(1).max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| config_error(format!("thread pool: {e}")))
}

fn load_instance(args: &ProblemArgs, cfg: &ConfigFile) -> Result<ProblemInstance, CliError> {
    let problem = require(cfg.fill(args.problem.clone(), "problem")?, "problem")?;
    let n = cfg.fill(args.n, "n")?;
    let graph_path = cfg.fill(args.graph.clone(), "graph")?;
    let graph = match &graph_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| config_error(format!("cannot read graph {}: {e}", p.display())))?;
            Some(Graph::from_json(&text)?)
        }
        None => None,
    };
    match problem.as_str() {
        "ring" => {
            let n = require(n, "n")?;
            Ok(ProblemInstance::ring_of_disagrees(n)?)
        }
        "maxcut" => {
            let graph = require(graph, "graph")?;
            Ok(ProblemInstance::maxcut(graph))
        }
        "onehot" => {
            let graph = require(graph, "graph")?;
            Ok(ProblemInstance::one_hot_demo(graph)?)
        }
        other => Err(config_error(format!("unknown problem kind {other:?}"))),
    }
}

fn load_mixer(args: &ProblemArgs, cfg: &ConfigFile) -> Result<MixerSpec, CliError> {
    match cfg.fill(args.mixer.clone(), "mixer")? {
        None => Ok(MixerSpec::TransverseField),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| config_error(format!("cannot read mixer {}: {e}", p.display())))?;
            Ok(MixerSpec::from_json(&text)?)
        }
    }
}

fn write_output(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| config_error(format!("cannot write {}: {e}", path.display())))
}

fn run_qaoa(args: QaoaArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(&args.config)?;
    let out = require(cfg.fill(args.out.clone(), "out")?, "out")?;
    let p = require(cfg.fill(args.p, "p")?, "p")?;
    let symmetric = args.symmetric || cfg.fill(None::<bool>, "symmetric")?.unwrap_or(false);
    let instance = load_instance(&args.problem, &cfg)?;
    let mixer = load_mixer(&args.problem, &cfg)?;
    let cost = instance.cost_table()?;
    let init = StateVector::uniform(instance.num_qubits())?;

    let result = if p == 0 {
        // Degenerate run: no layers, the uniform-state expectation is the
        // plain mean of the cost table.
        let expectation = init.expectation(&cost)?;
        qaoa::QaoaResult {
            expectation,
            ratio: qaoa::approximation_ratio(&init, &cost).ok(),
            best_params: qaoa::QaoaParams::new(vec![], vec![])?,
            evaluations: 0,
        }
    } else {
        let config = OptimizeConfig {
            restarts: cfg.fill(args.restarts, "restarts")?.unwrap_or(32),
            symmetric,
            seed: cfg.fill(args.seed, "seed")?.unwrap_or(0),
            max_evals: cfg.fill(args.max_evals, "max_evals")?.unwrap_or(500),
            ..Default::default()
        };
        let pool = install_threads(cfg.fill(args.threads, "threads")?)?;
        pool.install(|| qaoa::optimize_params(&cost, &mixer, &init, p, &config))?
    };
    write_output(&out, &(result.to_json() + "\n"))
}

fn run_landscape(args: LandscapeArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(&args.config)?;
    let out = require(cfg.fill(args.out.clone(), "out")?, "out")?;
    let symmetric = args.symmetric || cfg.fill(None::<bool>, "symmetric")?.unwrap_or(false);
    let instance = load_instance(&args.problem, &cfg)?;
    let mixer = load_mixer(&args.problem, &cfg)?;
    let cost = instance.cost_table()?;
    let init = StateVector::uniform(instance.num_qubits())?;

    let pi = std::f64::consts::PI;
    let x_axis = AxisSpec {
        min: cfg.fill(args.x_min, "x_min")?.unwrap_or(-pi),
        max: cfg.fill(args.x_max, "x_max")?.unwrap_or(pi),
        count: cfg.fill(args.x_count, "x_count")?.unwrap_or(101),
    };
    let y_axis = AxisSpec {
        min: cfg.fill(args.y_min, "y_min")?.unwrap_or(-pi),
        max: cfg.fill(args.y_max, "y_max")?.unwrap_or(pi),
        count: cfg.fill(args.y_count, "y_count")?.unwrap_or(101),
    };
    let pool = install_threads(cfg.fill(args.threads, "threads")?)?;
    let grid =
        pool.install(|| qaoa::landscape_scan(&cost, &mixer, &init, x_axis, y_axis, symmetric))?;
    write_output(&out, &grid.to_csv())
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| config_error(format!("bad size range {text:?}")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| config_error(format!("bad size range {text:?}")))?;
        if lo > hi {
            return Err(config_error(format!("empty size range {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| config_error(format!("bad size list entry {s:?}")))
        })
        .collect()
}

fn run_grover(args: GroverArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(&args.config)?;
    let csv_path = require(cfg.fill(args.csv.clone(), "csv")?, "csv")?;
    let fit_path = require(cfg.fill(args.fit.clone(), "fit")?, "fit")?;
    let ns_text = require(cfg.fill(args.ns.clone(), "ns")?, "ns")?;
    let ns = parse_sizes(&ns_text)?;
    let gamma_scan = cfg.fill(args.gamma_scan, "gamma_scan")?.unwrap_or(64);
    let threshold = cfg.fill(args.threshold, "threshold")?.unwrap_or(0.5);
    let max_steps = cfg.fill(args.max_steps, "max_steps")?;

    let pool = install_threads(cfg.fill(args.threads, "threads")?)?;
    let fit = pool.install(|| {
        grover::scaling_fit_with_budget(&ns, gamma_scan, threshold, |n| {
            max_steps.unwrap_or_else(|| grover::default_step_budget(n))
        })
    })?;
    write_output(&csv_path, &fit.to_csv())?;
    write_output(&fit_path, &(fit.to_json() + "\n"))
}

fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read graph {}: {e}", path.display())))?;
    Ok(Graph::from_json(&text)?)
}

fn run_qubo_build(args: QuboBuildArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(&args.config)?;
    let out = require(cfg.fill(args.out.clone(), "out")?, "out")?;
    let sidecar = require(cfg.fill(args.sidecar.clone(), "sidecar")?, "sidecar")?;
    let graph = load_graph(&require(cfg.fill(args.graph.clone(), "graph")?, "graph")?)?;
    let options = SpanningTreeOptions {
        penalty_a: cfg.fill(args.penalty_a, "penalty_a")?,
        objective_b: cfg.fill(args.objective_b, "objective_b")?,
        delta: cfg.fill(args.delta, "delta")?,
    };
    let (pubo, enc) = qubo::spanning_tree_pubo(&graph, &options)?;
    let q = enc.quadratized(&pubo)?;
    write_output(&out, &(q.to_json() + "\n"))?;
    write_output(&sidecar, &(enc.sidecar_json() + "\n"))
}

fn run_qubo_solve(args: QuboSolveArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(&args.config)?;
    let out = require(cfg.fill(args.out.clone(), "out")?, "out")?;
    let method = require(cfg.fill(args.method.clone(), "method")?, "method")?;
    let graph = load_graph(&require(cfg.fill(args.graph.clone(), "graph")?, "graph")?)?;
    let options = SpanningTreeOptions {
        penalty_a: cfg.fill(args.penalty_a, "penalty_a")?,
        objective_b: cfg.fill(args.objective_b, "objective_b")?,
        delta: cfg.fill(args.delta, "delta")?,
    };
    let (pubo, enc) = qubo::spanning_tree_pubo(&graph, &options)?;
    let q = enc.quadratized(&pubo)?;

    let (energy, assignment) = match method.as_str() {
        "brute" => {
            let (energy, argmins) = if q.n_vars() <= qubo::BRUTE_FORCE_MAX_VARS {
                qubo::brute_force_minimize(&q)?
            } else if enc.n_original() <= qubo::BRUTE_FORCE_MAX_VARS {
                // Ancillas never couple to each other, so exact enumeration
                // over the original block with optimal ancilla completion
                // covers the full space.
                qubo::brute_force_minimize_with_free_tail(&q, enc.n_original())?
            } else {
                return Err(instance_error(format!(
                    "{} variables is beyond exact enumeration",
                    q.n_vars()
                )));
            };
            (energy, qubo::bits_to_assignment(argmins[0], q.n_vars()))
        }
        "sa" => {
            let schedule = SaSchedule {
                t_start: cfg.fill(args.t_start, "t_start")?,
                t_end: cfg.fill(args.t_end, "t_end")?.unwrap_or(0.01),
                sweeps: cfg.fill(args.sweeps, "sweeps")?.unwrap_or(2000),
            };
            let seed = cfg.fill(args.seed, "seed")?.unwrap_or(0);
            let restarts = cfg.fill(args.restarts, "restarts")?.unwrap_or(64);
            let pool = install_threads(cfg.fill(args.threads, "threads")?)?;
            let result = pool
                .install(|| qubo::simulated_annealing_restarts(&q, &schedule, seed, restarts))?;
            (result.energy, result.assignment)
        }
        other => return Err(config_error(format!("unknown solve method {other:?}"))),
    };
    let decoded = qubo::decode_tree(&assignment, &enc);
    write_output(&out, &(solve_report_json(energy, &assignment, &decoded) + "\n"))
}
