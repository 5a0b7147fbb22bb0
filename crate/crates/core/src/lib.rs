//! Simulation toolkit for alternating-operator circuits on a dense
//! state-vector core, with a QUBO encoder/solver subsystem and classical
//! baselines.
//!
//! Conventions used throughout:
//!
//! * qubit 0 is the least significant bit of a basis index;
//! * unitaries follow `U(theta) = exp(-i theta H)`;
//! * optimization is internally minimization — maximization instances are
//!   negated when materialized into cost tables.

pub mod error;
pub mod fmt;
pub mod grover;
pub mod mixers;
pub mod optim;
pub mod problems;
pub mod qaoa;
pub mod qubo;
pub mod rng;
pub mod statevector;

pub use error::{Error, Result};
pub use mixers::{apply_mixer, feasible_onehot_predicate, MixerSpec, MixerTerm};
pub use problems::{maxcut_value, ring_graph, Graph, ProblemInstance, ProblemKind, Sense};
pub use qaoa::{
    approximation_ratio, landscape_scan, optimize_params, run_qaoa, symmetric_lift, AxisSpec,
    LandscapeGrid, OptimizeConfig, QaoaParams, QaoaResult,
};
pub use statevector::{DiagonalCost, StateVector, MAX_QUBITS};
