//! The qubo-solve report format.

use aoa_core::fmt::float;
use aoa_core::qubo::{assignment_to_string, DecodedTree};

/// `{"energy":..., "bitstring":"...", "decoded_edges":[[u,v],...],
///   "feasible":bool, "violations":[...]}`
pub fn solve_report_json(energy: f64, assignment: &[bool], decoded: &DecodedTree) -> String {
    let edges: Vec<String> = decoded
        .edges
        .iter()
        .map(|&(u, v)| format!("[{u},{v}]"))
        .collect();
    let violations: Vec<String> = decoded
        .violations
        .iter()
        .map(|v| format!("\"{v}\""))
        .collect();
    format!(
        "{{\"energy\":{},\"bitstring\":\"{}\",\"decoded_edges\":[{}],\"feasible\":{},\"violations\":[{}]}}",
        float(energy),
        assignment_to_string(assignment),
        edges.join(","),
        decoded.feasible(),
        violations.join(",")
    )
}
