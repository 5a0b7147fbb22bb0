//! Dense-matrix reference path for oracle tests.
//!
//! Everything here works on full 2^n x 2^n complex matrices and plain
//! matrix-vector products, independent of the bit-kernel implementation it
//! cross-checks. Usable only for small n.

#![allow(dead_code)]

use num_complex::Complex64;

use aoa_core::mixers::{MixerSpec, MixerTerm};
use aoa_core::qaoa::QaoaParams;
use aoa_core::statevector::DiagonalCost;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn zero(dim: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); dim]; dim]
}

pub fn identity(dim: usize) -> Matrix {
    let mut m = zero(dim);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = zero(dim);
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

/// exp(-i gamma diag(f)) as a dense matrix.
pub fn dense_phase(cost: &DiagonalCost, gamma: f64) -> Matrix {
    let dim = cost.values().len();
    let mut m = zero(dim);
    for (x, &f) in cost.values().iter().enumerate() {
        m[x][x] = Complex64::from_polar(1.0, -gamma * f);
    }
    m
}

/// exp(-i gamma |target><target|) as a dense matrix.
pub fn dense_indicator_phase(n: usize, target: u64, gamma: f64) -> Matrix {
    let mut m = identity(1 << n);
    m[target as usize][target as usize] = Complex64::from_polar(1.0, -gamma);
    m
}

/// exp(-i beta X_q) on one qubit of an n-qubit register.
pub fn dense_rx(n: usize, q: usize, beta: f64) -> Matrix {
    let dim = 1usize << n;
    let bit = 1usize << q;
    let c = Complex64::new(beta.cos(), 0.0);
    let mis = Complex64::new(0.0, -beta.sin());
    let mut m = zero(dim);
    for col in 0..dim {
        m[col][col] = c;
        m[col ^ bit][col] = mis;
    }
    m
}

/// exp(-i beta sum_j X_j).
pub fn dense_rx_all(n: usize, beta: f64) -> Matrix {
    let mut m = identity(1 << n);
    for q in 0..n {
        m = mat_mul(&dense_rx(n, q, beta), &m);
    }
    m
}

/// exp(-i beta (X_i X_j + Y_i Y_j)/2): identity on equal bits, a 2x2
/// rotation inside each {|01>, |10>} pair.
pub fn dense_xy_pair(n: usize, i: usize, j: usize, beta: f64) -> Matrix {
    let dim = 1usize << n;
    let (bi, bj) = (1usize << i, 1usize << j);
    let c = Complex64::new(beta.cos(), 0.0);
    let mis = Complex64::new(0.0, -beta.sin());
    let mut m = zero(dim);
    for col in 0..dim {
        let has_i = col & bi != 0;
        let has_j = col & bj != 0;
        if has_i == has_j {
            m[col][col] = Complex64::new(1.0, 0.0);
        } else {
            m[col][col] = c;
            m[(col ^ bi) ^ bj][col] = mis;
        }
    }
    m
}

/// Dense Hamiltonian of a mixer term (X_q, or (X_iX_j + Y_iY_j)/2).
pub fn dense_term_hamiltonian(n: usize, term: &MixerTerm) -> Matrix {
    let dim = 1usize << n;
    let mut h = zero(dim);
    match *term {
        MixerTerm::X(q) => {
            let bit = 1usize << q;
            for col in 0..dim {
                h[col ^ bit][col] = Complex64::new(1.0, 0.0);
            }
        }
        MixerTerm::XyPair(i, j) => {
            let (bi, bj) = (1usize << i, 1usize << j);
            for col in 0..dim {
                let has_i = col & bi != 0;
                let has_j = col & bj != 0;
                if has_i != has_j {
                    h[(col ^ bi) ^ bj][col] = Complex64::new(1.0, 0.0);
                }
            }
        }
    }
    h
}

/// Dense unitary for one mixer application, multiplying factors in the same
/// application order the kernels use (first-applied factor rightmost).
pub fn dense_mixer(n: usize, spec: &MixerSpec, beta: f64) -> Matrix {
    let mut u = identity(1 << n);
    let apply = |factor: Matrix, u: &mut Matrix| {
        *u = mat_mul(&factor, u);
    };
    match spec {
        MixerSpec::TransverseField => {
            for q in 0..n {
                apply(dense_rx(n, q, beta), &mut u);
            }
        }
        MixerSpec::XYRingGroups(groups) => {
            for group in groups {
                if group.len() < 2 {
                    continue;
                }
                for k in 0..group.len() {
                    let i = group[k];
                    let j = group[(k + 1) % group.len()];
                    apply(dense_xy_pair(n, i, j, beta), &mut u);
                }
            }
        }
        MixerSpec::OrderedProduct(terms) => {
            for term in terms {
                let factor = match *term {
                    MixerTerm::X(q) => dense_rx(n, q, beta),
                    MixerTerm::XyPair(i, j) => dense_xy_pair(n, i, j, beta),
                };
                apply(factor, &mut u);
            }
        }
    }
    u
}

/// Full alternating-circuit unitary: U = U_M(b_p) U_P(g_p) ... U_M(b_1) U_P(g_1).
pub fn dense_circuit(n: usize, cost: &DiagonalCost, spec: &MixerSpec, params: &QaoaParams) -> Matrix {
    let mut u = identity(1 << n);
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        u = mat_mul(&dense_phase(cost, gamma), &u);
        u = mat_mul(&dense_mixer(n, spec, beta), &u);
    }
    u
}

/// Matrix exponential exp(A) by scaling-and-squaring with a Taylor series.
pub fn dense_expm(a: &Matrix) -> Matrix {
    let dim = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = norm.log2().ceil().max(0.0) as u32 + 2;
    let scale = Complex64::new((0.5f64).powi(squarings as i32), 0.0);
    let scaled: Matrix = a
        .iter()
        .map(|row| row.iter().map(|x| x * scale).collect())
        .collect();

    let mut result = identity(dim);
    let mut term = identity(dim);
    for k in 1..=24 {
        term = mat_mul(&term, &scaled);
        let inv_k = Complex64::new(1.0 / k as f64, 0.0);
        for (r, row) in term.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v *= inv_k;
                result[r][c] += *v;
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

pub fn uniform_vector(n: usize) -> Vec<Complex64> {
    let dim = 1usize << n;
    vec![Complex64::new((dim as f64).sqrt().recip(), 0.0); dim]
}

pub fn expectation(v: &[Complex64], cost: &DiagonalCost) -> f64 {
    v.iter()
        .zip(cost.values())
        .map(|(a, &f)| a.norm_sqr() * f)
        .sum()
}
