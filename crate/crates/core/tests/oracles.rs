//! Cross-checks of the bit-kernel simulation against an independent dense
//! matrix-product path.

mod common;

use num_complex::Complex64;

use aoa_core::grover;
use aoa_core::mixers::{apply_mixer, MixerSpec, MixerTerm};
use aoa_core::qaoa::{run_qaoa, QaoaParams};
use aoa_core::rng::SplitMix64;
use aoa_core::statevector::{DiagonalCost, StateVector};

use common::*;

fn random_cost(n: usize, rng: &mut SplitMix64) -> DiagonalCost {
    let values = (0..1usize << n).map(|_| rng.next_range(-2.0, 2.0)).collect();
    DiagonalCost::new(n, values).unwrap()
}

fn random_mixer(n: usize, variant: usize, rng: &mut SplitMix64) -> MixerSpec {
    match variant {
        0 => MixerSpec::TransverseField,
        1 => {
            // One or two disjoint ring groups covering the register.
            if n < 4 {
                MixerSpec::XYRingGroups(vec![(0..n).collect()])
            } else {
                let cut = 2 + rng.next_below(n - 3);
                let g1: Vec<usize> = (0..cut).collect();
                let g2: Vec<usize> = (cut..n).collect();
                MixerSpec::XYRingGroups(vec![g1, g2])
            }
        }
        _ => {
            let mut terms = Vec::new();
            for _ in 0..3 + rng.next_below(3) {
                if rng.next_f64() < 0.5 {
                    terms.push(MixerTerm::X(rng.next_below(n)));
                } else {
                    let i = rng.next_below(n);
                    let mut j = rng.next_below(n);
                    if j == i {
                        j = (j + 1) % n;
                    }
                    terms.push(MixerTerm::XyPair(i, j));
                }
            }
            MixerSpec::OrderedProduct(terms)
        }
    }
}

#[test]
fn ring_p1_expectation_matches_dense_product() {
    // Fixed (gamma, beta) on the 4-vertex ring: multiply out the
    // 16-dimensional matrices and compare expectations.
    let inst = aoa_core::ProblemInstance::ring_of_disagrees(4).unwrap();
    let cost = inst.cost_table().unwrap();
    let params = QaoaParams::new(vec![0.7], vec![0.35]).unwrap();
    let init = StateVector::uniform(4).unwrap();
    let state = run_qaoa(&cost, &MixerSpec::TransverseField, &init, &params).unwrap();

    let u = dense_circuit(4, &cost, &MixerSpec::TransverseField, &params);
    let v = mat_vec(&u, &uniform_vector(4));
    let dense_expect = expectation(&v, &cost);
    assert!((state.expectation(&cost).unwrap() - dense_expect).abs() < 1e-12);
}

#[test]
fn random_circuits_match_dense_oracle() {
    // 50 random instances, n <= 6, p <= 3, across all mixer variants.
    let mut rng = SplitMix64::new(0xACCE5);
    for trial in 0..50 {
        let n = 2 + rng.next_below(5);
        let p = 1 + rng.next_below(3);
        let cost = random_cost(n, &mut rng);
        let mixer = random_mixer(n, trial % 3, &mut rng);
        let gammas: Vec<f64> = (0..p).map(|_| rng.next_range(-2.5, 2.5)).collect();
        let betas: Vec<f64> = (0..p).map(|_| rng.next_range(-2.5, 2.5)).collect();
        let params = QaoaParams::new(gammas, betas).unwrap();

        let init = StateVector::uniform(n).unwrap();
        let state = run_qaoa(&cost, &mixer, &init, &params).unwrap();

        let u = dense_circuit(n, &cost, &mixer, &params);
        let v = mat_vec(&u, &uniform_vector(n));
        // Amplitudes agree elementwise (same convention, no global-phase slack
        // needed) and so do expectations.
        for (a, b) in state.amplitudes().iter().zip(&v) {
            assert!((a - b).norm() < 1e-9, "trial {trial}: {a} vs {b}");
        }
        let diff = (state.expectation(&cost).unwrap() - expectation(&v, &cost)).abs();
        assert!(diff < 1e-9, "trial {trial}: expectation gap {diff}");
    }
}

#[test]
fn ordered_product_is_not_the_summed_exponential() {
    // Two non-commuting pair terms: the product of exponentials differs
    // from the exponential of the sum; the kernels implement the product.
    let n = 3;
    let beta = 0.3;
    let terms = vec![MixerTerm::XyPair(0, 1), MixerTerm::XyPair(1, 2)];
    let spec = MixerSpec::OrderedProduct(terms.clone());

    let mut state = StateVector::basis(n, 0b011).unwrap();
    apply_mixer(&mut state, &spec, beta).unwrap();

    // Dense product path.
    let u_prod = dense_mixer(n, &spec, beta);
    let mut start = vec![Complex64::new(0.0, 0.0); 8];
    start[0b011] = Complex64::new(1.0, 0.0);
    let v_prod = mat_vec(&u_prod, &start);
    for (a, b) in state.amplitudes().iter().zip(&v_prod) {
        assert!((a - b).norm() < 1e-10);
    }

    // Summed-Hamiltonian path: exp(-i beta (H1 + H2)) by dense exponential.
    let mut h_sum = zero(8);
    for term in &terms {
        let h = dense_term_hamiltonian(n, term);
        for (r, row) in h.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                h_sum[r][c] += v;
            }
        }
    }
    let a = {
        let phase = Complex64::new(0.0, -beta);
        h_sum
            .iter()
            .map(|row| row.iter().map(|x| x * phase).collect())
            .collect::<Matrix>()
    };
    let u_sum = dense_expm(&a);
    let v_sum = mat_vec(&u_sum, &start);
    let gap: f64 = v_prod
        .iter()
        .zip(&v_sum)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    assert!(gap > 1e-6, "product and summed exponential agree: gap {gap}");

    // Sanity on the exponential itself: it is unitary to high accuracy.
    let norm: f64 = v_sum.iter().map(|x| x.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-10);
}

#[test]
fn transverse_field_commutes_with_summed_exponential() {
    // Commuting single-qubit terms: product equals the summed exponential.
    let n = 3;
    let beta = 0.8;
    let terms: Vec<MixerTerm> = (0..n).map(MixerTerm::X).collect();
    let mut h_sum = zero(1 << n);
    for term in &terms {
        let h = dense_term_hamiltonian(n, term);
        for (r, row) in h.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                h_sum[r][c] += v;
            }
        }
    }
    let scaled: Matrix = h_sum
        .iter()
        .map(|row| row.iter().map(|x| x * Complex64::new(0.0, -beta)).collect())
        .collect();
    let u_sum = dense_expm(&scaled);
    let u_prod = dense_mixer(n, &MixerSpec::TransverseField, beta);
    for r in 0..1 << n {
        for c in 0..1 << n {
            assert!((u_sum[r][c] - u_prod[r][c]).norm() < 1e-10);
        }
    }
}

#[test]
fn grover_step_matches_dense_four_by_four() {
    // n = 2, target 3, gamma = pi: one step against explicit 4x4 matrix
    // arithmetic, frozen to the computed probability 7/64.
    let n = 2;
    let gamma = std::f64::consts::PI;
    let beta = grover::mixer_angle(n);

    let kernel = mat_mul(&dense_rx_all(n, beta), &dense_indicator_phase(n, 3, gamma));
    let w = mat_mul(&kernel, &kernel);
    let v = mat_vec(&w, &uniform_vector(n));
    let dense_p = v[3].norm_sqr();

    let run = grover::run_grover(n, 3, gamma, 1).unwrap();
    assert!((run.trace[0] - dense_p).abs() < 1e-12);
    assert!((run.trace[0] - 0.109375).abs() < 1e-12);
}

#[test]
fn grover_trace_matches_dense_powers() {
    let n = 3;
    let gamma = 0.9;
    let beta = grover::mixer_angle(n);
    let kernel = mat_mul(&dense_rx_all(n, beta), &dense_indicator_phase(n, 5, gamma));
    let w = mat_mul(&kernel, &kernel);

    let run = grover::run_grover(n, 5, gamma, 8).unwrap();
    let mut v = uniform_vector(n);
    for &expected in &run.trace {
        v = mat_vec(&w, &v);
        assert!((v[5].norm_sqr() - expected).abs() < 1e-11);
    }
}
