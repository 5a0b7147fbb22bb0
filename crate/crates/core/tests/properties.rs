//! Property suites over randomized inputs.

use proptest::prelude::*;

use aoa_core::mixers::{apply_mixer, feasible_onehot_predicate, MixerSpec};
use aoa_core::problems::{maxcut_value, Graph, ProblemInstance};
use aoa_core::qaoa::{run_qaoa, QaoaParams};
use aoa_core::qubo::{brute_force_minimize, simulated_annealing, Qubo, SaSchedule};
use aoa_core::statevector::{DiagonalCost, StateVector};

fn angle() -> impl Strategy<Value = f64> {
    -3.2f64..3.2f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitaries_preserve_norm_and_phase_preserves_magnitudes(
        n in 1usize..6,
        gammas in prop::collection::vec(angle(), 1..4),
        betas in prop::collection::vec(angle(), 1..4),
        table_seed in any::<u64>(),
    ) {
        let mut rng = aoa_core::rng::SplitMix64::new(table_seed);
        let values: Vec<f64> = (0..1usize << n).map(|_| rng.next_range(-3.0, 3.0)).collect();
        let cost = DiagonalCost::new(n, values).unwrap();
        let mut state = StateVector::uniform(n).unwrap();
        for (&g, &b) in gammas.iter().zip(&betas) {
            let mags: Vec<f64> = state.amplitudes().iter().map(|a| a.norm()).collect();
            state.apply_diagonal_phase(&cost, g).unwrap();
            // The phase separator never changes any |amp|.
            for (before, after) in mags.iter().zip(state.amplitudes()) {
                prop_assert!((before - after.norm()).abs() < 1e-12);
            }
            state.apply_rx_all(b);
        }
        prop_assert!((state.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn xy_pairs_conserve_pair_sectors(
        beta in angle(),
        seed in any::<u64>(),
    ) {
        let n = 4;
        let mut rng = aoa_core::rng::SplitMix64::new(seed);
        let amps: Vec<num_complex::Complex64> = (0..1usize << n)
            .map(|_| num_complex::Complex64::new(rng.next_range(-1.0, 1.0), rng.next_range(-1.0, 1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<_> = amps.into_iter().map(|a| a / norm).collect();
        let mut state = StateVector::from_amplitudes(amps).unwrap();

        let (i, j) = (1usize, 3usize);
        let sector = |s: &StateVector, weight: u32| {
            s.subspace_probability(|x| {
                (((x >> i) & 1) + ((x >> j) & 1)) as u32 == weight
            })
        };
        let before: Vec<f64> = (0..=2).map(|w| sector(&state, w)).collect();
        state.apply_xy_pair(i, j, beta).unwrap();
        let after: Vec<f64> = (0..=2).map(|w| sector(&state, w)).collect();
        for (b, a) in before.iter().zip(&after) {
            prop_assert!((b - a).abs() < 1e-12);
        }
    }

    #[test]
    fn maxcut_is_complement_invariant(
        edges in prop::collection::btree_set((0usize..6, 0usize..6), 1..10),
        x in 0u64..64,
    ) {
        let normalized: std::collections::BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let edges: Vec<(usize, usize, f64)> =
            normalized.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
        prop_assume!(!edges.is_empty());
        let graph = Graph::new(6, edges).unwrap();
        let mask = (1u64 << 6) - 1;
        prop_assert_eq!(
            maxcut_value(&graph, x).unwrap(),
            maxcut_value(&graph, x ^ mask).unwrap()
        );
    }

    #[test]
    fn expectation_shifts_with_constant(
        c in -5.0f64..5.0,
        gamma in angle(),
        beta in angle(),
    ) {
        let inst = ProblemInstance::ring_of_disagrees(4).unwrap();
        let cost = inst.cost_table().unwrap();
        let shifted = cost.shifted(c);
        let init = StateVector::uniform(4).unwrap();
        let params = QaoaParams::new(vec![gamma], vec![beta]).unwrap();
        let a = run_qaoa(&cost, &MixerSpec::TransverseField, &init, &params).unwrap();
        let b = run_qaoa(&shifted, &MixerSpec::TransverseField, &init, &params).unwrap();
        let ea = a.expectation(&cost).unwrap();
        let eb = b.expectation(&shifted).unwrap();
        prop_assert!((eb - ea - c).abs() < 1e-9);
    }

    #[test]
    fn onehot_feasible_states_stay_feasible(
        betas in prop::collection::vec(angle(), 1..20),
        start in 0usize..3,
    ) {
        let groups = vec![vec![0usize, 1, 2], vec![3, 4]];
        let spec = MixerSpec::XYRingGroups(groups.clone());
        let feasible = feasible_onehot_predicate(&groups).unwrap();
        let x = (1u64 << start) | (1u64 << 3);
        let mut state = StateVector::basis(5, x).unwrap();
        for &b in &betas {
            apply_mixer(&mut state, &spec, b).unwrap();
        }
        prop_assert!(state.subspace_probability(&feasible) >= 1.0 - 1e-10);
    }

    #[test]
    fn annealer_never_beats_exact_minimum(
        seed in any::<u64>(),
        n in 4usize..10,
    ) {
        let mut rng = aoa_core::rng::SplitMix64::new(seed);
        let mut q = Qubo::new(n);
        for i in 0..n as u32 {
            q.add_linear(i, rng.next_range(-2.0, 2.0));
            for j in i + 1..n as u32 {
                if rng.next_f64() < 0.4 {
                    q.add_quadratic(i, j, rng.next_range(-2.0, 2.0));
                }
            }
        }
        let (exact, _) = brute_force_minimize(&q).unwrap();
        let schedule = SaSchedule { sweeps: 200, ..Default::default() };
        let r = simulated_annealing(&q, &schedule, seed ^ 0xABCD).unwrap();
        prop_assert!(r.energy >= exact - 1e-9);
    }

    #[test]
    fn qubo_json_round_trips(
        seed in any::<u64>(),
        n in 1usize..8,
    ) {
        let mut rng = aoa_core::rng::SplitMix64::new(seed);
        let mut q = Qubo::new(n);
        q.add_offset(rng.next_range(-3.0, 3.0));
        for i in 0..n as u32 {
            q.add_linear(i, rng.next_range(-3.0, 3.0));
            for j in i + 1..n as u32 {
                if rng.next_f64() < 0.5 {
                    q.add_quadratic(i, j, rng.next_range(-3.0, 3.0));
                }
            }
        }
        let back = Qubo::from_json(&q.to_json()).unwrap();
        prop_assert_eq!(back, q);
    }
}
