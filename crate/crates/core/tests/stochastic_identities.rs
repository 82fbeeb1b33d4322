//! Trajectory-level identities of the two-point formalism, checked on
//! randomized detailed-balance instances against exact enumeration.

use qthermo_core::instances::{
    random_db_kernel, random_db_protocol, random_distribution, random_landscape, InstanceRng,
};
use proptest::prelude::*;
use qthermo_core::estimators::{
    enumerate_exact, enumerate_exact_with_final, mean_entropy_production_exact, second_law_check,
};
use qthermo_core::stochastic::{
    boltzmann_distribution, evolve_distribution, free_energy, kl_to_equilibrium, ledger,
    sample_trajectory, staged_quench, Distribution, EnergyLandscape, Protocol, Step, Trajectory,
};

/// Both writings of the two-point entropy production agree per trajectory:
/// the boundary+conditional form and the relative-surprise form
/// ln(p0(i)/p_inf(i)) - ln(p1(j)/p_inf(j)).
#[test]
fn conditional_and_relative_forms_agree_per_trajectory() {
    for index in 0..100 {
        let mut rng = InstanceRng::new(0xA11CE, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let landscape = random_landscape(&mut rng, n);
        let kernel = random_db_kernel(&mut rng, &landscape, temperature);
        let p0 = random_distribution(&mut rng, n);
        let protocol = Protocol::new(
            landscape.clone(),
            vec![Step::Bath(kernel)],
            temperature,
        )
        .unwrap();
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        let p_eq = boltzmann_distribution(&landscape, temperature).unwrap();

        for i in 0..n {
            for j in 0..n {
                let trajectory = Trajectory::new(vec![i, j]);
                let l = ledger(&protocol, &trajectory, &p0, &p1).unwrap();
                if l.backward_probability_zero {
                    continue;
                }
                let relative_form = (p0.prob(i) / p_eq.prob(i)).ln()
                    - (p1.prob(j) / p_eq.prob(j)).ln();
                assert!(
                    (l.entropy_production - relative_form).abs() < 1e-10,
                    "instance {index}, trajectory ({i},{j}): {} vs {relative_form}",
                    l.entropy_production
                );
            }
        }
    }
}

/// <dS_i> over one bath step equals the drop in distance to equilibrium,
/// and the distance never grows under a detailed-balance kernel.
#[test]
fn mean_production_is_drop_in_distance_to_equilibrium() {
    for index in 0..100 {
        let mut rng = InstanceRng::new(0xBEEF, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let landscape = random_landscape(&mut rng, n);
        let kernel = random_db_kernel(&mut rng, &landscape, temperature);
        let p0 = random_distribution(&mut rng, n);
        let protocol = Protocol::new(landscape.clone(), vec![Step::Bath(kernel)], temperature)
            .unwrap();
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        let p_eq = boltzmann_distribution(&landscape, temperature).unwrap();

        let report = enumerate_exact(&protocol, &p0).unwrap();
        let d0 = kl_to_equilibrium(&p0, &p_eq).unwrap();
        let d1 = kl_to_equilibrium(&p1, &p_eq).unwrap();
        assert!(
            (report.mean_entropy_production - (d0 - d1)).abs() < 1e-10,
            "instance {index}: <dS_i> = {}, D0 - D1 = {}",
            report.mean_entropy_production,
            d0 - d1
        );
        assert!(d1 <= d0 + 1e-12, "relaxation must not increase D_inf");
    }
}

/// dS_i = dS - Q/T per trajectory for protocols whose bath kernels satisfy
/// detailed balance at the shared temperature.
#[test]
fn thermal_decomposition_per_trajectory() {
    for index in 0..100 {
        let mut rng = InstanceRng::new(0xD1CE, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = random_distribution(&mut rng, n);
        let report = enumerate_exact(&protocol, &p0).unwrap();
        for row in &report.rows {
            if row.probability == 0.0 {
                continue;
            }
            let l = row.ledger.unwrap();
            if l.backward_probability_zero {
                continue;
            }
            let decomposition = l.delta_stochastic_entropy - l.heat / temperature;
            assert!(
                (l.entropy_production - decomposition).abs() < 1e-10,
                "instance {index}: dS_i = {} but dS - Q/T = {decomposition}",
                l.entropy_production
            );
        }
    }
}

/// The ledger's entropy production equals the defining log-ratio of raw
/// forward and backward path probabilities, computed here from first
/// principles (products of boundary weights and kernel entries) without
/// going through the ledger's boundary/conditional split.
#[test]
fn ledger_matches_raw_path_probability_ratio() {
    for index in 0..60 {
        let mut rng = InstanceRng::new(0x0DDBA11, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = random_distribution(&mut rng, n);
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        let kernels: Vec<_> = protocol
            .steps()
            .iter()
            .filter_map(|s| match s {
                Step::Bath(k) => Some(k.clone()),
                Step::Drive(_) => None,
            })
            .collect();

        for seed in 0..10 {
            let trajectory = sample_trajectory(&protocol, &p0, seed).unwrap();
            let states = trajectory.states();
            let mut forward = p0.prob(states[0]);
            let mut backward = p1.prob(*states.last().unwrap());
            for (k, kernel) in kernels.iter().enumerate() {
                forward *= kernel.entry(states[k + 1], states[k]);
                backward *= kernel.entry(states[k], states[k + 1]);
            }
            let l = ledger(&protocol, &trajectory, &p0, &p1).unwrap();
            if backward == 0.0 {
                assert!(l.backward_probability_zero);
                assert_eq!(l.entropy_production, f64::INFINITY);
            } else {
                assert!(
                    (l.entropy_production - (forward / backward).ln()).abs() < 1e-10,
                    "instance {index} seed {seed}: ledger {} vs raw ratio {}",
                    l.entropy_production,
                    (forward / backward).ln()
                );
            }
        }
    }
}

/// With the Jarzynski boundary (both endpoints at equilibrium), every
/// trajectory obeys dS_i = (W - dF)/T.
#[test]
fn jarzynski_boundary_gives_work_minus_free_energy() {
    for index in 0..60 {
        let mut rng = InstanceRng::new(0xFADE, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = boltzmann_distribution(protocol.initial_landscape(), temperature).unwrap();
        let p1 = boltzmann_distribution(protocol.final_landscape(), temperature).unwrap();
        let delta_f = free_energy(protocol.final_landscape(), temperature).unwrap()
            - free_energy(protocol.initial_landscape(), temperature).unwrap();

        let report = enumerate_exact_with_final(&protocol, &p0, &p1).unwrap();
        for row in &report.rows {
            if row.probability == 0.0 {
                continue;
            }
            let l = row.ledger.unwrap();
            assert!(
                (l.entropy_production - (l.work - delta_f) / temperature).abs() < 1e-10,
                "instance {index}: dS_i = {}, (W - dF)/T = {}",
                l.entropy_production,
                (l.work - delta_f) / temperature
            );
        }
        // The fluctuation identity holds for this boundary too.
        assert!((report.ift_mean - 1.0).abs() < 1e-10);
    }
}

/// The sudden-quench margin from the worked two-state example: with the
/// equilibrium boundary, <dS_i> = 0.5(W_up - dF) + 0.5(-dF) = 0.1201 nats.
#[test]
fn quench_second_law_margin() {
    let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
    let tilted = EnergyLandscape::new(vec![0.0, 1.0]).unwrap();
    let protocol = Protocol::new(flat.clone(), vec![Step::Drive(tilted.clone())], 1.0).unwrap();
    let p0 = boltzmann_distribution(&flat, 1.0).unwrap();
    let p1 = boltzmann_distribution(&tilted, 1.0).unwrap();
    let report = enumerate_exact_with_final(&protocol, &p0, &p1).unwrap();
    // margin = 0.5 * 0.6201 + 0.5 * (-0.3799) = 0.1201 nats.
    let verdict = second_law_check(&report);
    assert!(verdict.satisfied);
    assert!((verdict.margin - 0.1201).abs() < 1e-4);
    assert!(verdict.margin > 0.0);
}

/// Slower staging produces less entropy; 50 substeps are nearly reversible.
#[test]
fn staged_quench_approaches_reversibility() {
    let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
    let tilted = EnergyLandscape::new(vec![0.0, 1.0]).unwrap();
    let mut previous = f64::INFINITY;
    for &substeps in &[1usize, 5, 50] {
        let protocol = staged_quench(&flat, &tilted, substeps, 1.0).unwrap();
        let p0 = boltzmann_distribution(&flat, 1.0).unwrap();
        let mean = mean_entropy_production_exact(&protocol, &p0).unwrap();
        assert!(mean >= 0.0);
        assert!(
            mean < previous,
            "{substeps} substeps produced {mean}, not below {previous}"
        );
        previous = mean;
    }
    assert!(previous < 0.01, "50-substep quench produced {previous} nats");
}

/// The marginal route and the enumeration route agree on staged quenches
/// small enough to enumerate, and the mean work descends toward dF.
#[test]
fn two_exact_routes_agree_on_staged_quenches() {
    let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
    let tilted = EnergyLandscape::new(vec![0.0, 1.0]).unwrap();
    let delta_f = free_energy(&tilted, 1.0).unwrap() - free_energy(&flat, 1.0).unwrap();
    let mut previous_excess = f64::INFINITY;
    for &substeps in &[1usize, 3, 8] {
        let protocol = staged_quench(&flat, &tilted, substeps, 1.0).unwrap();
        let p0 = boltzmann_distribution(&flat, 1.0).unwrap();
        let via_marginals = mean_entropy_production_exact(&protocol, &p0).unwrap();
        let report = enumerate_exact(&protocol, &p0).unwrap();
        assert!((via_marginals - report.mean_entropy_production).abs() < 1e-10);

        // <W> >= dF, with the dissipated excess shrinking as staging slows.
        let excess = report.mean_work - delta_f;
        assert!(excess > 0.0);
        assert!(excess < previous_excess);
        previous_excess = excess;
    }
}

proptest! {
    /// First law: work + heat = delta E on sampled trajectories of
    /// randomized protocols.
    #[test]
    fn first_law_holds_on_random_protocols(instance in 0u64..64, seed in 0u64..16) {
        let mut rng = InstanceRng::new(0xF1257, instance);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = random_distribution(&mut rng, n);
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        let trajectory = sample_trajectory(&protocol, &p0, seed).unwrap();
        let l = ledger(&protocol, &trajectory, &p0, &p1).unwrap();
        prop_assert!((l.work + l.heat - l.delta_energy).abs() < 1e-10);
    }

    /// Column stochasticity survives kernel composition.
    #[test]
    fn kernel_composition_is_stochastic(instance in 0u64..64) {
        let mut rng = InstanceRng::new(0xC0FFEE, instance);
        let n = rng.usize_in(2, 4);
        let t1 = rng.in_range(0.4, 2.5);
        let t2 = rng.in_range(0.4, 2.5);
        let l1 = random_landscape(&mut rng, n);
        let l2 = random_landscape(&mut rng, n);
        let a = random_db_kernel(&mut rng, &l1, t1);
        let b = random_db_kernel(&mut rng, &l2, t2);
        let composed = a.then(&b).unwrap();
        for source in 0..n {
            let total: f64 = (0..n).map(|t| composed.entry(t, source)).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            for target in 0..n {
                prop_assert!(composed.entry(target, source) >= 0.0);
            }
        }
    }

    /// Pushforwards keep distributions normalized.
    #[test]
    fn evolution_preserves_normalization(instance in 0u64..64) {
        let mut rng = InstanceRng::new(0x90D, instance);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = random_distribution(&mut rng, n);
        for marginal in evolve_distribution(&protocol, &p0).unwrap() {
            let total: f64 = marginal.probs().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }
    }
}

/// Distribution validation enforces the [0,1] + normalization invariants.
#[test]
fn distribution_rejects_denormalized_inputs() {
    assert!(Distribution::new(vec![0.5, 0.5000001]).is_err());
    assert!(Distribution::new(vec![0.5, 0.5]).is_ok());
}
