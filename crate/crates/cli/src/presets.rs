//! Bundled protocols and configurations used by the verifier and the tests.

use qthermo_core::stochastic::{
    metropolis_kernel, staged_quench, Distribution, EnergyLandscape, Protocol, Step,
    TransitionKernel,
};

/// A named protocol together with its initial distribution.
pub struct BundledProtocol {
    pub name: &'static str,
    pub protocol: Protocol,
    pub initial: Distribution,
}

fn landscape(energies: &[f64]) -> EnergyLandscape {
    EnergyLandscape::new(energies.to_vec()).expect("bundled landscape is valid")
}

/// The fluctuation-theorem bundle: five two-state and two three-state
/// protocols, all with strictly positive kernels (the uniform-proposal
/// Metropolis kernel never has a zero entry, and the explicit matrices are
/// positive by construction).
pub fn ift_bundle() -> Vec<BundledProtocol> {
    let mut bundle = Vec::new();

    // 1: sudden tilt then thermalizing kick.
    let flat = landscape(&[0.0, 0.0]);
    let tilted = landscape(&[0.0, 1.0]);
    bundle.push(BundledProtocol {
        name: "two_state_tilt",
        protocol: Protocol::new(
            flat.clone(),
            vec![
                Step::Drive(tilted.clone()),
                Step::Bath(metropolis_kernel(&tilted, 1.0).expect("kernel")),
            ],
            1.0,
        )
        .expect("protocol"),
        initial: Distribution::uniform(2),
    });

    // 2: cold two-state with a lazy kernel and a double kick.
    let cold = landscape(&[0.3, -0.2]);
    let recrossed = landscape(&[-0.1, 0.4]);
    let lazy = metropolis_kernel(&cold, 0.7)
        .expect("kernel")
        .lazy(0.3)
        .expect("lazy");
    bundle.push(BundledProtocol {
        name: "two_state_lazy_double_kick",
        protocol: Protocol::new(
            cold.clone(),
            vec![
                Step::Bath(lazy),
                Step::Drive(recrossed.clone()),
                Step::Bath(metropolis_kernel(&recrossed, 0.7).expect("kernel")),
            ],
            0.7,
        )
        .expect("protocol"),
        initial: Distribution::new(vec![0.8, 0.2]).expect("distribution"),
    });

    // 3: explicit strictly positive bath matrix.
    let skew = TransitionKernel::from_rows(&[vec![0.8, 0.3], vec![0.2, 0.7]]).expect("kernel");
    bundle.push(BundledProtocol {
        name: "two_state_custom_matrix",
        protocol: Protocol::new(
            landscape(&[0.0, 0.5]),
            vec![Step::Drive(landscape(&[0.5, 0.0])), Step::Bath(skew)],
            1.0,
        )
        .expect("protocol"),
        initial: Distribution::new(vec![0.35, 0.65]).expect("distribution"),
    });

    // 4: hot ramp in two stages.
    let start = landscape(&[0.0, 0.4]);
    let mid = landscape(&[0.0, 0.9]);
    let end = landscape(&[0.0, 1.6]);
    bundle.push(BundledProtocol {
        name: "two_state_hot_ramp",
        protocol: Protocol::new(
            start.clone(),
            vec![
                Step::Drive(mid.clone()),
                Step::Bath(metropolis_kernel(&mid, 2.0).expect("kernel")),
                Step::Drive(end.clone()),
                Step::Bath(metropolis_kernel(&end, 2.0).expect("kernel")),
            ],
            2.0,
        )
        .expect("protocol"),
        initial: qthermo_core::stochastic::boltzmann_distribution(&start, 2.0)
            .expect("distribution"),
    });

    // 5: biased start relaxing through a positive matrix.
    let soft = TransitionKernel::from_rows(&[vec![0.6, 0.45], vec![0.4, 0.55]]).expect("kernel");
    bundle.push(BundledProtocol {
        name: "two_state_biased_relax",
        protocol: Protocol::new(landscape(&[0.2, 0.1]), vec![Step::Bath(soft)], 1.0)
            .expect("protocol"),
        initial: Distribution::new(vec![0.9, 0.1]).expect("distribution"),
    });

    // 6: three-state tilt with thermal kicks around it.
    let three = landscape(&[0.0, 0.5, 1.2]);
    let permuted = landscape(&[1.2, 0.0, 0.5]);
    bundle.push(BundledProtocol {
        name: "three_state_permuted_tilt",
        protocol: Protocol::new(
            three.clone(),
            vec![
                Step::Bath(metropolis_kernel(&three, 1.0).expect("kernel")),
                Step::Drive(permuted.clone()),
                Step::Bath(metropolis_kernel(&permuted, 1.0).expect("kernel")),
            ],
            1.0,
        )
        .expect("protocol"),
        initial: Distribution::uniform(3),
    });

    // 7: three-state doubly positive matrix after a quench.
    let spread = TransitionKernel::from_rows(&[
        vec![0.5, 0.25, 0.25],
        vec![0.25, 0.5, 0.25],
        vec![0.25, 0.25, 0.5],
    ])
    .expect("kernel");
    bundle.push(BundledProtocol {
        name: "three_state_spread",
        protocol: Protocol::new(
            landscape(&[0.0, 0.3, 0.6]),
            vec![
                Step::Drive(landscape(&[0.6, 0.0, 0.3])),
                Step::Bath(spread.clone()),
                Step::Bath(spread),
            ],
            1.0,
        )
        .expect("protocol"),
        initial: Distribution::new(vec![0.2, 0.5, 0.3]).expect("distribution"),
    });

    bundle
}

/// The worked two-state quench: flat landscape tilted to (0, 1) at T = 1.
pub fn jarzynski_quench() -> Protocol {
    Protocol::new(
        landscape(&[0.0, 0.0]),
        vec![Step::Drive(landscape(&[0.0, 1.0]))],
        1.0,
    )
    .expect("protocol")
}

/// The staged (quasi-static when `substeps` is large) version of the quench.
pub fn jarzynski_staged(substeps: usize) -> Protocol {
    staged_quench(&landscape(&[0.0, 0.0]), &landscape(&[0.0, 1.0]), substeps, 1.0)
        .expect("protocol")
}
