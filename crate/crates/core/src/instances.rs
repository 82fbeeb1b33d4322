//! Seeded generators for randomized test instances: detailed-balance
//! kernels and protocols, and random qubit unitaries and bases.
//!
//! Instance `i` under a given seed is always the same object, so checks over
//! "100 randomized instances" are reproducible everywhere they run.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::quantum::{MeasurementBasis, PureState, Unitary2};
use crate::rng::TrajectoryRng;
use crate::stochastic::{
    boltzmann_distribution, metropolis_kernel, Distribution, EnergyLandscape, Protocol, Step,
    TransitionKernel,
};

/// Random stream for one generated instance.
pub struct InstanceRng(TrajectoryRng);

impl InstanceRng {
    pub fn new(seed: u64, index: u64) -> Self {
        InstanceRng(TrajectoryRng::stream(seed, index))
    }

    pub fn uniform(&mut self) -> f64 {
        self.0.uniform()
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.0.uniform()
    }

    pub fn usize_in(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        lo + (self.0.uniform() * (hi_inclusive - lo + 1) as f64) as usize
    }
}

/// A random landscape with energies in [-2, 2].
pub fn random_landscape(rng: &mut InstanceRng, n: usize) -> EnergyLandscape {
    let energies: Vec<f64> = (0..n).map(|_| rng.in_range(-2.0, 2.0)).collect();
    EnergyLandscape::new(energies).expect("random landscape is valid")
}

/// A strictly positive random distribution (entries at least ~1e-2 / n).
pub fn random_distribution(rng: &mut InstanceRng, n: usize) -> Distribution {
    let raw: Vec<f64> = (0..n).map(|_| rng.in_range(0.01, 1.0)).collect();
    let total: f64 = raw.iter().sum();
    Distribution::new(raw.into_iter().map(|w| w / total).collect())
        .expect("normalized positive weights form a distribution")
}

/// A detailed-balance kernel for `landscape` at `temperature`: plain
/// Metropolis, lazy Metropolis, or Metropolis-Hastings with a random
/// symmetric proposal. All variants share the Boltzmann stationary state.
pub fn random_db_kernel(
    rng: &mut InstanceRng,
    landscape: &EnergyLandscape,
    temperature: f64,
) -> TransitionKernel {
    let n = landscape.n_states();
    let variant = rng.usize_in(0, 2);
    let kernel = match variant {
        0 => metropolis_kernel(landscape, temperature).expect("metropolis kernel"),
        1 => metropolis_kernel(landscape, temperature)
            .expect("metropolis kernel")
            .lazy(rng.in_range(0.05, 0.6))
            .expect("lazy weight in range"),
        _ => {
            let mut proposal = alloc::vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let q = rng.in_range(0.05, 1.0);
                    proposal[i * n + j] = q;
                    proposal[j * n + i] = q;
                }
            }
            // Scale so every column's off-diagonal mass stays below 1; the
            // slack sits on the diagonal.
            let max_col: f64 = (0..n)
                .map(|j| (0..n).map(|i| proposal[i * n + j]).sum::<f64>())
                .fold(0.0, f64::max);
            let scale = 0.9 / max_col;
            let mut entries = alloc::vec![0.0; n * n];
            for source in 0..n {
                let mut stay = 1.0;
                for target in 0..n {
                    if target == source {
                        continue;
                    }
                    let de = landscape.energy(target) - landscape.energy(source);
                    let accept = if de <= 0.0 {
                        1.0
                    } else {
                        math::exp(-de / temperature)
                    };
                    let p = proposal[target * n + source] * scale * accept;
                    entries[target * n + source] = p;
                    stay -= p;
                }
                entries[source * n + source] = stay.max(0.0);
            }
            TransitionKernel::new(n, entries).expect("scaled MH kernel is stochastic")
        }
    };
    debug_assert!(
        kernel.detailed_balance_residual(
            &boltzmann_distribution(landscape, temperature).expect("boltzmann")
        ) < 1e-12
    );
    kernel
}

/// A randomized multi-step protocol whose bath kernels all satisfy detailed
/// balance against the instantaneous landscape at one shared temperature.
pub fn random_db_protocol(rng: &mut InstanceRng, n: usize, temperature: f64) -> Protocol {
    let initial = random_landscape(rng, n);
    let mut current = initial.clone();
    let mut steps = Vec::new();
    let n_baths = rng.usize_in(1, 3);
    for _ in 0..n_baths {
        if rng.uniform() < 0.7 {
            let next = random_landscape(rng, n);
            steps.push(Step::Drive(next.clone()));
            current = next;
        }
        steps.push(Step::Bath(random_db_kernel(rng, &current, temperature)));
    }
    Protocol::new(initial, steps, temperature).expect("random protocol is consistent")
}

/// Random SU(2) element from three angles.
pub fn random_unitary(rng: &mut InstanceRng) -> Unitary2 {
    let theta = rng.in_range(0.0, core::f64::consts::PI);
    let alpha = rng.in_range(0.0, 2.0 * core::f64::consts::PI);
    let beta = rng.in_range(0.0, 2.0 * core::f64::consts::PI);
    let (c, s) = (math::cos(theta / 2.0), math::sin(theta / 2.0));
    let a = Complex64::from_polar(c, alpha);
    let b = Complex64::from_polar(s, beta);
    Unitary2::new([[a, -b.conj()], [b, a.conj()]]).expect("SU(2) element is unitary")
}

/// Random orthonormal basis: the columns of a random unitary.
pub fn random_basis(rng: &mut InstanceRng) -> MeasurementBasis {
    let u = random_unitary(rng);
    let s0 = PureState::new(u.entry(0, 0), u.entry(1, 0)).expect("unitary column is normalized");
    let s1 = PureState::new(u.entry(0, 1), u.entry(1, 1)).expect("unitary column is normalized");
    MeasurementBasis::new([s0, s1]).expect("unitary columns are orthonormal")
}
