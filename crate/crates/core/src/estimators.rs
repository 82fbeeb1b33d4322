//! Monte Carlo estimators and the exact enumeration oracle for the
//! fluctuation theorems.
//!
//! Every estimator draws trajectory `i` from the ChaCha stream
//! `(seed, i)` and reduces per-batch pairwise sums in a fixed order, so the
//! result is bit-identical for any distribution of batches across workers.
//! [`enumerate_exact`] walks the full trajectory space with exact forward
//! probabilities and is the oracle all sampled results are tested against.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{self, pairwise_sum};
use crate::rng::TrajectoryRng;
use crate::stochastic::{
    boltzmann_distribution, evolve_distribution, free_energy, ledger, sample_trajectory_with,
    Distribution, Protocol, Step, Trajectory, TrajectoryLedger,
};

/// Hard cap on enumerated trajectory-table rows.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// Number of batches used for batch-means standard errors. Batches are also
/// the unit of work distribution; their boundaries depend only on `n`.
pub const N_BATCHES: u32 = 32;

/// A Monte Carlo mean with its batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorResult {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    /// Fraction of sampled trajectories whose reverse had probability zero.
    pub absolute_irreversibility_fraction: f64,
}

impl EstimatorResult {
    /// What the fluctuation theorem promises for this run. With absolute
    /// irreversibility present the identity weakens to an inequality.
    pub fn verdict(&self) -> &'static str {
        if self.absolute_irreversibility_fraction > 0.0 {
            "<= 1 expected (absolute irreversibility detected)"
        } else {
            "= 1 expected"
        }
    }
}

/// One enumerated trajectory. `ledger` is `None` for rows the forward
/// protocol cannot produce (probability exactly zero).
#[derive(Debug, Clone)]
pub struct EnumerationRow {
    pub states: Vec<usize>,
    pub probability: f64,
    pub ledger: Option<TrajectoryLedger>,
}

/// Exact averages over the full trajectory table.
#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub rows: Vec<EnumerationRow>,
    /// <dS_i>; +inf under absolute irreversibility.
    pub mean_entropy_production: f64,
    /// <exp(-dS_i)>; backward-impossible trajectories contribute zero.
    pub ift_mean: f64,
    pub mean_work: f64,
    pub mean_heat: f64,
    /// <exp(-W/T)> at the protocol's bath temperature.
    pub jarzynski_mean: f64,
    /// Forward probability carried by backward-impossible trajectories.
    pub absolute_irreversibility_fraction: f64,
}

/// Exhaustively enumerate the trajectory table with p1 taken as the exact
/// pushforward of `initial`.
pub fn enumerate_exact(protocol: &Protocol, initial: &Distribution) -> Result<EnumerationReport> {
    let marginals = evolve_distribution(protocol, initial)?;
    enumerate_with_boundary(protocol, initial, marginals.last().unwrap())
}

/// Enumerate against an explicit final boundary distribution, e.g. the
/// equilibrium of the final landscape in Jarzynski's convention.
pub fn enumerate_exact_with_final(
    protocol: &Protocol,
    initial: &Distribution,
    p1: &Distribution,
) -> Result<EnumerationReport> {
    if p1.len() != protocol.n_states() {
        return Err(Error::config("final boundary dimension mismatch"));
    }
    enumerate_with_boundary(protocol, initial, p1)
}

fn enumerate_with_boundary(
    protocol: &Protocol,
    initial: &Distribution,
    p1: &Distribution,
) -> Result<EnumerationReport> {
    if initial.len() != protocol.n_states() {
        return Err(Error::config("initial distribution dimension mismatch"));
    }
    let n = protocol.n_states();
    let checkpoints = protocol.n_checkpoints();
    let rows_needed = (n as u128).pow(checkpoints as u32);
    if rows_needed > ENUMERATION_CAP as u128 {
        return Err(Error::Capacity {
            detail: String::from("trajectory enumeration"),
            rows: rows_needed,
            cap: ENUMERATION_CAP as u128,
        });
    }

    let kernels: Vec<_> = protocol
        .steps()
        .iter()
        .filter_map(|s| match s {
            Step::Bath(k) => Some(k),
            Step::Drive(_) => None,
        })
        .collect();

    let mut rows = Vec::with_capacity(rows_needed as usize);
    let mut states = alloc::vec![0usize; checkpoints];
    let mut total_probability = 0.0;
    let mut mean_si = 0.0;
    let mut ift_mean = 0.0;
    let mut mean_work = 0.0;
    let mut mean_heat = 0.0;
    let mut jarzynski_mean = 0.0;
    let mut flagged_mass = 0.0;
    let mut infinite_si = false;
    let temperature = protocol.bath_temperature();

    loop {
        let mut probability = initial.prob(states[0]);
        for (k, kernel) in kernels.iter().enumerate() {
            if probability == 0.0 {
                break;
            }
            probability *= kernel.entry(states[k + 1], states[k]);
        }

        let entry = if probability > 0.0 {
            total_probability += probability;
            let trajectory = Trajectory::new(states.clone());
            let l = ledger(protocol, &trajectory, initial, p1)?;
            mean_work += probability * l.work;
            mean_heat += probability * l.heat;
            jarzynski_mean += probability * math::exp(-l.work / temperature);
            if l.backward_probability_zero {
                flagged_mass += probability;
                infinite_si = true;
            } else {
                mean_si += probability * l.entropy_production;
                ift_mean += probability * math::exp(-l.entropy_production);
            }
            Some(l)
        } else {
            None
        };
        rows.push(EnumerationRow {
            states: states.clone(),
            probability,
            ledger: entry,
        });

        // Odometer over state sequences.
        let mut pos = checkpoints;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            states[pos] += 1;
            if states[pos] < n {
                break;
            }
            states[pos] = 0;
        }
        if pos == 0 && states[0] == 0 {
            break;
        }
    }

    debug_assert!(math::abs(total_probability - 1.0) < 1e-9);

    Ok(EnumerationReport {
        rows,
        mean_entropy_production: if infinite_si { f64::INFINITY } else { mean_si },
        ift_mean,
        mean_work,
        mean_heat,
        jarzynski_mean,
        absolute_irreversibility_fraction: flagged_mass,
    })
}

/// Which per-trajectory exponential the estimator averages.
#[derive(Debug, Clone, Copy)]
enum Summand {
    /// exp(-dS_i); zero when the reverse trajectory is impossible.
    ExpNegEntropyProduction,
    /// exp(-W/T).
    ExpNegWorkOverTemperature(f64),
}

/// Partial sums over one batch of trajectory indices.
#[derive(Debug, Clone, Copy, Default)]
pub struct BatchPartial {
    pub sum: f64,
    pub count: u64,
    pub flagged: u64,
}

/// A seeded Monte Carlo run, exposed batch by batch so a caller may fan the
/// batches out across workers: results are identical for any schedule.
pub struct SampledEstimator {
    protocol: Protocol,
    initial: Distribution,
    final_boundary: Distribution,
    summand: Summand,
    seed: u64,
    n: u64,
}

impl SampledEstimator {
    fn new(
        protocol: &Protocol,
        initial: Distribution,
        summand: Summand,
        n: u64,
        seed: u64,
    ) -> Result<Self> {
        if n < 100 {
            return Err(Error::domain("estimator needs n >= 100 samples"));
        }
        let final_boundary = evolve_distribution(protocol, &initial)?
            .pop()
            .expect("at least one checkpoint");
        Ok(SampledEstimator {
            protocol: protocol.clone(),
            initial,
            final_boundary,
            summand,
            seed,
            n,
        })
    }

    /// Estimator for the integral fluctuation theorem <exp(-dS_i)> = 1.
    pub fn ift(protocol: &Protocol, initial: &Distribution, n: u64, seed: u64) -> Result<Self> {
        SampledEstimator::new(
            protocol,
            initial.clone(),
            Summand::ExpNegEntropyProduction,
            n,
            seed,
        )
    }

    /// Estimator for Jarzynski's equality; the initial distribution is the
    /// Boltzmann equilibrium of the initial landscape, as the protocol demands.
    pub fn jarzynski(protocol: &Protocol, temperature: f64, n: u64, seed: u64) -> Result<Self> {
        let initial = boltzmann_distribution(protocol.initial_landscape(), temperature)?;
        SampledEstimator::new(
            protocol,
            initial,
            Summand::ExpNegWorkOverTemperature(temperature),
            n,
            seed,
        )
    }

    pub fn n_batches(&self) -> u32 {
        N_BATCHES
    }

    /// Index range covered by batch `b`; boundaries depend only on `n`.
    pub fn batch_range(&self, b: u32) -> (u64, u64) {
        let b = b as u64;
        let nb = N_BATCHES as u64;
        (b * self.n / nb, (b + 1) * self.n / nb)
    }

    /// Evaluate one batch. Deterministic in (seed, batch index) alone.
    pub fn batch(&self, b: u32) -> BatchPartial {
        let (lo, hi) = self.batch_range(b);
        let mut values = Vec::with_capacity((hi - lo) as usize);
        let mut flagged = 0;
        for index in lo..hi {
            let mut rng = TrajectoryRng::stream(self.seed, index);
            let trajectory = sample_trajectory_with(&self.protocol, &self.initial, &mut rng)
                .expect("dimensions validated at construction");
            let l = ledger(
                &self.protocol,
                &trajectory,
                &self.initial,
                &self.final_boundary,
            )
            .expect("sampled trajectory matches protocol");
            if l.backward_probability_zero {
                flagged += 1;
            }
            let value = match self.summand {
                Summand::ExpNegEntropyProduction => {
                    if l.backward_probability_zero {
                        0.0
                    } else {
                        math::exp(-l.entropy_production)
                    }
                }
                Summand::ExpNegWorkOverTemperature(t) => math::exp(-l.work / t),
            };
            values.push(value);
        }
        BatchPartial {
            sum: pairwise_sum(&values),
            count: hi - lo,
            flagged,
        }
    }

    /// Fold the batch partials (in batch order) into the final result.
    pub fn combine(&self, partials: &[BatchPartial]) -> EstimatorResult {
        assert_eq!(partials.len(), N_BATCHES as usize);
        let sums: Vec<f64> = partials.iter().map(|p| p.sum).collect();
        let mean = pairwise_sum(&sums) / self.n as f64;

        let batch_means: Vec<f64> = partials
            .iter()
            .map(|p| p.sum / p.count.max(1) as f64)
            .collect();
        let grand = pairwise_sum(&batch_means) / batch_means.len() as f64;
        let ss: f64 = batch_means.iter().map(|m| (m - grand) * (m - grand)).sum();
        let b = batch_means.len() as f64;
        let std_error = math::sqrt(ss / (b * (b - 1.0)));

        let flagged: u64 = partials.iter().map(|p| p.flagged).sum();
        EstimatorResult {
            mean,
            std_error,
            n_samples: self.n,
            absolute_irreversibility_fraction: flagged as f64 / self.n as f64,
        }
    }

    /// Run all batches sequentially.
    pub fn run(&self) -> EstimatorResult {
        let partials: Vec<BatchPartial> = (0..N_BATCHES).map(|b| self.batch(b)).collect();
        self.combine(&partials)
    }
}

/// Monte Carlo IFT estimate: mean of exp(-dS_i) over n sampled trajectories.
pub fn ift_estimate(
    protocol: &Protocol,
    initial: &Distribution,
    n: u64,
    seed: u64,
) -> Result<EstimatorResult> {
    Ok(SampledEstimator::ift(protocol, initial, n, seed)?.run())
}

/// A Jarzynski estimate together with its exact target exp(-dF/T).
#[derive(Debug, Clone, Copy)]
pub struct JarzynskiResult {
    pub estimate: EstimatorResult,
    pub target: f64,
}

/// Monte Carlo Jarzynski estimate: mean of exp(-W/T) from equilibrium, with
/// the target computed from the free energies of the first and last landscapes.
pub fn jarzynski_estimate(
    protocol: &Protocol,
    temperature: f64,
    n: u64,
    seed: u64,
) -> Result<JarzynskiResult> {
    let estimator = SampledEstimator::jarzynski(protocol, temperature, n, seed)?;
    let f0 = free_energy(protocol.initial_landscape(), temperature)?;
    let f1 = free_energy(protocol.final_landscape(), temperature)?;
    Ok(JarzynskiResult {
        estimate: estimator.run(),
        target: math::exp(-(f1 - f0) / temperature),
    })
}

/// Reject initial distributions that are not the Boltzmann equilibrium of
/// the landscape (Jarzynski's protocol requires an equilibrium start).
pub fn require_equilibrium(
    initial: &Distribution,
    protocol: &Protocol,
    temperature: f64,
) -> Result<()> {
    let eq = boltzmann_distribution(protocol.initial_landscape(), temperature)?;
    let worst = initial
        .probs()
        .iter()
        .zip(eq.probs())
        .map(|(a, b)| math::abs(a - b))
        .fold(0.0, f64::max);
    if worst > 1e-9 {
        return Err(Error::config(alloc::format!(
            "non-equilibrium initial distribution for Jarzynski protocol \
             (max deviation {worst:.3e} from Boltzmann)"
        )));
    }
    Ok(())
}

/// Second-law verdict with its margin <dS_i>.
#[derive(Debug, Clone, Copy)]
pub struct SecondLawVerdict {
    pub satisfied: bool,
    pub margin: f64,
}

pub fn second_law_check(report: &EnumerationReport) -> SecondLawVerdict {
    let margin = report.mean_entropy_production;
    SecondLawVerdict {
        satisfied: margin >= -1e-10,
        margin,
    }
}

/// Exact <dS_i> by propagating marginals instead of enumerating trajectories:
/// the boundary term averages to S(p_final) - S(p_0) and each bath step
/// contributes sum_ij p(i) P[j|i] ln(P[j|i]/P[i|j]).
///
/// O(steps * n^2), so it covers protocols far beyond the enumeration cap;
/// +inf when some forward move is irreversible.
pub fn mean_entropy_production_exact(protocol: &Protocol, initial: &Distribution) -> Result<f64> {
    if initial.len() != protocol.n_states() {
        return Err(Error::config("initial distribution dimension mismatch"));
    }
    let n = protocol.n_states();
    let mut current = initial.clone();
    let mut conditional = 0.0;
    for step in protocol.steps() {
        if let Step::Bath(kernel) = step {
            for source in 0..n {
                let p = current.prob(source);
                if p == 0.0 {
                    continue;
                }
                for target in 0..n {
                    let forward = kernel.entry(target, source);
                    if forward == 0.0 {
                        continue;
                    }
                    let backward = kernel.entry(source, target);
                    if backward == 0.0 {
                        return Ok(f64::INFINITY);
                    }
                    conditional += p * forward * math::ln(forward / backward);
                }
            }
            current = kernel.apply(&current)?;
        }
    }
    Ok(current.shannon_nats() - initial.shannon_nats() + conditional)
}
