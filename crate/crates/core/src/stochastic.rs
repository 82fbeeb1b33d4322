//! Discrete-time classical stochastic thermodynamics.
//!
//! A protocol is an ordered alternation of drive steps (the controller
//! relabels the energy landscape while the micro-state is frozen) and bath
//! steps (a column-stochastic kernel jumps the micro-state while the
//! landscape is frozen). Work is booked on drives, heat on jumps, and each
//! trajectory carries the two-point entropy production
//!
//! ```text
//! dS_i[gamma] = ln(p0(initial)/p1(final)) + sum_k ln(P_k[next|prev] / P_k[prev|next])
//! ```
//!
//! the boundary term plus one conditional term per jump.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::TrajectoryRng;
use crate::PROB_TOL;

/// Energies of the micro-states, natural units.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLandscape {
    energies: Vec<f64>,
}

impl EnergyLandscape {
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        if energies.len() < 2 {
            return Err(Error::domain("landscape needs at least 2 micro-states"));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::domain("landscape energies must be finite"));
        }
        Ok(EnergyLandscape { energies })
    }

    pub fn n_states(&self) -> usize {
        self.energies.len()
    }

    pub fn energy(&self, state: usize) -> f64 {
        self.energies[state]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
}

/// A probability distribution over micro-states.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::domain("probabilities must lie in [0, 1]"));
        }
        let total: f64 = probs.iter().sum();
        if math::abs(total - 1.0) > PROB_TOL {
            return Err(Error::domain(format!(
                "probabilities sum to {total}, expected 1 within {PROB_TOL:e}"
            )));
        }
        Ok(Distribution { probs })
    }

    /// Internal constructor for vectors that are normalized by construction
    /// (kernel pushforwards, Boltzmann weights).
    pub(crate) fn new_unchecked(probs: Vec<f64>) -> Self {
        Distribution { probs }
    }

    pub fn uniform(n: usize) -> Self {
        Distribution {
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Point mass on `state`.
    pub fn delta(n: usize, state: usize) -> Self {
        let mut probs = vec![0.0; n];
        probs[state] = 1.0;
        Distribution { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, state: usize) -> f64 {
        self.probs[state]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Shannon entropy in nats.
    pub fn shannon_nats(&self) -> f64 {
        -self.probs.iter().map(|&p| math::xlnx(p)).sum::<f64>()
    }
}

/// Conditional jump probabilities P[target | source], stored row-major with
/// `entry(target, source)`; every column sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionKernel {
    n: usize,
    probs: Vec<f64>,
}

impl TransitionKernel {
    /// Build from entries in row-major (target, source) order.
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("kernel needs at least 2 states"));
        }
        if probs.len() != n * n {
            return Err(Error::config(format!(
                "kernel expects {n}x{n} entries, got {}",
                probs.len()
            )));
        }
        if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::domain("kernel entries must lie in [0, 1]"));
        }
        let kernel = TransitionKernel { n, probs };
        for source in 0..n {
            let total: f64 = (0..n).map(|target| kernel.entry(target, source)).sum();
            if math::abs(total - 1.0) > PROB_TOL {
                return Err(Error::domain(format!(
                    "kernel column {source} sums to {total}, expected 1 within {PROB_TOL:e}"
                )));
            }
        }
        Ok(kernel)
    }

    /// Build from rows: `rows[target][source]`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::config("kernel rows must form a square matrix"));
        }
        let probs = rows.iter().flat_map(|r| r.iter().copied()).collect();
        TransitionKernel::new(n, probs)
    }

    pub fn identity(n: usize) -> Self {
        let mut probs = vec![0.0; n * n];
        for i in 0..n {
            probs[i * n + i] = 1.0;
        }
        TransitionKernel { n, probs }
    }

    pub fn n_states(&self) -> usize {
        self.n
    }

    /// P[target | source].
    pub fn entry(&self, target: usize, source: usize) -> f64 {
        self.probs[target * self.n + source]
    }

    /// Column of conditional probabilities out of `source`.
    pub fn column(&self, source: usize) -> Vec<f64> {
        (0..self.n).map(|t| self.entry(t, source)).collect()
    }

    /// Draw the next state from the column of `source` without materializing
    /// the column.
    pub fn sample_next(&self, source: usize, rng: &mut TrajectoryRng) -> usize {
        let u = rng.uniform();
        let mut cumulative = 0.0;
        let mut last_positive = source;
        for target in 0..self.n {
            let p = self.entry(target, source);
            if p > 0.0 {
                cumulative += p;
                last_positive = target;
                if u < cumulative {
                    return target;
                }
            }
        }
        last_positive
    }

    /// Kernel for "apply self, then apply next".
    pub fn then(&self, next: &TransitionKernel) -> Result<TransitionKernel> {
        if next.n != self.n {
            return Err(Error::config("kernel dimensions differ"));
        }
        let n = self.n;
        let mut probs = vec![0.0; n * n];
        for target in 0..n {
            for source in 0..n {
                let mut acc = 0.0;
                for mid in 0..n {
                    acc += next.entry(target, mid) * self.entry(mid, source);
                }
                probs[target * n + source] = acc;
            }
        }
        Ok(TransitionKernel { n, probs })
    }

    /// Pushforward of a distribution through the kernel.
    pub fn apply(&self, p: &Distribution) -> Result<Distribution> {
        if p.len() != self.n {
            return Err(Error::config("kernel/distribution dimension mismatch"));
        }
        let probs = (0..self.n)
            .map(|target| {
                (0..self.n)
                    .map(|source| self.entry(target, source) * p.prob(source))
                    .sum()
            })
            .collect();
        Ok(Distribution::new_unchecked(probs))
    }

    /// Largest detailed-balance residual |p(j) P[i|j] - p(i) P[j|i]|.
    pub fn detailed_balance_residual(&self, stationary: &Distribution) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let flow = stationary.prob(j) * self.entry(i, j)
                    - stationary.prob(i) * self.entry(j, i);
                worst = worst.max(math::abs(flow));
            }
        }
        worst
    }

    /// Lazy mixture (1 - weight) * self + weight * identity.
    ///
    /// Preserves detailed balance and makes every diagonal entry positive,
    /// which is how the bundled strictly-positive thermal kernels are built.
    pub fn lazy(&self, weight: f64) -> Result<TransitionKernel> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::domain("laziness weight must lie in [0, 1]"));
        }
        let mut probs = self.probs.iter().map(|p| (1.0 - weight) * p).collect::<Vec<_>>();
        for i in 0..self.n {
            probs[i * self.n + i] += weight;
        }
        Ok(TransitionKernel { n: self.n, probs })
    }
}

/// One protocol step: relabel energies or apply a thermal kernel.
#[derive(Debug, Clone)]
pub enum Step {
    Drive(EnergyLandscape),
    Bath(TransitionKernel),
}

/// An ordered sequence of drive and bath steps over a fixed state space.
#[derive(Debug, Clone)]
pub struct Protocol {
    initial_landscape: EnergyLandscape,
    steps: Vec<Step>,
    bath_temperature: f64,
}

impl Protocol {
    pub fn new(
        initial_landscape: EnergyLandscape,
        steps: Vec<Step>,
        bath_temperature: f64,
    ) -> Result<Self> {
        if !(bath_temperature > 0.0) {
            return Err(Error::domain("bath temperature must be positive"));
        }
        if steps.is_empty() {
            return Err(Error::config("protocol needs at least one step"));
        }
        let n = initial_landscape.n_states();
        for (k, step) in steps.iter().enumerate() {
            let dim = match step {
                Step::Drive(l) => l.n_states(),
                Step::Bath(kernel) => kernel.n_states(),
            };
            if dim != n {
                return Err(Error::config(format!(
                    "step {k} has {dim} states, protocol has {n}"
                )));
            }
        }
        Ok(Protocol {
            initial_landscape,
            steps,
            bath_temperature,
        })
    }

    pub fn n_states(&self) -> usize {
        self.initial_landscape.n_states()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn initial_landscape(&self) -> &EnergyLandscape {
        &self.initial_landscape
    }

    /// Landscape in force after the last step.
    pub fn final_landscape(&self) -> &EnergyLandscape {
        self.steps
            .iter()
            .rev()
            .find_map(|s| match s {
                Step::Drive(l) => Some(l),
                Step::Bath(_) => None,
            })
            .unwrap_or(&self.initial_landscape)
    }

    pub fn bath_temperature(&self) -> f64 {
        self.bath_temperature
    }

    pub fn bath_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Bath(_)))
            .count()
    }

    /// Checkpoints = recorded states = bath steps + 1.
    pub fn n_checkpoints(&self) -> usize {
        self.bath_count() + 1
    }
}

/// The recorded micro-states, one per checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    states: Vec<usize>,
}

impl Trajectory {
    pub fn new(states: Vec<usize>) -> Self {
        Trajectory { states }
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn initial_state(&self) -> usize {
        self.states[0]
    }

    pub fn final_state(&self) -> usize {
        *self.states.last().unwrap()
    }
}

/// Per-trajectory thermodynamic bookkeeping, all entropies in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryLedger {
    pub work: f64,
    pub heat: f64,
    pub delta_energy: f64,
    /// Boundary term -ln p1(final) + ln p0(initial).
    pub delta_stochastic_entropy: f64,
    /// Boundary term plus per-jump conditional terms; +inf when the reverse
    /// trajectory has probability zero.
    pub entropy_production: f64,
    /// Set when any reverse conditional probability or p1(final) is exactly 0.
    pub backward_probability_zero: bool,
}

/// Boltzmann distribution exp(-E/T)/Z.
pub fn boltzmann_distribution(landscape: &EnergyLandscape, temperature: f64) -> Result<Distribution> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    // Shift by the minimum energy: exact for ratios, avoids overflow.
    let e_min = landscape
        .energies()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = landscape
        .energies()
        .iter()
        .map(|&e| math::exp(-(e - e_min) / temperature))
        .collect();
    let z: f64 = weights.iter().sum();
    Ok(Distribution::new_unchecked(
        weights.into_iter().map(|w| w / z).collect(),
    ))
}

/// Free energy -T ln Z.
///
/// The T prefactor makes the quantity consistent with Jarzynski's equality
/// at any temperature; at T = 1 it reduces to -ln Z.
pub fn free_energy(landscape: &EnergyLandscape, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    let e_min = landscape
        .energies()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let z_shifted: f64 = landscape
        .energies()
        .iter()
        .map(|&e| math::exp(-(e - e_min) / temperature))
        .sum();
    Ok(e_min - temperature * math::ln(z_shifted))
}

/// Metropolis kernel with uniform proposal (weight 1/n on every state,
/// including staying put).
///
/// Acceptance min(1, exp(-dE/T)); rejected proposals stay put, so the
/// diagonal absorbs both rejections and self-proposals. Every entry is
/// strictly positive and the kernel satisfies detailed balance against
/// [`boltzmann_distribution`] of the same landscape.
pub fn metropolis_kernel(landscape: &EnergyLandscape, temperature: f64) -> Result<TransitionKernel> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    let n = landscape.n_states();
    let proposal = 1.0 / n as f64;
    let mut probs = vec![0.0; n * n];
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
            let p = proposal * accept;
            probs[target * n + source] = p;
            stay -= p;
        }
        // Rejections are absorbed on the diagonal; clamp fp dust.
        probs[source * n + source] = stay.max(0.0);
    }
    Ok(TransitionKernel { n, probs })
}

/// Sample one trajectory from a fresh seeded stream.
pub fn sample_trajectory(
    protocol: &Protocol,
    initial: &Distribution,
    seed: u64,
) -> Result<Trajectory> {
    sample_trajectory_with(protocol, initial, &mut TrajectoryRng::stream(seed, 0))
}

/// Sample one trajectory drawing from the given stream.
pub fn sample_trajectory_with(
    protocol: &Protocol,
    initial: &Distribution,
    rng: &mut TrajectoryRng,
) -> Result<Trajectory> {
    if initial.len() != protocol.n_states() {
        return Err(Error::config("initial distribution dimension mismatch"));
    }
    let mut states = Vec::with_capacity(protocol.n_checkpoints());
    let mut current = rng.sample_index(initial.probs());
    states.push(current);
    for step in protocol.steps() {
        if let Step::Bath(kernel) = step {
            current = kernel.sample_next(current, rng);
            states.push(current);
        }
    }
    Ok(Trajectory::new(states))
}

/// Exact marginals at each checkpoint: the initial distribution, then the
/// pushforward after every bath step.
pub fn evolve_distribution(protocol: &Protocol, initial: &Distribution) -> Result<Vec<Distribution>> {
    if initial.len() != protocol.n_states() {
        return Err(Error::config("initial distribution dimension mismatch"));
    }
    let mut marginals = Vec::with_capacity(protocol.n_checkpoints());
    marginals.push(initial.clone());
    for step in protocol.steps() {
        if let Step::Bath(kernel) = step {
            let next = kernel.apply(marginals.last().unwrap())?;
            marginals.push(next);
        }
    }
    Ok(marginals)
}

/// Per-trajectory ledger against the boundary distributions `p0`, `p1`.
///
/// `p1` should be the exact pushforward of `p0` (see [`evolve_distribution`])
/// for the entropy production to obey the integral fluctuation theorem with
/// its standard meaning; callers may pass a different final distribution for
/// counterfactual boundaries, e.g. the equilibrium of the final landscape in
/// Jarzynski's convention.
pub fn ledger(
    protocol: &Protocol,
    trajectory: &Trajectory,
    p0: &Distribution,
    p1: &Distribution,
) -> Result<TrajectoryLedger> {
    let n = protocol.n_states();
    if p0.len() != n || p1.len() != n {
        return Err(Error::config("boundary distribution dimension mismatch"));
    }
    if trajectory.states().len() != protocol.n_checkpoints() {
        return Err(Error::config(format!(
            "trajectory records {} states, protocol has {} checkpoints",
            trajectory.states().len(),
            protocol.n_checkpoints()
        )));
    }
    if trajectory.states().iter().any(|&s| s >= n) {
        return Err(Error::config("trajectory state index out of range"));
    }

    let mut landscape = protocol.initial_landscape();
    let mut work = 0.0;
    let mut heat = 0.0;
    let mut conditional = 0.0;
    let mut backward_zero = false;

    let initial_energy = landscape.energy(trajectory.initial_state());
    let mut checkpoint = 0;
    for step in protocol.steps() {
        match step {
            Step::Drive(next) => {
                let state = trajectory.states()[checkpoint];
                work += next.energy(state) - landscape.energy(state);
                landscape = next;
            }
            Step::Bath(kernel) => {
                let prev = trajectory.states()[checkpoint];
                let next = trajectory.states()[checkpoint + 1];
                checkpoint += 1;
                heat += landscape.energy(next) - landscape.energy(prev);
                let forward = kernel.entry(next, prev);
                let backward = kernel.entry(prev, next);
                if backward == 0.0 {
                    backward_zero = true;
                } else if forward > 0.0 {
                    conditional += math::ln(forward / backward);
                }
            }
        }
    }
    let final_energy = landscape.energy(trajectory.final_state());
    let delta_energy = final_energy - initial_energy;

    let p_start = p0.prob(trajectory.initial_state());
    let p_end = p1.prob(trajectory.final_state());
    if p_end == 0.0 {
        backward_zero = true;
    }
    let delta_stochastic_entropy = if p_start > 0.0 && p_end > 0.0 {
        math::ln(p_start) - math::ln(p_end)
    } else if p_start > 0.0 {
        f64::INFINITY
    } else {
        // Forward-impossible trajectory: the boundary term is not defined;
        // report -inf rather than NaN so averages weighted by P_F = 0 stay clean.
        f64::NEG_INFINITY
    };

    let entropy_production = if backward_zero {
        f64::INFINITY
    } else {
        delta_stochastic_entropy + conditional
    };

    Ok(TrajectoryLedger {
        work,
        heat,
        delta_energy,
        delta_stochastic_entropy,
        entropy_production,
        backward_probability_zero: backward_zero,
    })
}

/// A quench from one landscape to another split into `substeps` equal drive
/// increments, each followed by a Metropolis bath step at the current
/// landscape. With one substep this is a sudden quench plus relaxation; with
/// many it approaches the quasi-static (reversible) limit.
pub fn staged_quench(
    from: &EnergyLandscape,
    to: &EnergyLandscape,
    substeps: usize,
    temperature: f64,
) -> Result<Protocol> {
    if from.n_states() != to.n_states() {
        return Err(Error::config("quench endpoints have different state counts"));
    }
    if substeps == 0 {
        return Err(Error::domain("need at least one substep"));
    }
    let n = from.n_states();
    let mut steps = Vec::with_capacity(2 * substeps);
    for k in 1..=substeps {
        let fraction = k as f64 / substeps as f64;
        let energies: Vec<f64> = (0..n)
            .map(|i| from.energy(i) + fraction * (to.energy(i) - from.energy(i)))
            .collect();
        let landscape = EnergyLandscape::new(energies)?;
        let kernel = metropolis_kernel(&landscape, temperature)?;
        steps.push(Step::Drive(landscape));
        steps.push(Step::Bath(kernel));
    }
    Protocol::new(from.clone(), steps, temperature)
}

/// Relative entropy D(p || p_eq) in nats; the distance to equilibrium.
pub fn kl_to_equilibrium(p: &Distribution, p_eq: &Distribution) -> Result<f64> {
    if p.len() != p_eq.len() {
        return Err(Error::config("distribution dimension mismatch"));
    }
    let mut d = 0.0;
    for i in 0..p.len() {
        let pi = p.prob(i);
        if pi > 0.0 {
            let qi = p_eq.prob(i);
            if qi == 0.0 {
                return Err(Error::domain(format!(
                    "support violation at state {i}: p > 0 where p_eq = 0"
                )));
            }
            d += pi * (math::ln(pi) - math::ln(qi));
        }
    }
    // Rounding can leave a tiny negative value when p == p_eq.
    Ok(d.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn two_level() -> EnergyLandscape {
        EnergyLandscape::new(vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn boltzmann_degenerate_levels() {
        let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
        let p = boltzmann_distribution(&flat, 1.0).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn boltzmann_two_level() {
        let p = boltzmann_distribution(&two_level(), 1.0).unwrap();
        assert_abs_diff_eq!(p.prob(0), 0.7310585786300049, epsilon = 1e-12);
        assert_abs_diff_eq!(p.prob(1), 0.2689414213699951, epsilon = 1e-12);
    }

    #[test]
    fn boltzmann_infinite_temperature_limit() {
        let p = boltzmann_distribution(&two_level(), 1e6).unwrap();
        assert_abs_diff_eq!(p.prob(0), 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(p.prob(1), 0.5, epsilon = 1e-6);
    }

    #[test]
    fn boltzmann_rejects_bad_temperature() {
        assert!(boltzmann_distribution(&two_level(), 0.0).is_err());
        assert!(boltzmann_distribution(&two_level(), -1.0).is_err());
    }

    #[test]
    fn free_energy_values() {
        let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            free_energy(&flat, 1.0).unwrap(),
            -core::f64::consts::LN_2,
            epsilon = 1e-14
        );
        // -ln(1 + e^-1)
        assert_abs_diff_eq!(
            free_energy(&two_level(), 1.0).unwrap(),
            -0.31326168751822286,
            epsilon = 1e-12
        );
    }

    #[test]
    fn free_energy_uniform_shift() {
        for &(c, t) in &[(3.5, 1.0), (-2.0, 0.7), (0.25, 4.0)] {
            let shifted = EnergyLandscape::new(vec![c, c]).unwrap();
            assert_abs_diff_eq!(
                free_energy(&shifted, t).unwrap(),
                c - t * core::f64::consts::LN_2,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn metropolis_two_level_entries() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        // uphill: propose w.p. 1, accept e^-1
        assert_abs_diff_eq!(k.entry(1, 0), 0.18393972058572117, epsilon = 1e-12);
        // downhill: always accepted
        assert_abs_diff_eq!(k.entry(0, 1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(k.entry(0, 0), 1.0 - 0.18393972058572117, epsilon = 1e-12);
        assert_abs_diff_eq!(k.entry(1, 1), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn metropolis_flat_landscape_all_accepted() {
        // Every proposal is accepted, so all entries equal the proposal 1/n.
        let flat = EnergyLandscape::new(vec![1.0, 1.0, 1.0]).unwrap();
        let k = metropolis_kernel(&flat, 2.0).unwrap();
        for s in 0..3 {
            for t in 0..3 {
                assert_abs_diff_eq!(k.entry(t, s), 1.0 / 3.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn metropolis_is_strictly_positive() {
        for &(es, t) in &[
            (&[0.0, 1.0][..], 1.0),
            (&[0.0, 0.5, 2.0][..], 0.3),
            (&[1.0, 1.0, 1.0, 1.0][..], 5.0),
        ] {
            let landscape = EnergyLandscape::new(es.to_vec()).unwrap();
            let k = metropolis_kernel(&landscape, t).unwrap();
            for s in 0..landscape.n_states() {
                for target in 0..landscape.n_states() {
                    assert!(k.entry(target, s) > 0.0);
                }
            }
        }
    }

    #[test]
    fn metropolis_detailed_balance() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        let eq = boltzmann_distribution(&two_level(), 1.0).unwrap();
        assert!(k.detailed_balance_residual(&eq) < 1e-12);
        // p_inf(0) P[1|0] = p_inf(1) P[0|1] = 0.1345
        let flow = eq.prob(0) * k.entry(1, 0);
        assert_abs_diff_eq!(flow, 0.1345, epsilon = 1e-4);
        assert_abs_diff_eq!(flow, eq.prob(1) * k.entry(0, 1), epsilon = 1e-15);
    }

    #[test]
    fn kernel_composition_stays_column_stochastic() {
        let a = metropolis_kernel(&two_level(), 1.0).unwrap();
        let b = metropolis_kernel(&two_level(), 0.5).unwrap();
        let c = a.then(&b).unwrap();
        for source in 0..2 {
            let total: f64 = (0..2).map(|t| c.entry(t, source)).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn evolve_identity_kernel_is_constant() {
        let protocol = Protocol::new(
            two_level(),
            vec![Step::Bath(TransitionKernel::identity(2))],
            1.0,
        )
        .unwrap();
        let p0 = Distribution::new(vec![0.3, 0.7]).unwrap();
        let marginals = evolve_distribution(&protocol, &p0).unwrap();
        assert_eq!(marginals.len(), 2);
        assert_eq!(marginals[1].probs(), p0.probs());
    }

    #[test]
    fn evolve_boltzmann_is_fixed_point() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(k)], 1.0).unwrap();
        let eq = boltzmann_distribution(&two_level(), 1.0).unwrap();
        let marginals = evolve_distribution(&protocol, &eq).unwrap();
        for i in 0..2 {
            assert_abs_diff_eq!(marginals[1].prob(i), eq.prob(i), epsilon = 1e-12);
        }
    }

    #[test]
    fn evolve_single_metropolis_step() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(k)], 1.0).unwrap();
        let p0 = Distribution::new(vec![1.0, 0.0]).unwrap();
        let marginals = evolve_distribution(&protocol, &p0).unwrap();
        assert_abs_diff_eq!(marginals[1].prob(0), 0.8160602794142788, epsilon = 1e-12);
        assert_abs_diff_eq!(marginals[1].prob(1), 0.18393972058572117, epsilon = 1e-12);
    }

    #[test]
    fn sampling_no_bath_steps_records_initial_only() {
        let protocol = Protocol::new(
            two_level(),
            vec![Step::Drive(EnergyLandscape::new(vec![0.0, 2.0]).unwrap())],
            1.0,
        )
        .unwrap();
        let traj = sample_trajectory(&protocol, &Distribution::delta(2, 1), 5).unwrap();
        assert_eq!(traj.states(), &[1]);
    }

    #[test]
    fn sampling_identity_kernel_keeps_state() {
        let protocol = Protocol::new(
            two_level(),
            vec![
                Step::Bath(TransitionKernel::identity(2)),
                Step::Bath(TransitionKernel::identity(2)),
            ],
            1.0,
        )
        .unwrap();
        for seed in 0..20 {
            let traj = sample_trajectory(&protocol, &Distribution::delta(2, 1), seed).unwrap();
            assert_eq!(traj.states(), &[1, 1, 1]);
        }
    }

    #[test]
    fn sampling_deterministic_swap() {
        let swap = TransitionKernel::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(swap)], 1.0).unwrap();
        for seed in 0..20 {
            let traj = sample_trajectory(&protocol, &Distribution::delta(2, 0), seed).unwrap();
            assert_eq!(traj.states(), &[0, 1]);
        }
    }

    /// Quench from the flat landscape: work is booked at the frozen state and
    /// the Jarzynski boundary (equilibrium of the final landscape) reproduces
    /// dS_i = W - dF.
    #[test]
    fn quench_ledger_against_jarzynski_boundary() {
        let flat = EnergyLandscape::new(vec![0.0, 0.0]).unwrap();
        let protocol = Protocol::new(flat.clone(), vec![Step::Drive(two_level())], 1.0).unwrap();
        let p0 = boltzmann_distribution(&flat, 1.0).unwrap();
        let p1 = boltzmann_distribution(&two_level(), 1.0).unwrap();
        let delta_f = free_energy(&two_level(), 1.0).unwrap() - free_energy(&flat, 1.0).unwrap();
        assert_abs_diff_eq!(delta_f, 0.3798854930417224, epsilon = 1e-12);

        let up = ledger(&protocol, &Trajectory::new(vec![1]), &p0, &p1).unwrap();
        assert_eq!(up.work, 1.0);
        assert_eq!(up.heat, 0.0);
        assert_abs_diff_eq!(up.entropy_production, 1.0 - delta_f, epsilon = 1e-12);
        assert_abs_diff_eq!(up.entropy_production, 0.6201145069582776, epsilon = 1e-10);

        let down = ledger(&protocol, &Trajectory::new(vec![0]), &p0, &p1).unwrap();
        assert_eq!(down.work, 0.0);
        assert_abs_diff_eq!(down.entropy_production, -delta_f, epsilon = 1e-12);
    }

    /// At equilibrium with the matching kernel every two-point trajectory has
    /// zero entropy production: micro-reversibility.
    #[test]
    fn equilibrium_trajectories_produce_nothing() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(k)], 1.0).unwrap();
        let eq = boltzmann_distribution(&two_level(), 1.0).unwrap();
        let p1 = evolve_distribution(&protocol, &eq).unwrap().pop().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let l = ledger(&protocol, &Trajectory::new(vec![i, j]), &eq, &p1).unwrap();
                assert!(math::abs(l.entropy_production) < 1e-12);
            }
        }
    }

    #[test]
    fn first_law_closure_on_sampled_trajectories() {
        let e1 = EnergyLandscape::new(vec![0.0, 0.7, 1.4]).unwrap();
        let e2 = EnergyLandscape::new(vec![0.3, 0.1, 0.9]).unwrap();
        let k1 = metropolis_kernel(&e1, 0.8).unwrap();
        let k2 = metropolis_kernel(&e2, 0.8).unwrap();
        let protocol = Protocol::new(
            e1,
            vec![Step::Bath(k1), Step::Drive(e2), Step::Bath(k2)],
            0.8,
        )
        .unwrap();
        let p0 = Distribution::uniform(3);
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        for seed in 0..50 {
            let traj = sample_trajectory(&protocol, &p0, seed).unwrap();
            let l = ledger(&protocol, &traj, &p0, &p1).unwrap();
            assert!(math::abs(l.work + l.heat - l.delta_energy) < 1e-10);
        }
    }

    #[test]
    fn ledger_rejects_wrong_checkpoint_count() {
        let k = metropolis_kernel(&two_level(), 1.0).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(k)], 1.0).unwrap();
        let p = Distribution::uniform(2);
        assert!(ledger(&protocol, &Trajectory::new(vec![0]), &p, &p).is_err());
    }

    #[test]
    fn backward_zero_is_flagged_with_infinite_production() {
        // Absorbing state 0: jumps 1 -> 0 can never be reversed.
        let absorbing =
            TransitionKernel::from_rows(&[vec![1.0, 0.5], vec![0.0, 0.5]]).unwrap();
        let protocol = Protocol::new(two_level(), vec![Step::Bath(absorbing)], 1.0).unwrap();
        let p0 = Distribution::uniform(2);
        let p1 = evolve_distribution(&protocol, &p0).unwrap().pop().unwrap();
        let l = ledger(&protocol, &Trajectory::new(vec![1, 0]), &p0, &p1).unwrap();
        assert!(l.backward_probability_zero);
        assert_eq!(l.entropy_production, f64::INFINITY);
        assert!(!l.entropy_production.is_nan());
    }

    #[test]
    fn kl_examples() {
        let eq = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_to_equilibrium(&eq, &eq).unwrap(), 0.0);

        let pure = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            kl_to_equilibrium(&pure, &eq).unwrap(),
            core::f64::consts::LN_2,
            epsilon = 1e-14
        );

        let p = Distribution::new(vec![0.9, 0.1]).unwrap();
        let b = boltzmann_distribution(&two_level(), 1.0).unwrap();
        let brute = 0.9 * math::ln(0.9 / b.prob(0)) + 0.1 * math::ln(0.1 / b.prob(1));
        let d = kl_to_equilibrium(&p, &b).unwrap();
        assert!(d >= 0.0);
        assert_abs_diff_eq!(d, brute, epsilon = 1e-14);
    }

    #[test]
    fn kl_support_violation_errors() {
        let p = Distribution::new(vec![0.5, 0.5]).unwrap();
        let q = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert!(kl_to_equilibrium(&p, &q).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::new(vec![0.25; 4]).is_ok());
    }

    #[test]
    fn kernel_validation() {
        // Column 0 sums to 0.9.
        assert!(TransitionKernel::from_rows(&[vec![0.4, 0.5], vec![0.5, 0.5]]).is_err());
        assert!(TransitionKernel::from_rows(&[vec![1.5, 0.0], vec![-0.5, 1.0]]).is_err());
    }
}
