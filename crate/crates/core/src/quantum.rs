//! Pure-state quantum trajectories of a driven qubit under projective
//! measurement.
//!
//! The qubit Hamiltonian is H = omega0 |1><1| (natural units, hbar = 1);
//! unitaries are specified in the rotating frame where the drive is
//! time-independent, while energies are always evaluated against the bare H.
//! Work is the expectation-energy change across unitary segments, quantum
//! heat the jump in expectation energy caused by a projective measurement,
//! and the per-trajectory entropy production of a measured protocol is
//! -ln p(outcome).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::TrajectoryRng;
use crate::NORM_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A normalized qubit state in the energy basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amplitudes: [Complex64; 2],
}

impl PureState {
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm_sq = a0.norm_sqr() + a1.norm_sqr();
        if math::abs(norm_sq - 1.0) > NORM_TOL {
            return Err(Error::domain(alloc::format!(
                "state norm^2 = {norm_sq}, expected 1 within {NORM_TOL:e}"
            )));
        }
        Ok(PureState {
            amplitudes: [a0, a1],
        })
    }

    pub fn ket0() -> Self {
        PureState {
            amplitudes: [c(1.0), ZERO],
        }
    }

    pub fn ket1() -> Self {
        PureState {
            amplitudes: [ZERO, c(1.0)],
        }
    }

    /// |+> = (|0> + |1>)/sqrt(2).
    pub fn plus() -> Self {
        let h = c(core::f64::consts::FRAC_1_SQRT_2);
        PureState { amplitudes: [h, h] }
    }

    /// |-> = (-|0> + |1>)/sqrt(2).
    pub fn minus() -> Self {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        PureState {
            amplitudes: [c(-h), c(h)],
        }
    }

    pub fn amplitude(&self, level: usize) -> Complex64 {
        self.amplitudes[level]
    }

    /// The inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes[0].conj() * other.amplitudes[0]
            + self.amplitudes[1].conj() * other.amplitudes[1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes[0].norm_sqr() + self.amplitudes[1].norm_sqr()
    }

    /// Fix the global phase: the largest-magnitude amplitude becomes real
    /// and non-negative, making state comparisons well-defined.
    pub fn canonicalized(&self) -> PureState {
        let [a0, a1] = self.amplitudes;
        let pivot = if a0.norm_sqr() >= a1.norm_sqr() { a0 } else { a1 };
        let magnitude = math::sqrt(pivot.norm_sqr());
        if magnitude == 0.0 {
            return *self;
        }
        let phase = pivot.conj() / magnitude;
        PureState {
            amplitudes: [a0 * phase, a1 * phase],
        }
    }
}

/// A 2x2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    /// `rows[r][c] = <r|U|c>`.
    rows: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub fn new(rows: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Unitary2 { rows };
        let residual = u.unitarity_residual();
        if residual > NORM_TOL {
            return Err(Error::domain(alloc::format!(
                "matrix is not unitary (residual {residual:e})"
            )));
        }
        Ok(u)
    }

    fn unitarity_residual(&self) -> f64 {
        // max |(U^dag U - I)_{ij}|
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut entry = ZERO;
                for k in 0..2 {
                    entry += self.rows[k][i].conj() * self.rows[k][j];
                }
                if i == j {
                    entry -= c(1.0);
                }
                worst = worst.max(math::sqrt(entry.norm_sqr()));
            }
        }
        worst
    }

    pub fn identity() -> Self {
        Unitary2 {
            rows: [[c(1.0), ZERO], [ZERO, c(1.0)]],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row][col]
    }

    pub fn adjoint(&self) -> Unitary2 {
        Unitary2 {
            rows: [
                [self.rows[0][0].conj(), self.rows[1][0].conj()],
                [self.rows[0][1].conj(), self.rows[1][1].conj()],
            ],
        }
    }

    pub fn apply(&self, state: &PureState) -> PureState {
        let a0 = self.rows[0][0] * state.amplitude(0) + self.rows[0][1] * state.amplitude(1);
        let a1 = self.rows[1][0] * state.amplitude(0) + self.rows[1][1] * state.amplitude(1);
        PureState {
            amplitudes: [a0, a1],
        }
    }

    /// Unitary for "apply self, then next".
    pub fn then(&self, next: &Unitary2) -> Unitary2 {
        let mut rows = [[ZERO; 2]; 2];
        for r in 0..2 {
            for col in 0..2 {
                for k in 0..2 {
                    rows[r][col] += next.rows[r][k] * self.rows[k][col];
                }
            }
        }
        Unitary2 { rows }
    }
}

/// Resonant Rabi rotation by angle omega_rabi * t, phase fixed so the matrix
/// is real: |0> -> cos(Omega t/2)|0> + sin(Omega t/2)|1>.
pub fn rabi_propagator(omega_rabi: f64, t: f64) -> Result<Unitary2> {
    if t < 0.0 {
        return Err(Error::domain("duration must be non-negative"));
    }
    let half = omega_rabi * t / 2.0;
    let (s, co) = (math::sin(half), math::cos(half));
    Ok(Unitary2 {
        rows: [[c(co), c(-s)], [c(s), c(co)]],
    })
}

/// `<H> = omega0 |a1|^2` against the bare Hamiltonian `H = omega0 |1><1|`.
pub fn expected_energy(state: &PureState, omega0: f64) -> f64 {
    omega0 * state.amplitude(1).norm_sqr()
}

/// Two orthonormal measurement eigenstates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    states: [PureState; 2],
}

impl MeasurementBasis {
    pub fn new(states: [PureState; 2]) -> Result<Self> {
        let overlap = states[0].inner(&states[1]);
        if math::sqrt(overlap.norm_sqr()) > NORM_TOL {
            return Err(Error::domain("basis states are not orthogonal"));
        }
        Ok(MeasurementBasis { states })
    }

    /// Energy basis {|0>, |1>}.
    pub fn z() -> Self {
        MeasurementBasis {
            states: [PureState::ket0(), PureState::ket1()],
        }
    }

    /// Superposition basis {|+>, |->}.
    pub fn x() -> Self {
        MeasurementBasis {
            states: [PureState::plus(), PureState::minus()],
        }
    }

    pub fn state(&self, outcome: usize) -> &PureState {
        &self.states[outcome]
    }

    /// Born probabilities |<m_k|psi>|^2.
    pub fn born_probabilities(&self, state: &PureState) -> [f64; 2] {
        [
            self.states[0].inner(state).norm_sqr(),
            self.states[1].inner(state).norm_sqr(),
        ]
    }
}

/// Result of one projective measurement.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementOutcome {
    pub outcome: usize,
    pub post_state: PureState,
    /// `<H>(post) - <H>(pre)`: the back-action energy jump.
    pub quantum_heat: f64,
    pub probability: f64,
}

/// Projectively measure, drawing the outcome from the given stream.
pub fn projective_measure(
    state: &PureState,
    basis: &MeasurementBasis,
    omega0: f64,
    rng: &mut TrajectoryRng,
) -> MeasurementOutcome {
    let probs = basis.born_probabilities(state);
    let outcome = rng.sample_index(&probs);
    measurement_record(state, basis, omega0, outcome, probs[outcome])
}

/// Projectively measure with a fresh stream derived from `seed`.
pub fn projective_measure_seeded(
    state: &PureState,
    basis: &MeasurementBasis,
    omega0: f64,
    seed: u64,
) -> MeasurementOutcome {
    projective_measure(state, basis, omega0, &mut TrajectoryRng::stream(seed, 0))
}

fn measurement_record(
    state: &PureState,
    basis: &MeasurementBasis,
    omega0: f64,
    outcome: usize,
    probability: f64,
) -> MeasurementOutcome {
    let post_state = *basis.state(outcome);
    MeasurementOutcome {
        outcome,
        post_state,
        quantum_heat: expected_energy(&post_state, omega0) - expected_energy(state, omega0),
        probability,
    }
}

/// Exact per-outcome entropy production of an (initial, U, measure) protocol.
#[derive(Debug, Clone)]
pub struct EntropyProductionReport {
    /// (probability, dS_i) for every branch with nonzero probability.
    pub branches: Vec<(f64, f64)>,
    /// Outcome distribution after the final measurement.
    pub outcome_probabilities: Vec<f64>,
    /// <dS_i> = sum p (-ln p) plus the initial-mixture correction.
    pub mean_entropy_production: f64,
    /// Von Neumann entropy increase, computed independently through the
    /// density matrices.
    pub delta_s_vn: f64,
}

/// Entropy production for a protocol starting in an eigenstate of the
/// measured observable.
pub fn entropy_production_protocol(
    initial: &PureState,
    unitary: &Unitary2,
    basis: &MeasurementBasis,
) -> Result<EntropyProductionReport> {
    let overlap = basis.born_probabilities(initial);
    let eigen_index = if math::abs(overlap[0] - 1.0) <= 1e-9 {
        0
    } else if math::abs(overlap[1] - 1.0) <= 1e-9 {
        1
    } else {
        return Err(Error::config(
            "initial state is not an eigenstate of the measured observable; \
             use entropy_production_protocol_mixed with an eigenstate distribution",
        ));
    };
    let mut weights = [0.0; 2];
    weights[eigen_index] = 1.0;
    entropy_production_protocol_mixed(&weights, unitary, basis)
}

/// Extension to an initial statistical mixture of measurement eigenstates
/// with the given weights.
pub fn entropy_production_protocol_mixed(
    initial_weights: &[f64; 2],
    unitary: &Unitary2,
    basis: &MeasurementBasis,
) -> Result<EntropyProductionReport> {
    let total: f64 = initial_weights.iter().sum();
    if initial_weights.iter().any(|&w| w < 0.0) || math::abs(total - 1.0) > crate::PROB_TOL {
        return Err(Error::domain("eigenstate weights must be a distribution"));
    }

    // Transition probabilities P[k|j] = |<m_k|U|m_j>|^2 (doubly stochastic).
    let mut transition = [[0.0; 2]; 2];
    for (j, row) in transition.iter_mut().enumerate() {
        let evolved = unitary.apply(basis.state(j));
        *row = basis.born_probabilities(&evolved);
    }

    let mut outcome_probabilities = alloc::vec![0.0; 2];
    for k in 0..2 {
        for j in 0..2 {
            outcome_probabilities[k] += initial_weights[j] * transition[j][k];
        }
    }

    let mut branches = Vec::new();
    let mut mean = 0.0;
    for j in 0..2 {
        let q = initial_weights[j];
        if q == 0.0 {
            continue;
        }
        for k in 0..2 {
            let p_branch = q * transition[j][k];
            if p_branch == 0.0 {
                continue;
            }
            // ln q_j - ln p_k: the two-point production with the backward
            // protocol measuring, applying U^dag, and measuring again.
            let si = math::ln(q) - math::ln(outcome_probabilities[k]);
            branches.push((p_branch, si));
            mean += p_branch * si;
        }
    }

    // Independent route: Von Neumann entropies of the pre- and post-mixtures.
    let pre: Vec<(f64, PureState)> = (0..2)
        .filter(|&j| initial_weights[j] > 0.0)
        .map(|j| (initial_weights[j], *basis.state(j)))
        .collect();
    let post: Vec<(f64, PureState)> = (0..2)
        .filter(|&k| outcome_probabilities[k] > 0.0)
        .map(|k| (outcome_probabilities[k], *basis.state(k)))
        .collect();
    let delta_s_vn = von_neumann_entropy(&post)? - von_neumann_entropy(&pre)?;

    Ok(EntropyProductionReport {
        branches,
        outcome_probabilities,
        mean_entropy_production: mean,
        delta_s_vn,
    })
}

/// Von Neumann entropy -Tr rho ln rho of a mixture of pure states, in nats,
/// from the eigenvalues of the 2x2 density matrix.
pub fn von_neumann_entropy(mixture: &[(f64, PureState)]) -> Result<f64> {
    if mixture.is_empty() {
        return Err(Error::domain("mixture cannot be empty"));
    }
    let weight: f64 = mixture.iter().map(|(p, _)| p).sum();
    if mixture.iter().any(|&(p, _)| p < 0.0) || math::abs(weight - 1.0) > crate::PROB_TOL {
        return Err(Error::domain("mixture weights must form a distribution"));
    }
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = ZERO;
    for (p, state) in mixture {
        rho00 += p * state.amplitude(0).norm_sqr();
        rho11 += p * state.amplitude(1).norm_sqr();
        rho01 += c(*p) * state.amplitude(0) * state.amplitude(1).conj();
    }
    let mean = 0.5 * (rho00 + rho11);
    let det = rho00 * rho11 - rho01.norm_sqr();
    let disc = math::sqrt((mean * mean - det).max(0.0));
    let lambda = [
        (mean + disc).clamp(0.0, 1.0),
        (mean - disc).clamp(0.0, 1.0),
    ];
    Ok(-(math::xlnx(lambda[0]) + math::xlnx(lambda[1])))
}

/// One step of a quantum trajectory: coherent drive or projective readout.
#[derive(Debug, Clone)]
pub enum TrajectoryStep {
    Unitary(Unitary2),
    Measure(MeasurementBasis),
}

/// Per-step ledger entry. Unitary steps book work; measurement steps book
/// quantum heat, the outcome, its Born probability, and -ln p in nats.
#[derive(Debug, Clone, Copy)]
pub struct QuantumLedger {
    pub work: f64,
    pub quantum_heat: f64,
    pub outcome: Option<usize>,
    pub outcome_probability: f64,
    pub entropy_production: f64,
}

/// Sum a trajectory's per-step ledgers; the probability multiplies.
pub fn ledger_totals(ledgers: &[QuantumLedger]) -> QuantumLedger {
    let mut total = QuantumLedger {
        work: 0.0,
        quantum_heat: 0.0,
        outcome: None,
        outcome_probability: 1.0,
        entropy_production: 0.0,
    };
    for l in ledgers {
        total.work += l.work;
        total.quantum_heat += l.quantum_heat;
        total.outcome_probability *= l.outcome_probability;
        total.entropy_production += l.entropy_production;
    }
    total
}

/// Sample one multi-segment trajectory; returns one ledger per step and the
/// final state.
pub fn sample_quantum_trajectory(
    initial: &PureState,
    steps: &[TrajectoryStep],
    omega0: f64,
    seed: u64,
) -> (Vec<QuantumLedger>, PureState) {
    let mut rng = TrajectoryRng::stream(seed, 0);
    let mut state = *initial;
    let mut ledgers = Vec::with_capacity(steps.len());
    for step in steps {
        match step {
            TrajectoryStep::Unitary(u) => {
                let before = expected_energy(&state, omega0);
                state = u.apply(&state);
                ledgers.push(QuantumLedger {
                    work: expected_energy(&state, omega0) - before,
                    quantum_heat: 0.0,
                    outcome: None,
                    outcome_probability: 1.0,
                    entropy_production: 0.0,
                });
            }
            TrajectoryStep::Measure(basis) => {
                let record = projective_measure(&state, basis, omega0, &mut rng);
                state = record.post_state;
                ledgers.push(QuantumLedger {
                    work: 0.0,
                    quantum_heat: record.quantum_heat,
                    outcome: Some(record.outcome),
                    outcome_probability: record.probability,
                    entropy_production: -math::ln(record.probability),
                });
            }
        }
    }
    (ledgers, state)
}

/// One enumerated branch of a measured protocol.
#[derive(Debug, Clone)]
pub struct QuantumBranch {
    pub outcomes: Vec<usize>,
    pub probability: f64,
    pub work: f64,
    pub quantum_heat: f64,
    /// Sum of -ln p over the branch's measurements.
    pub entropy_production: f64,
    pub final_state: PureState,
}

/// Cap on enumerated branches (2 outcomes per measurement).
pub const BRANCH_CAP: u32 = 16;

/// Enumerate every measurement branch exactly. Branches with probability
/// zero are omitted; the kept probabilities sum to 1.
pub fn enumerate_quantum_branches(
    initial: &PureState,
    steps: &[TrajectoryStep],
    omega0: f64,
) -> Result<Vec<QuantumBranch>> {
    let measurements = steps
        .iter()
        .filter(|s| matches!(s, TrajectoryStep::Measure(_)))
        .count() as u32;
    if measurements > BRANCH_CAP {
        return Err(Error::Capacity {
            detail: alloc::string::String::from("quantum branch enumeration"),
            rows: 1u128 << measurements,
            cap: 1u128 << BRANCH_CAP,
        });
    }

    struct Frame {
        state: PureState,
        step: usize,
        outcomes: Vec<usize>,
        probability: f64,
        work: f64,
        quantum_heat: f64,
        entropy_production: f64,
    }

    let mut branches = Vec::new();
    let mut stack = alloc::vec![Frame {
        state: *initial,
        step: 0,
        outcomes: Vec::new(),
        probability: 1.0,
        work: 0.0,
        quantum_heat: 0.0,
        entropy_production: 0.0,
    }];

    while let Some(mut frame) = stack.pop() {
        let mut done = true;
        while frame.step < steps.len() {
            match &steps[frame.step] {
                TrajectoryStep::Unitary(u) => {
                    let before = expected_energy(&frame.state, omega0);
                    frame.state = u.apply(&frame.state);
                    frame.work += expected_energy(&frame.state, omega0) - before;
                    frame.step += 1;
                }
                TrajectoryStep::Measure(basis) => {
                    let probs = basis.born_probabilities(&frame.state);
                    let pre_energy = expected_energy(&frame.state, omega0);
                    for outcome in (0..2).rev() {
                        if probs[outcome] == 0.0 {
                            continue;
                        }
                        let post = *basis.state(outcome);
                        let mut outcomes = frame.outcomes.clone();
                        outcomes.push(outcome);
                        stack.push(Frame {
                            state: post,
                            step: frame.step + 1,
                            outcomes,
                            probability: frame.probability * probs[outcome],
                            work: frame.work,
                            quantum_heat: frame.quantum_heat
                                + expected_energy(&post, omega0)
                                - pre_energy,
                            entropy_production: frame.entropy_production
                                - math::ln(probs[outcome]),
                        });
                    }
                    done = false;
                    break;
                }
            }
        }
        if done {
            branches.push(QuantumBranch {
                outcomes: frame.outcomes,
                probability: frame.probability,
                work: frame.work,
                quantum_heat: frame.quantum_heat,
                entropy_production: frame.entropy_production,
                final_state: frame.state,
            });
        }
    }

    Ok(branches)
}
