//! Classical information thermodynamics: Szilard/Landauer bounds, noisy
//! bit measurement, stochastic mutual information, the generalized integral
//! fluctuation theorem for feedback, and demon efficiency.
//!
//! Thermodynamic quantities stay in nats; information in bits, with the
//! ln 2 conversion made explicit wherever the two meet.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::stochastic::{Distribution, TransitionKernel};
use crate::PROB_TOL;

/// Binary Shannon entropy in bits, with 0 log 0 = 0.
pub fn shannon_entropy_bits(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(-(math::xlnx(p) + math::xlnx(1.0 - p)) / math::LN_2)
}

/// Shannon entropy of a probability vector, in bits.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| math::xlnx(p)).sum::<f64>() / math::LN_2
}

/// Szilard bound T ln 2: the most work one bit can buy (natural units).
pub fn szilard_work_bound(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    Ok(temperature * math::LN_2)
}

/// Landauer erasure bound `T ln2 H[p]` (natural units).
///
/// The ln 2 converts the bit-valued entropy so that a full bit (p = 1/2)
/// reproduces the Szilard bound.
pub fn landauer_cost(p: f64, temperature: f64) -> Result<f64> {
    Ok(szilard_work_bound(temperature)? * shannon_entropy_bits(p)?)
}

/// Joint distribution p(x, m) over system state x and memory state m.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    n_x: usize,
    n_m: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    /// Build from `rows[x][m]`.
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n_x = rows.len();
        if n_x == 0 {
            return Err(Error::domain("joint distribution cannot be empty"));
        }
        let n_m = rows[0].len();
        if n_m == 0 || rows.iter().any(|r| r.len() != n_m) {
            return Err(Error::config("joint distribution rows must be rectangular"));
        }
        let probs: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::domain("joint probabilities must lie in [0, 1]"));
        }
        let total: f64 = probs.iter().sum();
        if math::abs(total - 1.0) > PROB_TOL {
            return Err(Error::domain(format!(
                "joint probabilities sum to {total}, expected 1 within {PROB_TOL:e}"
            )));
        }
        Ok(JointDistribution { n_x, n_m, probs })
    }

    fn new_unchecked(n_x: usize, n_m: usize, probs: Vec<f64>) -> Self {
        JointDistribution { n_x, n_m, probs }
    }

    pub fn n_system(&self) -> usize {
        self.n_x
    }

    pub fn n_memory(&self) -> usize {
        self.n_m
    }

    pub fn prob(&self, x: usize, m: usize) -> f64 {
        self.probs[x * self.n_m + m]
    }

    /// Marginal over the system (row sums).
    pub fn marginal_system(&self) -> Vec<f64> {
        (0..self.n_x)
            .map(|x| (0..self.n_m).map(|m| self.prob(x, m)).sum())
            .collect()
    }

    /// Marginal over the memory (column sums).
    pub fn marginal_memory(&self) -> Vec<f64> {
        (0..self.n_m)
            .map(|m| (0..self.n_x).map(|x| self.prob(x, m)).sum())
            .collect()
    }
}

/// Correlate a bit with a memory through a binary symmetric readout:
/// p(x, m) = p(x) * (1 - eps) if m = x, else p(x) * eps.
pub fn measure_bit(system: &Distribution, error_rate: f64) -> Result<JointDistribution> {
    if system.len() != 2 {
        return Err(Error::config("measure_bit expects a two-state system"));
    }
    if !(0.0..=0.5).contains(&error_rate) {
        return Err(Error::domain(format!(
            "error rate {error_rate} outside [0, 0.5]"
        )));
    }
    let mut probs = Vec::with_capacity(4);
    for x in 0..2 {
        for m in 0..2 {
            let channel = if m == x { 1.0 - error_rate } else { error_rate };
            probs.push(system.prob(x) * channel);
        }
    }
    Ok(JointDistribution::new_unchecked(2, 2, probs))
}

/// Per-outcome stochastic mutual information in the sign convention
/// log2(p(x)p(m)) - log2(p(x,m)).
///
/// Note the average of this quantity is the *negative* of the standard
/// mutual information; use [`average_mutual_info_bits`] for the usual
/// non-negative I(S:M).
pub fn stochastic_mutual_info(joint: &JointDistribution, x: usize, m: usize) -> Result<f64> {
    let pxm = joint.prob(x, m);
    if pxm == 0.0 {
        return Err(Error::domain(format!(
            "joint probability p({x},{m}) is zero; stochastic mutual information undefined"
        )));
    }
    let px = joint.marginal_system()[x];
    let pm = joint.marginal_memory()[m];
    Ok(math::log2(px * pm) - math::log2(pxm))
}

/// Average mutual information I(S:M) = H_S + H_M - H_SM, in bits (>= 0).
pub fn average_mutual_info_bits(joint: &JointDistribution) -> f64 {
    let h_s = entropy_bits(&joint.marginal_system());
    let h_m = entropy_bits(&joint.marginal_memory());
    let h_sm = entropy_bits(&joint.probs);
    (h_s + h_m - h_sm).max(0.0)
}

/// Feedback: one stochastic kernel on the system per memory state.
#[derive(Debug, Clone)]
pub struct FeedbackRule {
    kernels: Vec<TransitionKernel>,
}

impl FeedbackRule {
    pub fn new(kernels: Vec<TransitionKernel>) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::config(
                "feedback rule needs one kernel per memory state",
            ));
        }
        let n = kernels[0].n_states();
        if kernels.iter().any(|k| k.n_states() != n) {
            return Err(Error::config(
                "feedback kernels must share the system dimension",
            ));
        }
        Ok(FeedbackRule { kernels })
    }

    /// Reset rule for a bit: memory 0 applies the identity, memory 1 swaps,
    /// so a correctly-read bit always lands in state 0.
    pub fn reset() -> Self {
        let identity = TransitionKernel::identity(2);
        let swap =
            TransitionKernel::new(2, alloc::vec![0.0, 1.0, 1.0, 0.0]).expect("swap is stochastic");
        FeedbackRule {
            kernels: alloc::vec![identity, swap],
        }
    }

    /// Do-nothing rule on a bit.
    pub fn identity() -> Self {
        FeedbackRule {
            kernels: alloc::vec![TransitionKernel::identity(2), TransitionKernel::identity(2)],
        }
    }

    pub fn n_system(&self) -> usize {
        self.kernels[0].n_states()
    }

    pub fn n_memory(&self) -> usize {
        self.kernels.len()
    }

    pub fn kernel(&self, memory: usize) -> &TransitionKernel {
        &self.kernels[memory]
    }

    /// Ideal feedback: each kernel is a symmetric permutation (an involution),
    /// so P[y|x, m] = P[x|y, m].
    pub fn is_ideal(&self) -> bool {
        self.kernels.iter().all(|k| {
            let n = k.n_states();
            for x in 0..n {
                for y in 0..n {
                    let p = k.entry(y, x);
                    if math::abs(p - k.entry(x, y)) > PROB_TOL {
                        return false;
                    }
                    if p.min(math::abs(p - 1.0)) > PROB_TOL {
                        return false;
                    }
                }
            }
            true
        })
    }
}

/// One enumerated feedback trajectory (x, m, y) with P_F > 0.
#[derive(Debug, Clone, Copy)]
pub struct GiftRow {
    pub x: usize,
    pub m: usize,
    pub y: usize,
    pub probability: f64,
    /// log2 p0(x) - log2 p1(y).
    pub delta_s_bits: f64,
    /// i1(y, m) - i0(x, m) in the standard sign.
    pub delta_i_bits: f64,
    /// ln(P_F / P_B); +inf when the reverse move is impossible.
    pub entropy_production_nats: f64,
    pub backward_probability_zero: bool,
}

/// Exact enumeration of a measurement-feedback step.
#[derive(Debug, Clone)]
pub struct GiftReport {
    pub rows: Vec<GiftRow>,
    pub final_joint: JointDistribution,
    pub mean_delta_s_bits: f64,
    pub mean_delta_i_bits: f64,
    pub mean_entropy_production_nats: f64,
    /// <exp(-dS_i)>; backward-impossible rows contribute zero.
    pub ift_mean: f64,
    /// Forward probability carried by backward-impossible rows.
    pub absolute_irreversibility_fraction: f64,
    /// Mutual information of the initial joint, bits.
    pub initial_mutual_info_bits: f64,
    /// Mutual information of the final joint, bits.
    pub final_mutual_info_bits: f64,
    /// True when the feedback rule is ideal; when false the generalized
    /// fluctuation identity is not asserted and the report is advisory.
    pub ideal: bool,
}

impl GiftReport {
    pub fn advisory(&self) -> bool {
        !self.ideal
    }
}

/// Enumerate all feedback trajectories (x, m, y) exactly.
///
/// The memory is classical and untouched by the feedback; the forward
/// probability of a trajectory is p0(x, m) P[y|x, m] and the backward one is
/// p1(y, m) P[x|y, m] with the same kernels.
pub fn gift_enumerate(initial: &JointDistribution, feedback: &FeedbackRule) -> Result<GiftReport> {
    if feedback.n_system() != initial.n_system() {
        return Err(Error::config(
            "feedback kernels do not match the system dimension",
        ));
    }
    if feedback.n_memory() != initial.n_memory() {
        return Err(Error::config(
            "feedback rule does not match the memory dimension",
        ));
    }
    let n_x = initial.n_system();
    let n_m = initial.n_memory();

    // Pushforward of the joint: memory untouched, system mapped per memory.
    let mut final_probs = alloc::vec![0.0; n_x * n_m];
    for m in 0..n_m {
        let kernel = feedback.kernel(m);
        for x in 0..n_x {
            let p = initial.prob(x, m);
            if p == 0.0 {
                continue;
            }
            for y in 0..n_x {
                final_probs[y * n_m + m] += p * kernel.entry(y, x);
            }
        }
    }
    let final_joint = JointDistribution::new_unchecked(n_x, n_m, final_probs);

    let p0_x = initial.marginal_system();
    let p1_y = final_joint.marginal_system();
    let p0_m = initial.marginal_memory();
    let p1_m = final_joint.marginal_memory();

    let mut rows = Vec::new();
    let mut mean_ds = 0.0;
    let mut mean_di = 0.0;
    let mut mean_si = 0.0;
    let mut ift_mean = 0.0;
    let mut flagged_mass = 0.0;
    let mut infinite_production = false;

    for m in 0..n_m {
        let kernel = feedback.kernel(m);
        for x in 0..n_x {
            let p0_xm = initial.prob(x, m);
            if p0_xm == 0.0 {
                continue;
            }
            for y in 0..n_x {
                let forward_cond = kernel.entry(y, x);
                if forward_cond == 0.0 {
                    continue;
                }
                let probability = p0_xm * forward_cond;
                let p1_ym = final_joint.prob(y, m);
                let backward_cond = kernel.entry(x, y);

                let delta_s_bits = math::log2(p0_x[x]) - math::log2(p1_y[y]);
                let i0 = math::log2(p0_xm / (p0_x[x] * p0_m[m]));
                let i1 = math::log2(p1_ym / (p1_y[y] * p1_m[m]));
                let delta_i_bits = i1 - i0;

                let backward_zero = backward_cond == 0.0;
                let entropy_production_nats = if backward_zero {
                    f64::INFINITY
                } else {
                    math::ln(probability) - math::ln(p1_ym * backward_cond)
                };

                mean_ds += probability * delta_s_bits;
                mean_di += probability * delta_i_bits;
                if backward_zero {
                    flagged_mass += probability;
                    infinite_production = true;
                } else {
                    mean_si += probability * entropy_production_nats;
                    ift_mean += probability * math::exp(-entropy_production_nats);
                }

                rows.push(GiftRow {
                    x,
                    m,
                    y,
                    probability,
                    delta_s_bits,
                    delta_i_bits,
                    entropy_production_nats,
                    backward_probability_zero: backward_zero,
                });
            }
        }
    }

    let initial_mutual_info_bits = average_mutual_info_bits(initial);
    let final_mutual_info_bits = average_mutual_info_bits(&final_joint);

    Ok(GiftReport {
        rows,
        final_joint,
        mean_delta_s_bits: mean_ds,
        mean_delta_i_bits: mean_di,
        mean_entropy_production_nats: if infinite_production {
            f64::INFINITY
        } else {
            mean_si
        },
        ift_mean,
        absolute_irreversibility_fraction: flagged_mass,
        initial_mutual_info_bits,
        final_mutual_info_bits,
        ideal: feedback.is_ideal(),
    })
}

/// Demon bookkeeping for one measurement-feedback-erasure cycle.
///
/// `work_extracted` is positive when energy flows from the system to the
/// controller: it is the Szilard value T ln 2 I_0 of the acquired
/// correlation. `landauer_cost` is the bill for erasing the memory record,
/// T ln 2 H[p(m)].
#[derive(Debug, Clone, Copy)]
pub struct DemonLedger {
    pub delta_s_bits: f64,
    pub delta_i_bits: f64,
    pub entropy_production_nats: f64,
    pub work_extracted: f64,
    pub landauer_cost: f64,
}

/// Enumerate a demon cycle and assemble its ledger.
pub fn demon_ledger(
    initial: &JointDistribution,
    feedback: &FeedbackRule,
    temperature: f64,
) -> Result<(GiftReport, DemonLedger)> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    let report = gift_enumerate(initial, feedback)?;
    let memory_entropy = entropy_bits(&initial.marginal_memory());
    let ledger = DemonLedger {
        delta_s_bits: report.mean_delta_s_bits,
        delta_i_bits: report.mean_delta_i_bits,
        entropy_production_nats: report.mean_entropy_production_nats,
        work_extracted: temperature * math::LN_2 * report.initial_mutual_info_bits,
        landauer_cost: temperature * math::LN_2 * memory_entropy,
    };
    Ok((report, ledger))
}

/// Demon efficiency with its saturation flag.
#[derive(Debug, Clone, Copy)]
pub struct DemonEfficiency {
    pub eta: f64,
    /// True when the generalized bound is met with equality (eta = 1).
    pub bound_saturated: bool,
}

const SATURATION_TOL: f64 = 1e-9;

/// eta = W / (dF + T ln 2 dI).
pub fn demon_efficiency(
    work: f64,
    delta_f: f64,
    delta_i_bits: f64,
    temperature: f64,
) -> Result<DemonEfficiency> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    let denominator = delta_f + temperature * math::LN_2 * delta_i_bits;
    if denominator == 0.0 {
        return Err(Error::Degenerate(alloc::string::String::from(
            "demon efficiency undefined: dF + T ln2 dI = 0",
        )));
    }
    let eta = work / denominator;
    Ok(DemonEfficiency {
        eta,
        bound_saturated: math::abs(eta - 1.0) <= SATURATION_TOL,
    })
}
