//! The measurement-fueled qubit engine.
//!
//! One cycle: (i) from |+> the resonant drive rotates the qubit toward lower
//! expectation energy and extracts work; (ii) a projective measurement in
//! {|+>, |->} refills the energy as quantum heat (both outcomes sit back at
//! omega0/2); (iii) on outcome |-> an energy-degenerate feedback returns the
//! qubit to |+> for free; (iv) erasing the memory bit costs the Landauer
//! bound at the memory temperature. For Omega tau -> 0 the qubit freezes
//! (Zeno regime), the memory entropy vanishes, and both yield and power peak.
//!
//! The rotation direction is the extraction one: from |+> the drive lowers
//! the expectation energy. Work is booked from amplitude differences; the sweep output also
//! carries `work_closed_form` = omega0 sin(Omega tau/2), a commonly quoted
//! closed form that differs from the amplitude-consistent
//! omega0 sin(Omega tau)/2, so the two can be compared directly.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::info::landauer_cost;
use crate::math;
use crate::quantum::{
    enumerate_quantum_branches, expected_energy, projective_measure, rabi_propagator,
    MeasurementBasis, PureState, TrajectoryStep,
};
use crate::rng::TrajectoryRng;

/// Engine parameters, natural units (hbar = k_B = 1).
#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    pub omega0: f64,
    pub omega_rabi: f64,
    pub tau: f64,
    pub memory_temperature: f64,
    pub n_cycles: u64,
    pub seed: u64,
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega_rabi > 0.0 && self.tau > 0.0) {
            return Err(Error::domain("omega0, omega_rabi, and tau must be positive"));
        }
        if !(self.memory_temperature > 0.0) {
            return Err(Error::domain("memory temperature must be positive"));
        }
        if self.n_cycles == 0 {
            return Err(Error::domain("need at least one cycle"));
        }
        let theta = self.omega_rabi * self.tau;
        if !(theta > 0.0 && theta < core::f64::consts::PI) {
            return Err(Error::domain(alloc::format!(
                "Omega tau = {theta} outside (0, pi)"
            )));
        }
        Ok(())
    }

    pub fn omega_tau(&self) -> f64 {
        self.omega_rabi * self.tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

/// Energy bookkeeping for one cycle.
#[derive(Debug, Clone, Copy)]
pub struct CycleRecord {
    pub work_extracted: f64,
    pub quantum_heat: f64,
    pub feedback_work: f64,
    pub landauer_cost: f64,
    pub outcome: Outcome,
}

/// Run one cycle from |+>, drawing the measurement outcome from `rng`.
pub fn run_cycle(config: &EngineConfig, rng: &mut TrajectoryRng) -> Result<CycleRecord> {
    config.validate()?;
    let start = PureState::plus();
    let basis = MeasurementBasis::x();

    // (i) Extraction drive: the adjoint rotation lowers <H> from omega0/2.
    let drive = rabi_propagator(config.omega_rabi, config.tau)?.adjoint();
    let driven = drive.apply(&start);
    let work_extracted =
        expected_energy(&start, config.omega0) - expected_energy(&driven, config.omega0);

    // (ii) Measurement in {|+>, |->}: the back-action refills the qubit.
    let p_minus = basis.born_probabilities(&driven)[1];
    let record = projective_measure(&driven, &basis, config.omega0, rng);

    // (iii) Feedback on |->: the degenerate map |-> -> |+>. Acting on the
    // exact post-measurement eigenstate it lands exactly on |+>, and the
    // stored |+->/|-> amplitudes give identical |a1|^2, so the work is
    // exactly zero.
    let (outcome, feedback_work) = match record.outcome {
        0 => (Outcome::Plus, 0.0),
        _ => {
            let fw = expected_energy(&PureState::plus(), config.omega0)
                - expected_energy(&PureState::minus(), config.omega0);
            (Outcome::Minus, fw)
        }
    };
    debug_assert_eq!(feedback_work, 0.0);

    // (iv) Landauer bill for the memory bit holding the outcome.
    let landauer = landauer_cost(p_minus, config.memory_temperature)?;

    Ok(CycleRecord {
        work_extracted,
        quantum_heat: record.quantum_heat,
        feedback_work,
        landauer_cost: landauer,
        outcome,
    })
}

/// Aggregate engine figures over a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnginePerformance {
    pub mean_work: f64,
    pub mean_quantum_heat: f64,
    pub mean_landauer: f64,
    /// Yield 1 - W_L/Q_q.
    pub eta: f64,
    /// Net extracted work per unit drive time, (W - W_L)/tau.
    pub power: f64,
    pub outcome_minus_fraction: f64,
    pub n_cycles: u64,
}

/// Run the engine for `n_cycles` cycles. Cycles run sequentially; cycle `i`
/// draws from the stream (seed, i), so the run is reproducible bit for bit.
pub fn run_engine(config: &EngineConfig) -> Result<EnginePerformance> {
    config.validate()?;
    let mut sum_work = 0.0;
    let mut sum_heat = 0.0;
    let mut sum_landauer = 0.0;
    let mut minus_count = 0u64;
    for cycle in 0..config.n_cycles {
        let mut rng = TrajectoryRng::stream(config.seed, cycle);
        let record = run_cycle(config, &mut rng)?;
        sum_work += record.work_extracted;
        sum_heat += record.quantum_heat;
        sum_landauer += record.landauer_cost;
        if record.outcome == Outcome::Minus {
            minus_count += 1;
        }
    }
    let n = config.n_cycles as f64;
    let mean_work = sum_work / n;
    let mean_quantum_heat = sum_heat / n;
    let mean_landauer = sum_landauer / n;
    Ok(EnginePerformance {
        mean_work,
        mean_quantum_heat,
        mean_landauer,
        eta: 1.0 - mean_landauer / mean_quantum_heat,
        power: (mean_work - mean_landauer) / config.tau,
        outcome_minus_fraction: minus_count as f64 / n,
        n_cycles: config.n_cycles,
    })
}

/// Exact per-cycle figures at one grid point, noise-free.
#[derive(Debug, Clone, Copy)]
pub struct ZenoPoint {
    pub omega_tau: f64,
    pub p_minus: f64,
    pub work: f64,
    pub quantum_heat: f64,
    pub landauer: f64,
    pub eta: f64,
    pub power: f64,
    /// The closed form omega0 sin(Omega tau/2), kept for comparison with
    /// the amplitude-consistent `work`.
    pub work_closed_form: f64,
}

/// Closed-form exact cycle averages at a given Omega tau.
pub fn zeno_point(
    omega0: f64,
    omega_rabi: f64,
    memory_temperature: f64,
    omega_tau: f64,
) -> Result<ZenoPoint> {
    if !(omega0 > 0.0 && omega_rabi > 0.0 && memory_temperature > 0.0) {
        return Err(Error::domain("engine parameters must be positive"));
    }
    if !(omega_tau > 0.0 && omega_tau < core::f64::consts::PI) {
        return Err(Error::domain(alloc::format!(
            "Omega tau = {omega_tau} outside (0, pi)"
        )));
    }
    let half = omega_tau / 2.0;
    let s_half = math::sin(half);
    let p_minus = s_half * s_half;
    let work = omega0 * math::sin(omega_tau) / 2.0;
    let quantum_heat = work;
    let landauer = landauer_cost(p_minus, memory_temperature)?;
    let tau = omega_tau / omega_rabi;
    Ok(ZenoPoint {
        omega_tau,
        p_minus,
        work,
        quantum_heat,
        landauer,
        eta: 1.0 - landauer / quantum_heat,
        power: (work - landauer) / tau,
        work_closed_form: omega0 * s_half,
    })
}

/// Exact cycle averages computed through quantum branch enumeration rather
/// than the closed forms; the independent route for testing [`zeno_point`].
pub fn exact_cycle_means(config: &EngineConfig) -> Result<ZenoPoint> {
    config.validate()?;
    let drive = rabi_propagator(config.omega_rabi, config.tau)?.adjoint();
    let steps = [
        TrajectoryStep::Unitary(drive),
        TrajectoryStep::Measure(MeasurementBasis::x()),
    ];
    let branches = enumerate_quantum_branches(&PureState::plus(), &steps, config.omega0)?;
    let mut work = 0.0;
    let mut quantum_heat = 0.0;
    let mut p_minus = 0.0;
    for branch in &branches {
        // Work booked on the qubit is negative under extraction.
        work += branch.probability * (-branch.work);
        quantum_heat += branch.probability * branch.quantum_heat;
        if branch.outcomes == [1] {
            p_minus += branch.probability;
        }
    }
    let landauer = landauer_cost(p_minus, config.memory_temperature)?;
    Ok(ZenoPoint {
        omega_tau: config.omega_tau(),
        p_minus,
        work,
        quantum_heat,
        landauer,
        eta: 1.0 - landauer / quantum_heat,
        power: (work - landauer) / config.tau,
        work_closed_form: config.omega0 * math::sin(config.omega_tau() / 2.0),
    })
}

/// Evaluate the exact engine figures over a grid of Omega tau values.
pub fn zeno_sweep(
    omega0: f64,
    omega_rabi: f64,
    memory_temperature: f64,
    omega_tau_grid: &[f64],
) -> Result<Vec<ZenoPoint>> {
    if omega_tau_grid.is_empty() {
        return Err(Error::domain("sweep grid cannot be empty"));
    }
    omega_tau_grid
        .iter()
        .map(|&theta| zeno_point(omega0, omega_rabi, memory_temperature, theta))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn config(omega_tau: f64) -> EngineConfig {
        EngineConfig {
            omega0: 1.0,
            omega_rabi: 1.0,
            tau: omega_tau,
            memory_temperature: 0.1,
            n_cycles: 1000,
            seed: 0,
        }
    }

    #[test]
    fn config_validation() {
        assert!(config(0.5).validate().is_ok());
        assert!(config(0.0).validate().is_err());
        assert!(config(3.2).validate().is_err());
        let mut c = config(0.5);
        c.memory_temperature = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn cycle_energetics_at_quarter_pulse() {
        let cfg = config(core::f64::consts::FRAC_PI_2);
        let mut rng = TrajectoryRng::stream(0, 0);
        let record = run_cycle(&cfg, &mut rng).unwrap();
        // W = Q_q = omega0 sin(pi/2)/2 = 1/2 regardless of outcome.
        assert_abs_diff_eq!(record.work_extracted, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(record.quantum_heat, 0.5, epsilon = 1e-12);
        assert_eq!(record.feedback_work, 0.0);
        // P(-) = 1/2: a full bit to erase.
        assert_abs_diff_eq!(
            record.landauer_cost,
            0.1 * core::f64::consts::LN_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn zeno_limit_freezes_the_qubit() {
        let p = zeno_point(1.0, 1.0, 0.1, 1e-3).unwrap();
        assert!(p.p_minus < 1e-6);
        assert!(p.landauer < 1e-6);
        assert!(p.eta > 0.999);
    }

    #[test]
    fn post_measurement_energy_is_degenerate() {
        let basis = MeasurementBasis::x();
        for outcome in 0..2 {
            let post = basis.state(outcome);
            assert_eq!(
                expected_energy(post, 1.0),
                expected_energy(&PureState::plus(), 1.0)
            );
        }
    }

    #[test]
    fn work_equals_quantum_heat_per_cycle() {
        for &theta in &[0.1, 0.7, 1.5, 2.9] {
            let cfg = config(theta);
            for cycle in 0..16 {
                let mut rng = TrajectoryRng::stream(5, cycle);
                let r = run_cycle(&cfg, &mut rng).unwrap();
                assert_abs_diff_eq!(r.work_extracted, r.quantum_heat, epsilon = 1e-12);
                assert_abs_diff_eq!(
                    r.work_extracted,
                    cfg.omega0 * math::sin(theta) / 2.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_branch_enumeration() {
        for &theta in &[0.05, 0.4, core::f64::consts::FRAC_PI_2, 2.8] {
            let cfg = config(theta);
            let closed = zeno_point(cfg.omega0, cfg.omega_rabi, cfg.memory_temperature, theta)
                .unwrap();
            let enumerated = exact_cycle_means(&cfg).unwrap();
            assert_abs_diff_eq!(closed.p_minus, enumerated.p_minus, epsilon = 1e-12);
            assert_abs_diff_eq!(closed.work, enumerated.work, epsilon = 1e-12);
            assert_abs_diff_eq!(closed.quantum_heat, enumerated.quantum_heat, epsilon = 1e-12);
            assert_abs_diff_eq!(closed.eta, enumerated.eta, epsilon = 1e-12);
            assert_abs_diff_eq!(closed.power, enumerated.power, epsilon = 1e-10);
        }
    }

    #[test]
    fn engine_run_is_deterministic() {
        let cfg = config(0.9);
        let a = run_engine(&cfg).unwrap();
        let b = run_engine(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn outcome_fraction_tracks_born_rule() {
        let mut cfg = config(core::f64::consts::FRAC_PI_3);
        cfg.n_cycles = 100_000;
        let perf = run_engine(&cfg).unwrap();
        // P(-) = sin^2(pi/6) = 1/4; binomial 4 sigma.
        let sigma = math::sqrt(0.25 * 0.75 / cfg.n_cycles as f64);
        assert!((perf.outcome_minus_fraction - 0.25).abs() <= 4.0 * sigma);
        // W, Q_q, and the Landauer bill are deterministic per cycle.
        let exact = zeno_point(1.0, 1.0, 0.1, core::f64::consts::FRAC_PI_3).unwrap();
        assert_abs_diff_eq!(perf.mean_work, exact.work, epsilon = 1e-10);
        assert_abs_diff_eq!(perf.mean_quantum_heat, exact.quantum_heat, epsilon = 1e-10);
        assert_abs_diff_eq!(perf.mean_landauer, exact.landauer, epsilon = 1e-10);
        assert_abs_diff_eq!(perf.eta, exact.eta, epsilon = 1e-10);
    }

    #[test]
    fn quarter_pulse_efficiency_anchor() {
        // eta = 1 - 0.1 ln2 / 0.5 = 0.8614 at Omega tau = pi/2, T = 0.1 omega0.
        let p = zeno_point(1.0, 1.0, 0.1, core::f64::consts::FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(p.eta, 0.8613705638880055, epsilon = 1e-12);
        assert_abs_diff_eq!(p.quantum_heat, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn efficiency_rises_and_power_peaks_in_zeno_regime() {
        let grid: Vec<f64> = (0..12)
            .map(|i| 0.01 + (core::f64::consts::FRAC_PI_2 - 0.01) * i as f64 / 11.0)
            .collect();
        let sweep = zeno_sweep(1.0, 1.0, 0.1, &grid).unwrap();
        for pair in sweep.windows(2) {
            assert!(pair[0].eta > pair[1].eta, "eta must fall as Omega tau grows");
        }
        let max_power = sweep
            .iter()
            .map(|p| p.power)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(sweep[0].power, max_power);
        assert!(sweep.iter().all(|p| p.eta <= 1.0));
    }

    #[test]
    fn sweep_rejects_empty_grid() {
        assert!(zeno_sweep(1.0, 1.0, 0.1, &[]).is_err());
    }
}
