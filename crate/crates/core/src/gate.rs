//! Energetic cost of a single-qubit gate driven by a finite coherent field.
//!
//! A resonant Jaynes-Cummings interaction replaces the semiclassical drive:
//! each excitation block span{|1,n>, |0,n+1>} rotates by g t sqrt(n+1), so a
//! finite field entangles with the qubit and the reduced gate picks up an
//! infidelity that scales like 1/n_bar. The pulse time is calibrated
//! semiclassically, t = theta / (g sqrt(n_bar)), and the gate is priced in
//! photons: n_bar photons at hbar * 2 pi f joules each.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::quantum::{rabi_propagator, PureState};
use crate::si;
use crate::FIELD_NORM_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Truncation that keeps the Poisson tail of a coherent state below the
/// field norm tolerance: N_max = ceil(n_bar + 8 sqrt(n_bar)) + 12. The
/// additive margin covers small fields, where the tail beyond 8 sigma is
/// still fatter than 1e-10.
pub fn default_truncation(n_bar: f64) -> usize {
    libm::ceil(n_bar + 8.0 * math::sqrt(n_bar)) as usize + 12
}

/// A truncated bosonic mode over Fock states |0> .. |n_max>.
#[derive(Debug, Clone)]
pub struct FieldState {
    amplitudes: Vec<Complex64>,
    /// Probability mass lost to truncation before renormalization.
    leakage: f64,
}

impl FieldState {
    /// Coherent state with mean photon number `n_bar`, amplitudes
    /// alpha^n / sqrt(n!) with alpha = sqrt(n_bar), normalized after
    /// truncation at `n_max`.
    pub fn coherent(n_bar: f64, n_max: usize) -> Result<Self> {
        if n_bar < 0.0 {
            return Err(Error::domain("mean photon number must be non-negative"));
        }
        if (n_max as f64) < n_bar + 8.0 * math::sqrt(n_bar) {
            return Err(Error::Capacity {
                detail: alloc::string::String::from(
                    "field truncation below n_bar + 8 sqrt(n_bar)",
                ),
                rows: n_max as u128,
                cap: default_truncation(n_bar) as u128,
            });
        }
        if n_bar == 0.0 {
            let mut amplitudes = alloc::vec![ZERO; n_max + 1];
            amplitudes[0] = c(1.0);
            return Ok(FieldState {
                amplitudes,
                leakage: 0.0,
            });
        }
        // Work in logs: ln a_n = -n_bar/2 + (n/2) ln n_bar - ln(n!)/2.
        let ln_nbar = math::ln(n_bar);
        let mut ln_factorial = 0.0;
        let mut amplitudes = Vec::with_capacity(n_max + 1);
        let mut norm_sq = 0.0;
        for n in 0..=n_max {
            if n > 0 {
                ln_factorial += math::ln(n as f64);
            }
            let log_amp = -n_bar / 2.0 + 0.5 * (n as f64) * ln_nbar - 0.5 * ln_factorial;
            let amp = math::exp(log_amp);
            norm_sq += amp * amp;
            amplitudes.push(c(amp));
        }
        let leakage = (1.0 - norm_sq).max(0.0);
        if leakage > FIELD_NORM_TOL {
            return Err(Error::Capacity {
                detail: alloc::format!("coherent-state truncation leaks {leakage:.3e}"),
                rows: n_max as u128,
                cap: default_truncation(n_bar) as u128,
            });
        }
        let scale = 1.0 / math::sqrt(norm_sq);
        for amp in &mut amplitudes {
            *amp *= scale;
        }
        Ok(FieldState {
            amplitudes,
            leakage,
        })
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn mean_photons(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }
}

/// Qubit (x) field state, amplitudes indexed (qubit level, photon number).
#[derive(Debug, Clone)]
pub struct JointState {
    n_max: usize,
    amplitudes: Vec<Complex64>,
}

impl JointState {
    pub fn from_product(qubit: &PureState, field: &FieldState) -> Self {
        let n_max = field.n_max();
        let dim = n_max + 1;
        let mut amplitudes = alloc::vec![ZERO; 2 * dim];
        for q in 0..2 {
            for n in 0..=n_max {
                amplitudes[q * dim + n] = qubit.amplitude(q) * field.amplitude(n);
            }
        }
        JointState { n_max, amplitudes }
    }

    #[inline]
    fn index(&self, qubit: usize, photons: usize) -> usize {
        qubit * (self.n_max + 1) + photons
    }

    pub fn amplitude(&self, qubit: usize, photons: usize) -> Complex64 {
        self.amplitudes[self.index(qubit, photons)]
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Reduced qubit density matrix `rho[a][b] = sum_n psi(a,n) psi(b,n)*`.
    pub fn reduced_qubit(&self) -> [[Complex64; 2]; 2] {
        let dim = self.n_max + 1;
        let mut rho = [[ZERO; 2]; 2];
        for (a, row) in rho.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let mut acc = ZERO;
                for n in 0..dim {
                    acc += self.amplitudes[a * dim + n] * self.amplitudes[b * dim + n].conj();
                }
                *entry = acc;
            }
        }
        rho
    }

    /// <target| rho_reduced |target>.
    pub fn qubit_fidelity(&self, target: &PureState) -> f64 {
        let rho = self.reduced_qubit();
        let mut acc = ZERO;
        for a in 0..2 {
            for b in 0..2 {
                acc += target.amplitude(a).conj() * rho[a][b] * target.amplitude(b);
            }
        }
        acc.re
    }
}

/// Resonant Jaynes-Cummings evolution for time `t` at coupling `g`: within
/// span{|0,n+1>, |1,n>} a real rotation by angle g t sqrt(n+1) (same phase
/// convention as [`rabi_propagator`], which it approaches for large fields);
/// |0,0> is invariant.
pub fn jc_evolve(joint: &JointState, g: f64, t: f64) -> Result<JointState> {
    if g < 0.0 || t < 0.0 {
        return Err(Error::domain("coupling and duration must be non-negative"));
    }
    let dim = joint.n_max + 1;
    let mut amplitudes = joint.amplitudes.clone();
    for n in 0..joint.n_max {
        let idx_ground = n + 1; // |0, n+1>
        let idx_excited = dim + n; // |1, n>
        let half = g * t * math::sqrt((n + 1) as f64) / 2.0;
        let (s, co) = (math::sin(half), math::cos(half));
        let a_ground = joint.amplitudes[idx_ground];
        let a_excited = joint.amplitudes[idx_excited];
        amplitudes[idx_ground] = c(co) * a_ground - c(s) * a_excited;
        amplitudes[idx_excited] = c(s) * a_ground + c(co) * a_excited;
    }
    Ok(JointState {
        n_max: joint.n_max,
        amplitudes,
    })
}

/// The six cardinal qubit states used for the average gate fidelity.
pub fn cardinal_states() -> [PureState; 6] {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    [
        PureState::ket0(),
        PureState::ket1(),
        PureState::new(c(h), c(h)).unwrap(),
        PureState::new(c(h), c(-h)).unwrap(),
        PureState::new(c(h), Complex64::new(0.0, h)).unwrap(),
        PureState::new(c(h), Complex64::new(0.0, -h)).unwrap(),
    ]
}

/// Average fidelity of the finite-field gate against the semiclassical
/// rotation by `target_angle`, over the six cardinal input states.
///
/// The pulse time is the semiclassical calibration t = theta/(g sqrt(n_bar)).
pub fn gate_fidelity(target_angle: f64, n_bar: f64, g: f64) -> Result<f64> {
    if !(n_bar > 0.0) {
        return Err(Error::domain("gate fidelity needs a positive mean photon number"));
    }
    if !(g > 0.0) {
        return Err(Error::domain("coupling must be positive"));
    }
    if target_angle < 0.0 {
        return Err(Error::domain("target angle must be non-negative"));
    }
    let field = FieldState::coherent(n_bar, default_truncation(n_bar))?;
    let t = target_angle / (g * math::sqrt(n_bar));
    let target_unitary = rabi_propagator(1.0, target_angle)?;
    let mut total = 0.0;
    let inputs = cardinal_states();
    for input in &inputs {
        let joint = JointState::from_product(input, &field);
        let evolved = jc_evolve(&joint, g, t)?;
        let target = target_unitary.apply(input);
        total += evolved.qubit_fidelity(&target);
    }
    Ok(total / inputs.len() as f64)
}

/// A priced gate: fidelity, photon budget, and the SI energy bill.
#[derive(Debug, Clone, Copy)]
pub struct GateResult {
    pub fidelity: f64,
    pub mean_photons: f64,
    pub energy_joules: f64,
    pub target_rotation: f64,
}

/// Evaluate the gate at one operating point, pricing the field at
/// `field_freq_hz` (cycles per second).
pub fn gate_result(
    target_angle: f64,
    n_bar: f64,
    g: f64,
    field_freq_hz: f64,
) -> Result<GateResult> {
    let fidelity = gate_fidelity(target_angle, n_bar, g)?;
    let field = FieldState::coherent(n_bar, default_truncation(n_bar))?;
    let mean_photons = field.mean_photons();
    Ok(GateResult {
        fidelity,
        mean_photons,
        energy_joules: gate_energy_cost(mean_photons, field_freq_hz)?,
        target_rotation: target_angle,
    })
}

/// Energy of `n_bar` photons at `freq_hz`: n_bar * hbar * 2 pi f, joules.
pub fn gate_energy_cost(n_bar: f64, freq_hz: f64) -> Result<f64> {
    if n_bar < 0.0 || freq_hz < 0.0 {
        return Err(Error::domain("photon number and frequency must be non-negative"));
    }
    Ok(n_bar * si::photon_energy_joules(freq_hz))
}

/// Smallest photon budget on the log grid reaching a target fidelity.
#[derive(Debug, Clone, Copy)]
pub struct MinPhotonsResult {
    pub n_bar: f64,
    pub fidelity: f64,
    pub threshold: f64,
}

/// Geometric grid n_bar = 2^(k/2), k = 0..=30.
fn log_grid() -> Vec<f64> {
    (0..=30)
        .map(|k| math::exp(0.5 * k as f64 * math::LN_2))
        .collect()
}

/// Bisection over the log grid for the smallest n_bar with
/// fidelity(theta, n_bar) >= threshold. Relies on the fidelity being
/// monotone in the field size, which holds over the tested range.
pub fn min_photons_for_fidelity(threshold: f64, g: f64, theta: f64) -> Result<MinPhotonsResult> {
    if !(threshold > 0.5 && threshold < 1.0) {
        return Err(Error::domain("fidelity threshold must lie in (0.5, 1)"));
    }
    let grid = log_grid();
    let fidelity_at = |n_bar: f64| gate_fidelity(theta, n_bar, g);

    let first = fidelity_at(grid[0])?;
    if first >= threshold {
        return Ok(MinPhotonsResult {
            n_bar: grid[0],
            fidelity: first,
            threshold,
        });
    }
    let last = fidelity_at(*grid.last().unwrap())?;
    if last < threshold {
        return Err(Error::Capacity {
            detail: alloc::format!(
                "fidelity {last:.6} at n_bar = {} still below threshold {threshold}",
                grid.last().unwrap()
            ),
            rows: *grid.last().unwrap() as u128,
            cap: *grid.last().unwrap() as u128,
        });
    }

    // Invariant: F(grid[lo]) < threshold <= F(grid[hi]).
    let mut lo = 0;
    let mut hi = grid.len() - 1;
    let mut hi_fidelity = last;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let f = fidelity_at(grid[mid])?;
        if f >= threshold {
            hi = mid;
            hi_fidelity = f;
        } else {
            lo = mid;
        }
    }
    Ok(MinPhotonsResult {
        n_bar: grid[hi],
        fidelity: hi_fidelity,
        threshold,
    })
}
