//! JSON experiment configurations and their validation.
//!
//! Structural problems (bad JSON, unknown fields) surface through serde;
//! everything semantic is collected by `validate()` into a full list of
//! violations naming the offending fields, so one round trip fixes a config.

use serde::{Deserialize, Serialize};

use qthermo_core::info::FeedbackRule;
use qthermo_core::quantum::{MeasurementBasis, PureState, TrajectoryStep};
use qthermo_core::stochastic::{
    metropolis_kernel, Distribution, EnergyLandscape, Protocol, Step, TransitionKernel,
};
use qthermo_core::PROB_TOL;

use crate::{CliError, Result};

pub const DEFAULT_SAMPLES: u64 = 100_000;

fn default_samples() -> u64 {
    DEFAULT_SAMPLES
}

/// A protocol document:
/// {"states": n, "initial_energies": [...], "temperature": t,
///  "steps": [{"drive": [...]} | {"bath": "metropolis"} | {"bath_matrix": [[...]]}]}
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    pub states: usize,
    pub initial_energies: Vec<f64>,
    pub temperature: f64,
    pub steps: Vec<StepConfig>,
}

/// Exactly one of the three step forms must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drive: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath_matrix: Option<Vec<Vec<f64>>>,
}

impl ProtocolConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.states < 2 {
            violations.push(format!("states: need at least 2 micro-states, got {}", self.states));
        }
        if self.initial_energies.len() != self.states {
            violations.push(format!(
                "initial_energies: expected {} entries, got {}",
                self.states,
                self.initial_energies.len()
            ));
        }
        if self.initial_energies.iter().any(|e| !e.is_finite()) {
            violations.push("initial_energies: entries must be finite".into());
        }
        if !(self.temperature > 0.0) {
            violations.push(format!(
                "temperature: must be positive, got {}",
                self.temperature
            ));
        }
        if self.steps.is_empty() {
            violations.push("steps: need at least one step".into());
        }
        for (k, step) in self.steps.iter().enumerate() {
            let forms = step.drive.is_some() as u8
                + step.bath.is_some() as u8
                + step.bath_matrix.is_some() as u8;
            if forms != 1 {
                violations.push(format!(
                    "steps[{k}]: exactly one of drive/bath/bath_matrix required"
                ));
                continue;
            }
            if let Some(drive) = &step.drive {
                if drive.len() != self.states {
                    violations.push(format!(
                        "steps[{k}].drive: expected {} energies, got {}",
                        self.states,
                        drive.len()
                    ));
                }
                if drive.iter().any(|e| !e.is_finite()) {
                    violations.push(format!("steps[{k}].drive: entries must be finite"));
                }
            }
            if let Some(bath) = &step.bath {
                if bath != "metropolis" {
                    violations.push(format!(
                        "steps[{k}].bath: unknown kernel '{bath}' (supported: \"metropolis\")"
                    ));
                }
            }
            if let Some(matrix) = &step.bath_matrix {
                if matrix.len() != self.states
                    || matrix.iter().any(|row| row.len() != self.states)
                {
                    violations.push(format!(
                        "steps[{k}].bath_matrix: expected a {0}x{0} matrix",
                        self.states
                    ));
                    continue;
                }
                for (r, row) in matrix.iter().enumerate() {
                    for (c, &p) in row.iter().enumerate() {
                        if !(0.0..=1.0).contains(&p) {
                            violations.push(format!(
                                "steps[{k}].bath_matrix[{r}][{c}]: probability {p} outside [0, 1]"
                            ));
                        }
                    }
                }
                for source in 0..self.states {
                    let total: f64 = matrix.iter().map(|row| row[source]).sum();
                    if (total - 1.0).abs() > PROB_TOL {
                        violations.push(format!(
                            "steps[{k}].bath_matrix: column {source} sums to {total}, expected 1"
                        ));
                    }
                }
            }
        }
        violations
    }

    /// Build the core protocol; call after `validate` passes.
    pub fn build(&self) -> Result<Protocol> {
        let initial = EnergyLandscape::new(self.initial_energies.clone())?;
        let mut current = initial.clone();
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            if let Some(drive) = &step.drive {
                let landscape = EnergyLandscape::new(drive.clone())?;
                current = landscape.clone();
                steps.push(Step::Drive(landscape));
            } else if step.bath.is_some() {
                steps.push(Step::Bath(metropolis_kernel(&current, self.temperature)?));
            } else if let Some(matrix) = &step.bath_matrix {
                steps.push(Step::Bath(TransitionKernel::from_rows(matrix)?));
            }
        }
        Ok(Protocol::new(initial, steps, self.temperature)?)
    }
}

/// Config for the ift and jarzynski experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FtConfig {
    pub protocol: ProtocolConfig,
    /// Initial distribution; defaults to the Boltzmann equilibrium of the
    /// initial landscape. Jarzynski runs must leave this at equilibrium.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<f64>>,
    #[serde(default = "default_samples")]
    pub n: u64,
    #[serde(default)]
    pub seed: u64,
}

impl FtConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = self.protocol.validate();
        if let Some(initial) = &self.initial {
            if initial.len() != self.protocol.states {
                violations.push(format!(
                    "initial: expected {} probabilities, got {}",
                    self.protocol.states,
                    initial.len()
                ));
            }
            let total: f64 = initial.iter().sum();
            if initial.iter().any(|&p| !(0.0..=1.0).contains(&p))
                || (total - 1.0).abs() > PROB_TOL
            {
                violations.push("initial: entries must form a probability distribution".into());
            }
        }
        if self.n < 100 {
            violations.push(format!("n: need at least 100 samples, got {}", self.n));
        }
        violations
    }

    pub fn initial_distribution(&self, protocol: &Protocol) -> Result<Distribution> {
        match &self.initial {
            Some(probs) => Ok(Distribution::new(probs.clone())?),
            None => Ok(qthermo_core::stochastic::boltzmann_distribution(
                protocol.initial_landscape(),
                self.protocol.temperature,
            )?),
        }
    }
}

/// Config for the demon and gift experiments:
/// {"error_rate": eps, "input_bias": p0, "feedback": "reset"|"identity",
///  "temperature": T}
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemonConfig {
    pub error_rate: f64,
    /// Probability that the input bit is 0.
    pub input_bias: f64,
    pub feedback: String,
    pub temperature: f64,
}

impl DemonConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if !(0.0..=0.5).contains(&self.error_rate) {
            violations.push(format!(
                "error_rate: {} outside [0, 0.5]",
                self.error_rate
            ));
        }
        if !(0.0..=1.0).contains(&self.input_bias) {
            violations.push(format!("input_bias: {} outside [0, 1]", self.input_bias));
        }
        if self.feedback != "reset" && self.feedback != "identity" {
            violations.push(format!(
                "feedback: unknown rule '{}' (supported: \"reset\", \"identity\")",
                self.feedback
            ));
        }
        if !(self.temperature > 0.0) {
            violations.push(format!(
                "temperature: must be positive, got {}",
                self.temperature
            ));
        }
        violations
    }

    pub fn system(&self) -> Result<Distribution> {
        Ok(Distribution::new(vec![self.input_bias, 1.0 - self.input_bias])?)
    }

    pub fn feedback_rule(&self) -> FeedbackRule {
        match self.feedback.as_str() {
            "identity" => FeedbackRule::identity(),
            _ => FeedbackRule::reset(),
        }
    }
}

/// Config for quantum trajectory runs:
/// `{"omega0": w, "segments": [{"rabi": {"omega": W, "t": T}} |
/// {"measure": "z"|"x"|[[[re,im],[re,im]],[[re,im],[re,im]]]}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumConfig {
    pub omega0: f64,
    pub segments: Vec<SegmentConfig>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rabi: Option<RabiConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RabiConfig {
    pub omega: f64,
    pub t: f64,
}

/// "z", "x", or two basis states as `[[re, im], [re, im]]` amplitude pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    Named(String),
    Custom([[[f64; 2]; 2]; 2]),
}

impl QuantumConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if !(self.omega0 > 0.0) {
            violations.push(format!("omega0: must be positive, got {}", self.omega0));
        }
        if self.segments.is_empty() {
            violations.push("segments: need at least one segment".into());
        }
        for (k, segment) in self.segments.iter().enumerate() {
            match (&segment.rabi, &segment.measure) {
                (Some(rabi), None) => {
                    if rabi.t < 0.0 {
                        violations.push(format!("segments[{k}].rabi.t: must be non-negative"));
                    }
                }
                (None, Some(measure)) => match measure {
                    MeasureSpec::Named(name) if name == "z" || name == "x" => {}
                    MeasureSpec::Named(name) => violations.push(format!(
                        "segments[{k}].measure: unknown basis '{name}' (supported: \"z\", \"x\", custom amplitudes)"
                    )),
                    MeasureSpec::Custom(raw) => {
                        if build_basis(raw).is_err() {
                            violations.push(format!(
                                "segments[{k}].measure: custom basis is not orthonormal"
                            ));
                        }
                    }
                },
                _ => violations.push(format!(
                    "segments[{k}]: exactly one of rabi/measure required"
                )),
            }
        }
        violations
    }

    pub fn build_steps(&self) -> Result<Vec<TrajectoryStep>> {
        let mut steps = Vec::with_capacity(self.segments.len());
        for segment in &self.segments {
            if let Some(rabi) = &segment.rabi {
                steps.push(TrajectoryStep::Unitary(
                    qthermo_core::quantum::rabi_propagator(rabi.omega, rabi.t)?,
                ));
            } else if let Some(measure) = &segment.measure {
                let basis = match measure {
                    MeasureSpec::Named(name) if name == "z" => MeasurementBasis::z(),
                    MeasureSpec::Named(_) => MeasurementBasis::x(),
                    MeasureSpec::Custom(raw) => build_basis(raw)?,
                };
                steps.push(TrajectoryStep::Measure(basis));
            }
        }
        Ok(steps)
    }
}

fn build_basis(raw: &[[[f64; 2]; 2]; 2]) -> Result<MeasurementBasis> {
    let state = |amps: &[[f64; 2]; 2]| -> Result<PureState> {
        Ok(PureState::new(
            qthermo_core::Complex64::new(amps[0][0], amps[0][1]),
            qthermo_core::Complex64::new(amps[1][0], amps[1][1]),
        )?)
    };
    Ok(MeasurementBasis::new([state(&raw[0])?, state(&raw[1])?])?)
}

/// Parse a JSON document and run its semantic validation.
pub fn parse_validated<T>(document: &str) -> Result<T>
where
    T: serde::de::DeserializeOwned + Validate,
{
    let config: T = serde_json::from_str(document)?;
    let violations = config.validate();
    if violations.is_empty() {
        Ok(config)
    } else {
        Err(CliError::Validation(violations))
    }
}

pub trait Validate {
    fn validate(&self) -> Vec<String>;
}

impl Validate for ProtocolConfig {
    fn validate(&self) -> Vec<String> {
        ProtocolConfig::validate(self)
    }
}

impl Validate for FtConfig {
    fn validate(&self) -> Vec<String> {
        FtConfig::validate(self)
    }
}

impl Validate for DemonConfig {
    fn validate(&self) -> Vec<String> {
        DemonConfig::validate(self)
    }
}

impl Validate for QuantumConfig {
    fn validate(&self) -> Vec<String> {
        QuantumConfig::validate(self)
    }
}
