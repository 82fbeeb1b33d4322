//! The acceptance verifier: every release-gating check, each with its
//! tolerance pinned here in code. `run_all` executes all criteria and
//! reports one pass/fail row per criterion; the `verify` subcommand and the
//! acceptance test target both run through it.
//!
//! Wall-clock budgets are enforced as booleans; elapsed times never enter
//! the detail strings, so verifier output is byte-identical across runs and
//! worker counts.

use std::time::Instant;

use qthermo_core::engine::{exact_cycle_means, run_engine, zeno_point, EngineConfig};
use qthermo_core::estimators::{
    enumerate_exact, mean_entropy_production_exact, SampledEstimator, N_BATCHES,
};
use qthermo_core::gate::{gate_energy_cost, gate_fidelity, min_photons_for_fidelity};
use qthermo_core::info::{gift_enumerate, landauer_cost, measure_bit, szilard_work_bound, FeedbackRule};
use qthermo_core::instances::{
    random_basis, random_db_kernel, random_db_protocol, random_distribution, random_landscape,
    random_unitary, InstanceRng,
};
use qthermo_core::quantum::{entropy_production_protocol, Unitary2};
use qthermo_core::si::landauer_cost_joules;
use qthermo_core::stochastic::{
    boltzmann_distribution, evolve_distribution, kl_to_equilibrium, ledger, Distribution,
    Protocol, Step, Trajectory,
};

use crate::output::{Cell, Table};
use crate::pool::run_indexed;
use crate::presets::{ift_bundle, jarzynski_quench, jarzynski_staged};

// Tolerances, fixed once.
const EXACT_IDENTITY: f64 = 1e-10;
const ENUMERATION_EXACT: f64 = 1e-12;
const MONOTONE_SLACK: f64 = 1e-12;
const SIGMA_FACTOR: f64 = 4.0;
const MC_SAMPLES: u64 = 100_000;
const C1_BUDGET_SECS: f64 = 10.0;
const C8_BUDGET_SECS: f64 = 30.0;
const C9_BUDGET_SECS: f64 = 120.0;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }

    fn note(&mut self, message: String) {
        self.notes.push(message);
    }

    fn finish(self, id: u32, name: &'static str) -> CriterionResult {
        let passed = self.failures.is_empty();
        let mut parts = self.notes;
        parts.extend(self.failures);
        CriterionResult {
            id,
            name,
            passed,
            detail: parts.join("; "),
        }
    }
}

fn sampled_mean(estimator: &SampledEstimator, workers: usize) -> qthermo_core::estimators::EstimatorResult {
    let partials = run_indexed(N_BATCHES as usize, workers, |b| estimator.batch(b as u32));
    estimator.combine(&partials)
}

/// Criterion 1: the integral fluctuation theorem on the bundled protocols,
/// exactly by enumeration and within 4 sigma by sampling.
fn criterion_ift(workers: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut check = Check::new();
    for bundled in ift_bundle() {
        let report = match enumerate_exact(&bundled.protocol, &bundled.initial) {
            Ok(r) => r,
            Err(err) => {
                check.require(false, || format!("{}: enumeration failed: {err}", bundled.name));
                continue;
            }
        };
        check.require(
            (report.ift_mean - 1.0).abs() <= EXACT_IDENTITY,
            || format!("{}: exact <exp(-dS_i)> = {:.15}", bundled.name, report.ift_mean),
        );
        check.require(report.absolute_irreversibility_fraction == 0.0, || {
            format!("{}: unexpected absolute irreversibility", bundled.name)
        });

        match SampledEstimator::ift(&bundled.protocol, &bundled.initial, MC_SAMPLES, seed) {
            Ok(estimator) => {
                let mc = sampled_mean(&estimator, workers);
                check.require(
                    (mc.mean - 1.0).abs() <= SIGMA_FACTOR * mc.std_error + 1e-12,
                    || {
                        format!(
                            "{}: sampled mean {:.8} strays {} sigma from 1",
                            bundled.name,
                            mc.mean,
                            (mc.mean - 1.0).abs() / mc.std_error
                        )
                    },
                );
            }
            Err(err) => check.require(false, || format!("{}: estimator failed: {err}", bundled.name)),
        }
    }
    check.note(format!("{} bundled protocols", ift_bundle().len()));
    let within_budget = start.elapsed().as_secs_f64() < C1_BUDGET_SECS;
    check.require(within_budget, || "runtime budget (10 s) exceeded".into());
    check.note(format!("runtime within 10 s budget: {within_budget}"));
    check.finish(1, "integral fluctuation theorem (exact + sampled)")
}

/// Criterion 2: Jarzynski on the two-state quench, plus the staged
/// quasi-static limit.
fn criterion_jarzynski(workers: usize, seed: u64) -> CriterionResult {
    let mut check = Check::new();
    let quench = jarzynski_quench();
    let temperature = 1.0;
    let initial = boltzmann_distribution(quench.initial_landscape(), temperature)
        .expect("flat landscape equilibrium");
    let report = enumerate_exact(&quench, &initial).expect("two-row enumeration");
    let target = 0.6839397205857212; // (1 + e^-1)/2 = exp(-dF)
    check.require(
        (report.jarzynski_mean - target).abs() <= ENUMERATION_EXACT,
        || format!("exact <exp(-W)> = {:.15}, target {target}", report.jarzynski_mean),
    );
    check.note(format!("exact <exp(-W)> = {:.12}", report.jarzynski_mean));

    let estimator = SampledEstimator::jarzynski(&quench, temperature, MC_SAMPLES, seed)
        .expect("quench estimator");
    let mc = sampled_mean(&estimator, workers);
    check.require(
        (mc.mean - target).abs() <= SIGMA_FACTOR * mc.std_error,
        || {
            format!(
                "sampled mean {:.8} strays {} sigma from target",
                mc.mean,
                (mc.mean - target).abs() / mc.std_error
            )
        },
    );

    let mut previous = f64::INFINITY;
    let mut staged_values = Vec::new();
    for &substeps in &[1usize, 5, 50] {
        let protocol = jarzynski_staged(substeps);
        let p0 = boltzmann_distribution(protocol.initial_landscape(), temperature)
            .expect("equilibrium start");
        let mean = mean_entropy_production_exact(&protocol, &p0).expect("marginal route");
        check.require(mean < previous - MONOTONE_SLACK, || {
            format!("<dS_i> not strictly decreasing at {substeps} substeps: {mean} vs {previous}")
        });
        staged_values.push(format!("{substeps}: {mean:.6}"));
        previous = mean;
    }
    check.require(previous < 0.01, || {
        format!("50-substep <dS_i> = {previous}, expected < 0.01 nats")
    });
    check.note(format!("staged <dS_i> [{}]", staged_values.join(", ")));
    check.finish(2, "Jarzynski equality and quasi-static limit")
}

/// Criterion 3: the two writings of the two-point entropy production agree
/// per trajectory; the mean equals the drop in distance to equilibrium;
/// the distance is non-increasing.
fn criterion_two_point_forms(_workers: usize, seed: u64) -> CriterionResult {
    let mut check = Check::new();
    for index in 0..100u64 {
        let mut rng = InstanceRng::new(seed ^ 0xA11CE, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let landscape = random_landscape(&mut rng, n);
        let kernel = random_db_kernel(&mut rng, &landscape, temperature);
        let p0 = random_distribution(&mut rng, n);
        let protocol = Protocol::new(landscape.clone(), vec![Step::Bath(kernel)], temperature)
            .expect("single-bath protocol");
        let p1 = evolve_distribution(&protocol, &p0)
            .expect("pushforward")
            .pop()
            .expect("one bath step");
        let p_eq = boltzmann_distribution(&landscape, temperature).expect("boltzmann");

        for i in 0..n {
            for j in 0..n {
                let l = ledger(&protocol, &Trajectory::new(vec![i, j]), &p0, &p1)
                    .expect("two-point ledger");
                if l.backward_probability_zero {
                    continue;
                }
                let relative_form =
                    (p0.prob(i) / p_eq.prob(i)).ln() - (p1.prob(j) / p_eq.prob(j)).ln();
                check.require(
                    (l.entropy_production - relative_form).abs() <= EXACT_IDENTITY,
                    || {
                        format!(
                            "instance {index} ({i},{j}): forms differ by {:.3e}",
                            (l.entropy_production - relative_form).abs()
                        )
                    },
                );
            }
        }

        let report = enumerate_exact(&protocol, &p0).expect("enumeration");
        let d0 = kl_to_equilibrium(&p0, &p_eq).expect("support");
        let d1 = kl_to_equilibrium(&p1, &p_eq).expect("support");
        check.require(
            (report.mean_entropy_production - (d0 - d1)).abs() <= EXACT_IDENTITY,
            || format!("instance {index}: <dS_i> vs -dD_inf differ"),
        );
        check.require(d1 <= d0 + MONOTONE_SLACK, || {
            format!("instance {index}: D_inf grew under relaxation")
        });
    }
    check.note("100 randomized detailed-balance instances".into());
    check.finish(3, "two-point entropy production forms and distance to equilibrium")
}

/// Criterion 4: dS_i = dS - Q/T per trajectory on randomized multi-step
/// detailed-balance protocols.
fn criterion_thermal_decomposition(_workers: usize, seed: u64) -> CriterionResult {
    let mut check = Check::new();
    for index in 0..100u64 {
        let mut rng = InstanceRng::new(seed ^ 0xD1CE, index);
        let n = rng.usize_in(2, 4);
        let temperature = rng.in_range(0.4, 2.5);
        let protocol = random_db_protocol(&mut rng, n, temperature);
        let p0 = random_distribution(&mut rng, n);
        let report = enumerate_exact(&protocol, &p0).expect("enumeration");
        for row in &report.rows {
            if row.probability == 0.0 {
                continue;
            }
            let l = row.ledger.expect("possible row has a ledger");
            if l.backward_probability_zero {
                continue;
            }
            let decomposition = l.delta_stochastic_entropy - l.heat / temperature;
            check.require(
                (l.entropy_production - decomposition).abs() <= EXACT_IDENTITY,
                || {
                    format!(
                        "instance {index}: dS_i - (dS - Q/T) = {:.3e}",
                        (l.entropy_production - decomposition).abs()
                    )
                },
            );
        }
    }
    check.note("100 randomized detailed-balance instances".into());
    check.finish(4, "thermal decomposition dS_i = dS - Q/T per trajectory")
}

/// Criterion 5: the generalized fluctuation theorem for the error-eps reset
/// demon.
fn criterion_gift(_workers: usize, _seed: u64) -> CriterionResult {
    let mut check = Check::new();
    let fair = Distribution::uniform(2);
    for &eps in &[0.0, 0.1, 0.3] {
        let joint = measure_bit(&fair, eps).expect("readout channel");
        let report = gift_enumerate(&joint, &FeedbackRule::reset()).expect("enumeration");
        check.require(report.ideal, || format!("eps={eps}: reset rule must be ideal"));
        check.require(
            (report.ift_mean - 1.0).abs() <= EXACT_IDENTITY,
            || format!("eps={eps}: <exp(-dS_i)> = {:.15}", report.ift_mean),
        );
        check.require(
            report.mean_delta_s_bits >= report.mean_delta_i_bits - MONOTONE_SLACK,
            || format!("eps={eps}: <dS> < <dI>"),
        );
        if eps == 0.0 {
            check.require(
                (report.mean_delta_s_bits - report.mean_delta_i_bits).abs() <= MONOTONE_SLACK,
                || "eps=0: <dS> and <dI> must coincide".into(),
            );
        }
        check.note(format!(
            "eps={eps}: dS={:.6}, dI={:.6}",
            report.mean_delta_s_bits, report.mean_delta_i_bits
        ));
    }
    check.finish(5, "generalized IFT for the measurement-feedback demon")
}

/// Criterion 6: SI anchors for Landauer and Szilard.
fn criterion_landauer_szilard(_workers: usize, _seed: u64) -> CriterionResult {
    let mut check = Check::new();
    let room = landauer_cost_joules(0.5, 300.0).expect("room-temperature bound");
    let anchor = 2.871e-21;
    check.require((room - anchor).abs() / anchor <= 1e-3, || {
        format!("k_B 300K ln2 = {room:.6e}, anchor {anchor:.3e}")
    });
    check.note(format!("landauer(0.5, 300 K) = {room:.6e} J"));

    let temperature = 1.7;
    let bound = szilard_work_bound(temperature).expect("positive temperature");
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let cost = landauer_cost(p, temperature).expect("valid probability");
        check.require(cost <= bound + 1e-15, || {
            format!("landauer({p}) exceeds the Szilard bound")
        });
        if (p - 0.5).abs() > 1e-12 {
            check.require(cost < bound, || {
                format!("landauer({p}) saturates the bound away from 1/2")
            });
        } else {
            check.require((cost - bound).abs() <= 1e-15, || {
                "landauer(0.5) must equal the Szilard bound".into()
            });
        }
    }
    check.finish(6, "Landauer / Szilard anchors (SI layer)")
}

/// Criterion 7: measurement entropy production equals the Von Neumann
/// entropy change, zero exactly without coherence.
fn criterion_measurement_entropy(_workers: usize, seed: u64) -> CriterionResult {
    let mut check = Check::new();
    let mut generic_positive = 0;
    for index in 0..200u64 {
        let mut rng = InstanceRng::new(seed ^ 0x7AB5, index);
        let basis = random_basis(&mut rng);
        let unitary = random_unitary(&mut rng);
        let initial = *basis.state(rng.usize_in(0, 1));
        let report = entropy_production_protocol(&initial, &unitary, &basis)
            .expect("eigenstate protocol");
        check.require(
            (report.mean_entropy_production - report.delta_s_vn).abs() <= EXACT_IDENTITY,
            || {
                format!(
                    "instance {index}: <dS_i> - dS_VN = {:.3e}",
                    (report.mean_entropy_production - report.delta_s_vn).abs()
                )
            },
        );
        check.require(report.mean_entropy_production >= -1e-15, || {
            format!("instance {index}: negative mean production")
        });
        let coherence = report.outcome_probabilities[0] * report.outcome_probabilities[1];
        if coherence > 1e-6 {
            check.require(report.mean_entropy_production > 1e-6, || {
                format!("instance {index}: coherence without production")
            });
            generic_positive += 1;
        }
    }
    check.note(format!(
        "200 randomized triples, {generic_positive} with sizeable coherence"
    ));

    // No coherence in the measured basis: production is zero.
    for index in 0..20u64 {
        let mut rng = InstanceRng::new(seed ^ 0x2E20, index);
        let basis = random_basis(&mut rng);
        let initial = *basis.state(rng.usize_in(0, 1));
        let report = entropy_production_protocol(&initial, &Unitary2::identity(), &basis)
            .expect("identity protocol");
        check.require(report.mean_entropy_production.abs() <= EXACT_IDENTITY, || {
            format!("coherence-free instance {index} produced entropy")
        });
    }
    check.finish(7, "measurement entropy production = Von Neumann change")
}

/// Criterion 8: the measurement engine, exact and sampled.
fn criterion_engine(_workers: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut check = Check::new();
    let omega0 = 1.0;
    let omega_rabi = 1.0;
    let temperature = 0.1;

    // Per-cycle closure through the quantum branch enumeration.
    for &theta in &[0.01, 0.3, 1.0, core::f64::consts::FRAC_PI_2] {
        let config = EngineConfig {
            omega0,
            omega_rabi,
            tau: theta / omega_rabi,
            memory_temperature: temperature,
            n_cycles: 1,
            seed,
        };
        let exact = exact_cycle_means(&config).expect("branch enumeration");
        check.require(
            (exact.work - exact.quantum_heat).abs() <= EXACT_IDENTITY,
            || format!("theta={theta}: mean W != mean Q_q"),
        );
    }

    // Zeno point: eta above 0.99 at Omega tau = 0.01.
    let zeno = zeno_point(omega0, omega_rabi, temperature, 0.01).expect("zeno point");
    check.require(zeno.eta > 0.99, || format!("eta(0.01) = {:.6}", zeno.eta));
    check.note(format!("eta(0.01) = {:.6}", zeno.eta));

    // Monotone efficiency and power on the 20-point grid over (0.01, pi/2].
    let grid = crate::experiments::omega_tau_grid(0.01, core::f64::consts::FRAC_PI_2, 20);
    let points: Vec<_> = grid
        .iter()
        .map(|&theta| zeno_point(omega0, omega_rabi, temperature, theta).expect("grid point"))
        .collect();
    for pair in points.windows(2) {
        check.require(pair[0].eta > pair[1].eta, || {
            format!(
                "eta not increasing toward the Zeno end: {} vs {}",
                pair[0].eta, pair[1].eta
            )
        });
    }
    let max_power = points.iter().map(|p| p.power).fold(f64::NEG_INFINITY, f64::max);
    check.require(points[0].power == max_power, || {
        "power not maximal at the smallest Omega tau".into()
    });

    // Monte Carlo at Omega tau = pi/3 against the exact values.
    let theta = core::f64::consts::FRAC_PI_3;
    let config = EngineConfig {
        omega0,
        omega_rabi,
        tau: theta / omega_rabi,
        memory_temperature: temperature,
        n_cycles: MC_SAMPLES,
        seed,
    };
    let mc = run_engine(&config).expect("engine run");
    let exact = zeno_point(omega0, omega_rabi, temperature, theta).expect("exact point");
    let sigma = (exact.p_minus * (1.0 - exact.p_minus) / MC_SAMPLES as f64).sqrt();
    check.require(
        (mc.outcome_minus_fraction - exact.p_minus).abs() <= SIGMA_FACTOR * sigma,
        || {
            format!(
                "outcome fraction {:.6} strays from {:.6}",
                mc.outcome_minus_fraction, exact.p_minus
            )
        },
    );
    for (label, sampled, expected) in [
        ("W", mc.mean_work, exact.work),
        ("Qq", mc.mean_quantum_heat, exact.quantum_heat),
        ("WL", mc.mean_landauer, exact.landauer),
        ("eta", mc.eta, exact.eta),
    ] {
        check.require((sampled - expected).abs() <= EXACT_IDENTITY, || {
            format!("{label}: sampled {sampled} vs exact {expected}")
        });
    }

    let within_budget = start.elapsed().as_secs_f64() < C8_BUDGET_SECS;
    check.require(within_budget, || "runtime budget (30 s) exceeded".into());
    check.note(format!("runtime within 30 s budget: {within_budget}"));
    check.finish(8, "measurement engine: closure, Zeno yield, power, sampling")
}

/// Criterion 9: gate energetics: infidelity scaling, the photon threshold
/// window, and the joule anchors.
fn criterion_gate(_workers: usize, _seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut check = Check::new();
    let theta = core::f64::consts::FRAC_PI_2;
    let g = 1.0;

    // Log-log slope of 1 - F over n_bar in {25, 100, 400, 1600}.
    let photon_grid = [25.0, 100.0, 400.0, 1600.0];
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &n_bar in &photon_grid {
        let fidelity = gate_fidelity(theta, n_bar, g).expect("gate fidelity");
        check.require(fidelity < 1.0 && fidelity > 0.9, || {
            format!("fidelity at n_bar={n_bar} out of range: {fidelity}")
        });
        xs.push(n_bar.ln());
        ys.push((1.0 - fidelity).ln());
    }
    let slope = least_squares_slope(&xs, &ys);
    check.require((slope + 1.0).abs() <= 0.2, || {
        format!("infidelity log-log slope {slope:.4}, expected -1 +- 0.2")
    });
    check.note(format!("infidelity slope {slope:.4}"));

    // A fidelity threshold whose photon requirement lands in [300, 3000].
    let mut window_hit = None;
    for &threshold in &[0.999, 0.9995, 0.9998, 0.9999, 0.99995] {
        match min_photons_for_fidelity(threshold, g, theta) {
            Ok(found) if (300.0..=3000.0).contains(&found.n_bar) => {
                window_hit = Some((threshold, found.n_bar));
                break;
            }
            _ => {}
        }
    }
    check.require(window_hit.is_some(), || {
        "no fidelity threshold put the photon requirement in [300, 3000]".into()
    });
    if let Some((threshold, n_bar)) = window_hit {
        check.note(format!("threshold {threshold} needs n_bar = {n_bar}"));
    }

    // Joule anchors.
    let energy = gate_energy_cost(1000.0, 6e9).expect("photon pricing");
    check.require((energy - 3.97e-21).abs() / 3.97e-21 <= 5e-3, || {
        format!("gate energy {energy:.6e} J, anchor 3.97e-21 J")
    });
    check.require(energy.log10().floor() as i32 == -21, || {
        format!("gate energy {energy:.3e} not of order 1e-21")
    });
    let landauer = landauer_cost_joules(0.5, 300.0).expect("room-temperature bound");
    let ratio = energy / landauer;
    check.require(ratio > 0.1 && ratio < 10.0, || {
        format!("gate/landauer ratio {ratio:.3} outside one decade")
    });
    check.note(format!("1000 photons @ 6 GHz = {energy:.4e} J, {ratio:.3}x landauer(300K)"));

    let within_budget = start.elapsed().as_secs_f64() < C9_BUDGET_SECS;
    check.require(within_budget, || "runtime budget (120 s) exceeded".into());
    check.note(format!("runtime within 120 s budget: {within_budget}"));
    check.finish(9, "gate energetics: scaling, photon window, joule anchors")
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    cov / var
}

/// Criterion 10: worker-count invariance of every worker-sensitive
/// computation, plus rerun stability.
fn criterion_determinism(_workers: usize, seed: u64) -> CriterionResult {
    let mut check = Check::new();
    let fingerprint = |workers: usize| -> String {
        let mut out = String::new();
        for bundled in ift_bundle().into_iter().take(3) {
            let estimator =
                SampledEstimator::ift(&bundled.protocol, &bundled.initial, 20_000, seed)
                    .expect("bundled estimator");
            let r = sampled_mean(&estimator, workers);
            out.push_str(&format!(
                "{}:{:?}:{:?}:{:?}\n",
                bundled.name, r.mean, r.std_error, r.absolute_irreversibility_fraction
            ));
        }
        let quench = jarzynski_quench();
        let estimator = SampledEstimator::jarzynski(&quench, 1.0, 20_000, seed)
            .expect("quench estimator");
        let r = sampled_mean(&estimator, workers);
        out.push_str(&format!("jarzynski:{:?}:{:?}\n", r.mean, r.std_error));

        let grid = crate::experiments::omega_tau_grid(0.01, core::f64::consts::FRAC_PI_2, 20);
        let ctx = crate::experiments::RunContext {
            seed_override: None,
            workers,
            si: false,
        };
        out.push_str(
            &crate::experiments::run_zeno_sweep(1.0, 1.0, 0.1, &grid, &ctx)
                .expect("sweep")
                .to_csv(),
        );
        out
    };

    let single = fingerprint(1);
    let triple = fingerprint(3);
    let rerun = fingerprint(1);
    check.require(single == triple, || {
        "worker counts 1 and 3 disagree on numerical outputs".into()
    });
    check.require(single == rerun, || "rerun with identical inputs differs".into());
    check.note(format!(
        "identical across worker counts and reruns: {}",
        single == triple && single == rerun
    ));
    check.finish(10, "bit-identical results across workers and reruns")
}

/// Run every acceptance criterion.
pub fn run_all(workers: usize, seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_ift(workers, seed),
        criterion_jarzynski(workers, seed),
        criterion_two_point_forms(workers, seed),
        criterion_thermal_decomposition(workers, seed),
        criterion_gift(workers, seed),
        criterion_landauer_szilard(workers, seed),
        criterion_measurement_entropy(workers, seed),
        criterion_engine(workers, seed),
        criterion_gate(workers, seed),
        criterion_determinism(workers, seed),
    ]
}

/// Render the verifier results as a table.
pub fn render_table(results: &[CriterionResult]) -> Table {
    let mut table = Table::new("verify", vec!["criterion", "name", "status", "detail"]);
    for r in results {
        table.push(vec![
            Cell::Int(r.id as i64),
            Cell::text(r.name),
            Cell::text(if r.passed { "PASS" } else { "FAIL" }),
            Cell::text(r.detail.clone()),
        ]);
    }
    table
}
