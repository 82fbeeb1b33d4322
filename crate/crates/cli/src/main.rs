//! The qthermo command line: config-driven experiments, CSV/JSON results
//! with manifests, and the acceptance verifier.

use std::path::{Path, PathBuf};
use std::process::ExitCode as ProcessExit;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qthermo_cli::acceptance;
use qthermo_cli::config::{parse_validated, DemonConfig, FtConfig, QuantumConfig};
use qthermo_cli::experiments::{
    omega_tau_grid, run_demon, run_engine, run_gate_cost, run_gift, run_ift, run_jarzynski,
    run_quantum, run_zeno_sweep, RunContext,
};
use qthermo_cli::output::{OutputFormat, RunManifest, Table};
use qthermo_cli::pool::workers_from_env;
use qthermo_cli::{CliError, ExitCode};

#[derive(Parser)]
#[command(
    name = "qthermo",
    version,
    about = "Stochastic and quantum thermodynamics simulations: fluctuation theorems, \
             demons, measurement engines, and gate energetics"
)]
struct Cli {
    /// Master seed; overrides any seed in a config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (defaults to QTHERMO_WORKERS or 1). Never changes results.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write results to this file (and a manifest beside it) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// SI reporting layer: treat temperatures as kelvin and add joule columns
    /// where applicable.
    #[arg(long, global = true)]
    si: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Integral fluctuation theorem: exact enumeration plus Monte Carlo.
    Ift {
        #[arg(long)]
        config: PathBuf,
        /// Override the sample count from the config.
        #[arg(long)]
        n: Option<u64>,
        /// Fail (exit 4) instead of skipping enumeration over capacity.
        #[arg(long)]
        exact: bool,
    },
    /// Jarzynski equality from an equilibrium start.
    Jarzynski {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Generalized IFT for a measurement-feedback step, enumerated exactly.
    Gift {
        #[arg(long)]
        config: PathBuf,
    },
    /// Demon ledger: entropy/information budget and efficiency.
    Demon {
        #[arg(long)]
        config: PathBuf,
    },
    /// Quantum trajectory of a driven, measured qubit.
    Quantum {
        #[arg(long)]
        config: PathBuf,
        /// Enumerate all measurement branches instead of sampling one path.
        #[arg(long)]
        enumerate: bool,
    },
    /// Measurement-fueled engine, Monte Carlo over cycles.
    Engine {
        #[arg(long)]
        omega0: f64,
        #[arg(long)]
        omega_rabi: f64,
        #[arg(long)]
        tau: f64,
        /// Memory temperature (natural units).
        #[arg(long)]
        temp: f64,
        #[arg(long, default_value_t = 100_000)]
        cycles: u64,
    },
    /// Exact engine sweep over an Omega tau grid.
    ZenoSweep {
        #[arg(long)]
        omega0: f64,
        #[arg(long)]
        omega_rabi: f64,
        #[arg(long)]
        temp: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0.01)]
        omega_tau_min: f64,
        #[arg(long, default_value_t = core::f64::consts::FRAC_PI_2)]
        omega_tau_max: f64,
    },
    /// Photon budget and joule cost of a finite-field qubit gate.
    GateCost {
        #[arg(long, default_value_t = 1000.0)]
        nbar: f64,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long, default_value_t = core::f64::consts::FRAC_PI_2)]
        theta: f64,
        #[arg(long, default_value_t = 6.0)]
        freq_ghz: f64,
        /// Find the smallest photon budget reaching this fidelity instead.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Run the full acceptance suite; exit 3 on any failure.
    Verify,
}

fn main() -> ProcessExit {
    let cli = Cli::parse();
    let workers = cli.workers.unwrap_or_else(workers_from_env).max(1);
    let ctx = RunContext {
        seed_override: cli.seed,
        workers,
        si: cli.si,
    };
    let format = match cli.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };

    let started = Instant::now();
    let outcome = dispatch(&cli.command, &ctx);
    match outcome {
        Ok(run) => {
            let rendered = run.table.render(format);
            let exit = run.exit;
            if let Err(err) = emit(&cli.out, rendered, &run, &ctx, started) {
                eprintln!("{err}");
                return ProcessExit::from(ExitCode::Io as u8);
            }
            ProcessExit::from(exit as u8)
        }
        Err(err) => {
            eprintln!("{err}");
            ProcessExit::from(err.exit_code() as u8)
        }
    }
}

struct RunOutcome {
    table: Table,
    /// Canonical JSON of the effective configuration, hashed into the manifest.
    canonical_config: String,
    seed: u64,
    exit: ExitCode,
}

fn dispatch(command: &Command, ctx: &RunContext) -> qthermo_cli::Result<RunOutcome> {
    match command {
        Command::Ift { config, n, exact } => {
            let mut cfg: FtConfig = parse_validated(&read(config)?)?;
            if let Some(n) = n {
                cfg.n = *n;
            }
            let table = run_ift(&cfg, ctx, *exact)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::to_string(&cfg)?,
                seed: ctx.seed_for(cfg.seed),
                exit: ExitCode::Success,
            })
        }
        Command::Jarzynski { config, n } => {
            let mut cfg: FtConfig = parse_validated(&read(config)?)?;
            if let Some(n) = n {
                cfg.n = *n;
            }
            let table = run_jarzynski(&cfg, ctx)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::to_string(&cfg)?,
                seed: ctx.seed_for(cfg.seed),
                exit: ExitCode::Success,
            })
        }
        Command::Gift { config } => {
            let cfg: DemonConfig = parse_validated(&read(config)?)?;
            let table = run_gift(&cfg, ctx)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::to_string(&cfg)?,
                seed: ctx.seed_for(0),
                exit: ExitCode::Success,
            })
        }
        Command::Demon { config } => {
            let cfg: DemonConfig = parse_validated(&read(config)?)?;
            let table = run_demon(&cfg, ctx)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::to_string(&cfg)?,
                seed: ctx.seed_for(0),
                exit: ExitCode::Success,
            })
        }
        Command::Quantum { config, enumerate } => {
            let cfg: QuantumConfig = parse_validated(&read(config)?)?;
            let table = run_quantum(&cfg, ctx, *enumerate)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::to_string(&cfg)?,
                seed: ctx.seed_for(cfg.seed),
                exit: ExitCode::Success,
            })
        }
        Command::Engine {
            omega0,
            omega_rabi,
            tau,
            temp,
            cycles,
        } => {
            let config = qthermo_core::engine::EngineConfig {
                omega0: *omega0,
                omega_rabi: *omega_rabi,
                tau: *tau,
                memory_temperature: *temp,
                n_cycles: *cycles,
                seed: ctx.seed_for(0),
            };
            config.validate()?;
            let table = run_engine(&config)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::json!({
                    "engine": {
                        "omega0": omega0, "omega_rabi": omega_rabi, "tau": tau,
                        "temp": temp, "cycles": cycles,
                    }
                })
                .to_string(),
                seed: config.seed,
                exit: ExitCode::Success,
            })
        }
        Command::ZenoSweep {
            omega0,
            omega_rabi,
            temp,
            points,
            omega_tau_min,
            omega_tau_max,
        } => {
            let grid = omega_tau_grid(*omega_tau_min, *omega_tau_max, *points);
            let table = run_zeno_sweep(*omega0, *omega_rabi, *temp, &grid, ctx)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::json!({
                    "zeno_sweep": {
                        "omega0": omega0, "omega_rabi": omega_rabi, "temp": temp,
                        "points": points, "omega_tau_min": omega_tau_min,
                        "omega_tau_max": omega_tau_max,
                    }
                })
                .to_string(),
                seed: ctx.seed_for(0),
                exit: ExitCode::Success,
            })
        }
        Command::GateCost {
            nbar,
            g,
            theta,
            freq_ghz,
            threshold,
        } => {
            let table = run_gate_cost(*nbar, *g, *theta, *freq_ghz, *threshold)?;
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::json!({
                    "gate_cost": {
                        "nbar": nbar, "g": g, "theta": theta,
                        "freq_ghz": freq_ghz, "threshold": threshold,
                    }
                })
                .to_string(),
                seed: ctx.seed_for(0),
                exit: ExitCode::Success,
            })
        }
        Command::Verify => {
            let seed = ctx.seed_override.unwrap_or(0);
            let results = acceptance::run_all(ctx.workers, seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            let table = acceptance::render_table(&results);
            Ok(RunOutcome {
                table,
                canonical_config: serde_json::json!({ "verify": { "seed": seed } }).to_string(),
                seed,
                exit: if failed == 0 {
                    ExitCode::Success
                } else {
                    ExitCode::AcceptanceFailed
                },
            })
        }
    }
}

fn read(path: &Path) -> qthermo_cli::Result<String> {
    std::fs::read_to_string(path).map_err(CliError::from)
}

fn emit(
    out: &Option<PathBuf>,
    rendered: String,
    run: &RunOutcome,
    ctx: &RunContext,
    started: Instant,
) -> qthermo_cli::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, &rendered)?;
            let summary = format!("{}: {} rows", run.table.name, run.table.rows.len());
            let manifest = RunManifest::new(
                &run.canonical_config,
                run.seed,
                ctx.workers,
                started.elapsed().as_millis(),
                summary,
            );
            manifest.write_beside(path)?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}
