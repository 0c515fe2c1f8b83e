use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use noma_drn::experiments::floors::{run_floors, DEFAULT_SNR as FLOORS_SNR};
use noma_drn::experiments::pa_grid::{run_pa_grid, DEFAULT_ALPHA1, DEFAULT_BETA1};
use noma_drn::experiments::phase2::run_phase2_study;
use noma_drn::experiments::sweep::run_snr_sweep;
use noma_drn::experiments::table1::run_table1;
use noma_drn::{Artifact, CliError, Grid, SimSettings};
use noma_drn_core::analytic::Method;
use noma_drn_core::model::{Preset, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "noma-drn",
    version,
    about = "Error-probability experiments for a NOMA diamond relaying network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// End-to-end BER against SNR: exact, approximate, floor and simulated.
    SnrSweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "0:40:5")]
        snr: Grid,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Analytic end-to-end BER over a grid of power splits.
    PaGrid {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        snr: Grid,
        #[arg(long, default_value = DEFAULT_ALPHA1)]
        alpha1: Grid,
        #[arg(long, default_value = DEFAULT_BETA1)]
        beta1: Grid,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Second-phase BER with derived and with equal event probabilities.
    Phase2Study {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "0:30:2")]
        snr: Grid,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Second-phase same-sign event probability table.
    Table1 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "0:15:5")]
        snr: Grid,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact end-to-end BER next to the high-SNR error floors.
    Floors {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = FLOORS_SNR)]
        snr: Grid,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario TOML file; repeatable where several scenarios are accepted.
    #[arg(long)]
    config: Vec<PathBuf>,
    /// Built-in scenario (I, II, III or IV); repeatable.
    #[arg(long, value_enum)]
    preset: Vec<PresetArg>,
}

#[derive(Args)]
struct SimArgs {
    /// Monte Carlo trials per SNR point; 0 disables simulation.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

#[derive(Args)]
struct OutArgs {
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    I,
    Ii,
    Iii,
    Iv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Approx,
    Floor,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<Vec<ScenarioConfig>, CliError> {
        let mut out = Vec::new();
        for p in &self.preset {
            let preset = match p {
                PresetArg::I => Preset::I,
                PresetArg::Ii => Preset::II,
                PresetArg::Iii => Preset::III,
                PresetArg::Iv => Preset::IV,
            };
            out.push(preset.scenario());
        }
        for path in &self.config {
            let sc = ScenarioConfig::load(path).map_err(|e| match e {
                noma_drn_core::Error::Io(source) => CliError::File {
                    path: path.clone(),
                    source,
                },
                other => CliError::invalid(format!("{}: {other}", path.display())),
            })?;
            out.push(sc);
        }
        Ok(out)
    }

    fn one(&self) -> Result<ScenarioConfig, CliError> {
        let mut all = self.resolve()?;
        match all.len() {
            1 => Ok(all.remove(0)),
            0 => Err(CliError::invalid(
                "give a scenario with --config or --preset",
            )),
            n => Err(CliError::invalid(format!(
                "this experiment takes one scenario, got {n}"
            ))),
        }
    }

    fn many_or(&self, defaults: &[Preset]) -> Result<Vec<ScenarioConfig>, CliError> {
        let all = self.resolve()?;
        if all.is_empty() {
            return Ok(defaults.iter().map(|p| p.scenario()).collect());
        }
        Ok(all)
    }
}

impl SimArgs {
    fn settings(&self) -> Result<SimSettings, CliError> {
        if self.workers == 0 {
            return Err(CliError::invalid("--workers must be at least 1"));
        }
        Ok(SimSettings {
            trials: self.trials,
            seed: self.seed,
            workers: self.workers,
        })
    }
}

fn emit(artifact: &Artifact, out: &OutArgs) -> Result<(), CliError> {
    match &out.out {
        Some(path) => artifact.write_to_path(path)?,
        None => artifact.write(io::stdout().lock())?,
    }
    let failed = artifact.failed_rows();
    if failed > 0 {
        return Err(CliError::RowsFailed {
            failed,
            total: artifact.rows.len(),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::SnrSweep {
            scenario,
            snr,
            sim,
            out,
        } => emit(
            &run_snr_sweep(&scenario.one()?, &snr, &sim.settings()?).to_artifact(),
            &out,
        ),
        Command::PaGrid {
            scenario,
            snr,
            alpha1,
            beta1,
            method,
            workers,
            out,
        } => {
            let method = match method {
                MethodArg::Exact => Method::ExactQuadrature,
                MethodArg::Approx => Method::ClosedApprox,
                MethodArg::Floor => Method::Floor,
            };
            let result = run_pa_grid(&scenario.one()?, &snr, &alpha1, &beta1, method, workers)?;
            for best in result.argmin() {
                eprintln!(
                    "argmin at {} dB: alpha1 = {}, beta1 = {}, p_e2e = {:.6e}",
                    best.snr_db,
                    best.alpha1,
                    best.beta1,
                    best.p_e2e.as_ref().unwrap()
                );
            }
            emit(&result.to_artifact(), &out)
        }
        Command::Phase2Study {
            scenario,
            snr,
            sim,
            out,
        } => {
            let result = run_phase2_study(&scenario.one()?, &snr, &sim.settings()?);
            if let Some((name, (lo, hi))) = result.rising_interval() {
                eprintln!("derived {name} BER rises between {lo} dB and {hi} dB");
            }
            emit(&result.to_artifact(), &out)
        }
        Command::Table1 {
            scenario,
            snr,
            sim,
            out,
        } => {
            let scenarios = scenario.many_or(&[Preset::I, Preset::II])?;
            emit(
                &run_table1(&scenarios, snr.values(), &sim.settings()?).to_artifact(),
                &out,
            )
        }
        Command::Floors { scenario, snr, out } => {
            let scenarios = scenario.many_or(&Preset::ALL)?;
            emit(&run_floors(&scenarios, &snr).to_artifact(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
