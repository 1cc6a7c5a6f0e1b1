use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cohsim_cli::{builtin, export, parse_config, run_scenario, Scenario};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cohsim",
    about = "Simulate multiqubit dephasing dynamics and export coherence/correlation sweeps",
    version
)]
struct Cli {
    /// Worker threads for the sweep (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario config and export its records.
    Run { config: PathBuf },
    /// Execute a bundled scenario: fig1, fig2 or fig3.
    Builtin {
        name: String,
        /// Output path (defaults to the scenario's own, e.g. fig1.csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a config without running it.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn dispatch(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Run { config } => {
            let mut scenario = load(&config)?;
            apply_overrides(&mut scenario, cli.seed);
            execute(scenario, cli.threads)
        }
        Command::Builtin { name, out } => {
            let mut scenario = builtin(&name).map_err(|e| {
                eprintln!("{e}");
                EXIT_CONFIG
            })?;
            if let Some(path) = out {
                scenario.output_path = path;
            }
            apply_overrides(&mut scenario, cli.seed);
            execute(scenario, cli.threads)
        }
        Command::Validate { config } => {
            let scenario = load(&config)?;
            println!(
                "OK: scenario '{}' ({} qubits, {} grid points, {} measures)",
                scenario.name,
                scenario.num_qubits,
                scenario.grid.len(),
                scenario.measures.len()
            );
            Ok(())
        }
    }
}

fn load(path: &PathBuf) -> Result<Scenario, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        EXIT_IO
    })?;
    parse_config(&text).map_err(|e| {
        eprintln!("{e}");
        EXIT_CONFIG
    })
}

fn apply_overrides(scenario: &mut Scenario, seed: Option<u64>) {
    if let Some(seed) = seed {
        scenario.seed = seed;
    }
}

fn execute(scenario: Scenario, threads: usize) -> Result<(), u8> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| {
            eprintln!("cannot build thread pool: {e}");
            EXIT_NUMERICAL
        })?;
    let output = pool
        .install(|| run_scenario(&scenario))
        .map_err(|e| {
            eprintln!("{e}");
            EXIT_NUMERICAL
        })?;
    export(&output, &scenario.output_path, scenario.format).map_err(|e| {
        eprintln!("cannot write {}: {e}", scenario.output_path.display());
        EXIT_IO
    })?;
    println!(
        "wrote {} records to {}",
        output.records.len(),
        scenario.output_path.display()
    );
    Ok(())
}
