use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use intflow_cli::{cmd_gen, cmd_oracle, cmd_solve, cmd_trace, cmd_verify, OutputFormat, EXIT_ERROR};
use intflow_core::oracle::{GeneratorMode, GeneratorParams};
use intflow_core::{MonitorMode, ScalingMode, SolveConfig};

/// Exact-integer min-cost flow solver.
///
/// Instances use the DIMACS min-cost flow format. Node lines give supplies
/// (positive = flow leaves the node); internally this is negated into
/// demands. Arc lower bounds must be 0.
///
/// Exit codes: 0 optimal, 1 usage or other error, 2 infeasible, 3 iteration
/// ceiling or centering stall.
#[derive(Parser)]
#[command(name = "intflow", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the interior point method.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
    },
    /// Solve and print one JSON record per outer iteration.
    Trace {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also print a record at every centering refresh.
        #[arg(long)]
        refreshes: bool,
    },
    /// Check a DIMACS solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Solve with the successive-shortest-path reference solver.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
    },
    /// Write a random instance.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        nodes: usize,
        #[arg(long, default_value_t = 8)]
        arcs: usize,
        #[arg(long, default_value_t = 10)]
        max_capacity: i64,
        #[arg(long, default_value_t = 10)]
        max_cost: i64,
        #[arg(long, value_enum, default_value_t = Mode::Feasible)]
        mode: Mode,
        /// Output file (standard output when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `standard`: γ = 2^15 m^4 βUC; `strict`: γ = 2^20 m^5 βUC.
    #[arg(long, value_enum, default_value_t = Scaling::Standard)]
    scaling: Scaling,
    /// `strict` fails on any value above 2^31 m^10 U^2 C^2; `log` only records.
    #[arg(long, value_enum, default_value_t = Monitor::Strict)]
    monitor: Monitor,
    /// Cycle updates between centering refreshes (default: minor arc count).
    #[arg(long)]
    refresh_interval: Option<u64>,
    /// Cycle-update ceiling per centering step.
    #[arg(long)]
    max_updates: Option<u64>,
    /// Outer-iteration ceiling.
    #[arg(long)]
    max_iterations: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scaling {
    Standard,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum Monitor {
    Strict,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Feasible,
    Raw,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Dimacs => OutputFormat::Dimacs,
            Format::JsonLines => OutputFormat::JsonLines,
        }
    }
}

impl SolverArgs {
    fn config(&self) -> SolveConfig {
        SolveConfig {
            seed: self.seed,
            scaling: match self.scaling {
                Scaling::Standard => ScalingMode::Standard,
                Scaling::Strict => ScalingMode::Strict,
            },
            monitor: match self.monitor {
                Monitor::Strict => MonitorMode::Strict,
                Monitor::Log => MonitorMode::Log,
            },
            refresh_interval: self.refresh_interval,
            max_updates: self.max_updates,
            max_iterations: self.max_iterations,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<i32> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match cli.command {
        Command::Solve { input, solver, format } => {
            cmd_solve(&read(&input)?, &solver.config(), format.into(), &mut out, &mut err)?
        }
        Command::Trace { input, solver, refreshes } => {
            cmd_trace(&read(&input)?, &solver.config(), refreshes, &mut out, &mut err)?
        }
        Command::Verify { instance, solution } => cmd_verify(&read(&instance)?, &read(&solution)?, &mut out)?,
        Command::Oracle { input, format } => cmd_oracle(&read(&input)?, format.into(), &mut out)?,
        Command::Gen {
            seed,
            nodes,
            arcs,
            max_capacity,
            max_cost,
            mode,
            output,
        } => {
            let params = GeneratorParams {
                nodes,
                arcs,
                max_capacity,
                max_cost,
                mode: match mode {
                    Mode::Feasible => GeneratorMode::Feasible,
                    Mode::Raw => GeneratorMode::Raw,
                },
            };
            match output {
                Some(path) => {
                    let mut file = io::BufWriter::new(
                        fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?,
                    );
                    let code = cmd_gen(seed, &params, &mut file)?;
                    file.flush()?;
                    code
                }
                None => cmd_gen(seed, &params, &mut out)?,
            }
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    // Usage errors exit with 1, not clap's default of 2 (reserved for
    // infeasible instances).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
