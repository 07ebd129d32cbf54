use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dispersive_cli::commands;
use dispersive_cli::exit_code;
use dispersive_cli::presets::{preset, PRESET_IDS};
use dispersive_cli::request::{parse_methods, parse_objective, parse_values, Overrides, RunRequest};
use dispersive_core::analysis::FitObjective;
use dispersive_core::{Error, Method};

/// Qubit coherence in a finite dispersive multimode environment.
#[derive(Parser)]
#[command(name = "dispersive", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence factor r_N(t) for each method.
    Coherence(RunArgs),
    /// Two or more methods side by side, with |r| deviations.
    Compare(RunArgs),
    /// t_max as one parameter is varied.
    Sweep(RunArgs),
    /// Short-time exponential fits e^{-2 gamma t}.
    Fit(RunArgs),
    /// List the figure presets.
    Presets,
}

#[derive(Args)]
struct RunArgs {
    /// Model file (TOML), or a CSV written by this tool.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Figure preset, e.g. 2c, 3b, 4f, A3a.
    #[arg(long, value_name = "ID")]
    preset: Option<String>,
    /// Comma-separated methods: general, degenerate, pair, symplectic, exact-oracle.
    #[arg(long, value_name = "LIST")]
    method: Option<String>,
    #[arg(long, value_name = "F")]
    t_end: Option<f64>,
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Output CSV (stdout if omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Omit the generation-time header line.
    #[arg(long)]
    no_timestamp: bool,
    /// Fit window as a fraction of t_max.
    #[arg(long, value_name = "F")]
    fit_window: Option<f64>,
    /// Fit objective: amplitude or log-linear.
    #[arg(long, value_name = "NAME", value_parser = parse_objective)]
    fit_objective: Option<FitObjective>,
    /// Thermal weight the exact oracle may discard.
    #[arg(long, value_name = "F")]
    weight_tol: Option<f64>,
    /// Swept parameter path, e.g. modes[1].g.
    #[arg(long, value_name = "PATH")]
    param: Option<String>,
    /// Sweep values: a,b,c or start:stop:count.
    #[arg(long, value_name = "LIST")]
    values: Option<String>,
}

impl RunArgs {
    fn overrides(self) -> Result<Overrides, Error> {
        Ok(Overrides {
            config: self.config,
            preset: self.preset,
            methods: self.method.as_deref().map(parse_methods).transpose()?,
            t_end: self.t_end,
            samples: self.samples,
            output: self.out,
            no_timestamp: self.no_timestamp,
            fit_window: self.fit_window,
            fit_objective: self.fit_objective,
            weight_tol: self.weight_tol,
            param: self.param,
            values: self.values.as_deref().map(parse_values).transpose()?,
        })
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let (args, defaults, cmd): (RunArgs, &[Method], fn(&RunRequest) -> Result<_, Error>) = match cli.command {
        Command::Presets => {
            for id in PRESET_IDS {
                let p = preset(id).expect("listed preset exists");
                println!("{id}\t{}", p.summary);
            }
            return Ok(());
        }
        Command::Coherence(a) => (a, &[Method::General], commands::coherence),
        Command::Compare(a) => (a, &[Method::General, Method::ExactOracle], commands::compare),
        Command::Sweep(a) => (a, &[Method::General], commands::sweep),
        Command::Fit(a) => (a, &[Method::General], commands::fit),
    };
    let req = RunRequest::resolve(&args.overrides()?, defaults)?;
    cmd(&req)?.emit(req.output.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(exit_code(e.kind()) as u8)
        }
    }
}
