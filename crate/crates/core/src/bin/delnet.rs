use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use delnet::prob::Limits;
use delnet::scenario::{run, RunOptions, ScenarioConfig, ScenarioKind};
use delnet::Error;

/// Exact evaluation of delegated decision networks from TOML scenarios.
#[derive(Parser)]
#[command(name = "delnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario TOML file.
    config: PathBuf,
    /// CSV destination; defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Report information quantities in bits instead of nats.
    #[arg(long)]
    bits: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run any scenario.
    Run(RunArgs),
    /// Budget-constrained encoder search (kind = "encode-opt").
    EncodeOpt(RunArgs),
    /// Communication tax of one channel (kind = "tax").
    Tax(RunArgs),
    /// Serial chain decomposition (kind = "chain").
    Chain(RunArgs),
    /// Selective-review frontier (kind = "review-frontier").
    Review(RunArgs),
    /// Garbling witness or separating loss (kind = "dominance").
    Dominance(RunArgs),
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Input(_) | Error::Graph(_) => 2,
        Error::EnumerationLimit { .. } => 3,
        _ => 1,
    }
}

fn execute(args: &RunArgs, expect: Option<ScenarioKind>) -> Result<(), Error> {
    let cfg = ScenarioConfig::from_path(&args.config)?;
    if let Some(kind) = expect {
        if cfg.kind != kind {
            return Err(Error::Config(format!(
                "this subcommand needs kind = {:?}, config has {:?}",
                kind.name(),
                cfg.kind.name()
            )));
        }
    }
    let options = RunOptions {
        seed: args.seed,
        limits: Limits::from_env()?,
    };
    let csv = run(&cfg, &options)?.to_csv(args.bits);
    let out = args.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, expect) = match &cli.command {
        Command::Run(a) => (a, None),
        Command::EncodeOpt(a) => (a, Some(ScenarioKind::EncodeOpt)),
        Command::Tax(a) => (a, Some(ScenarioKind::Tax)),
        Command::Chain(a) => (a, Some(ScenarioKind::Chain)),
        Command::Review(a) => (a, Some(ScenarioKind::ReviewFrontier)),
        Command::Dominance(a) => (a, Some(ScenarioKind::Dominance)),
    };
    match execute(args, expect) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("delnet: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
