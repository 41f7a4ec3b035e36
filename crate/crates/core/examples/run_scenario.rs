//! Run a scenario file and print its CSV.
//!
//! cargo run --example run_scenario -- scenarios/interface.toml

use delnet::prob::Limits;
use delnet::scenario::{run as run_config, RunOptions, ScenarioConfig};

pub fn run_path(path: &str) -> delnet::Result<String> {
    let cfg = ScenarioConfig::from_path(path)?;
    let options = RunOptions {
        seed: None,
        limits: Limits::from_env()?,
    };
    Ok(run_config(&cfg, &options)?.to_csv(false))
}

pub fn run() -> delnet::Result<()> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/relay_depth.toml");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.to_string());
    print!("{}", run_path(&path)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
