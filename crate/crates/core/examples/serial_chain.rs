//! Per-hop information loss along a relay chain.
//!
//! cargo run --example serial_chain

use delnet::channel::{chain_decomposition, ChainSpec};
use delnet::decision::InformationState;
use delnet::prob::{Distribution, FiniteSpace, Kernel};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::uniform(FiniteSpace::indexed("Y", 4));
    let m0 = InformationState::from_experiment("M0", &prior, &Kernel::identity(4))?;
    let hops = vec![
        Kernel::symmetric(4, 0.9)?,
        Kernel::identity(4),
        Kernel::deterministic(&[0, 0, 1, 1], 2)?,
        Kernel::symmetric(2, 0.95)?,
    ];
    let report = chain_decomposition(&ChainSpec::new(m0, hops)?)?;
    for (k, (t, c)) in report.terms.iter().zip(&report.cumulative).enumerate() {
        println!("hop {}: {t:.5} nats (cumulative {c:.5})", k + 1);
    }
    println!("end to end {:.5}", report.end_to_end);
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
