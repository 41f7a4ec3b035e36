//! Value lost when a three-symbol report is squeezed into two messages.
//!
//! cargo run --example communication_tax

use delnet::channel::{communication_tax, Encoder};
use delnet::decision::{InformationState, ScoringRule};
use delnet::prob::{Distribution, Kernel};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::from_probs(vec![0.5, 0.5])?;
    let signal = Kernel::new(vec![vec![0.8, 0.15, 0.05], vec![0.1, 0.2, 0.7]])?;
    let state = InformationState::from_experiment("H", &prior, &signal)?;

    for merge in [[0, 0, 1], [0, 1, 1]] {
        let enc = Encoder::from_partition(&merge);
        for rule in [ScoringRule::Log, ScoringRule::Brier] {
            let r = communication_tax(&state, enc.kernel(), rule)?;
            print!("{merge:?} {:<5} gap {:.5}  E[D] {:.5}", rule.name(), r.gap, r.expected_divergence);
            match r.conditional_mi {
                Some(i) => println!("  I(Y;H|M) {i:.5}"),
                None => println!(),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
