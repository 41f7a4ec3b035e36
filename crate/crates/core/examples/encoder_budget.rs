//! Best deterministic encoders of a six-symbol signal under shrinking budgets.
//!
//! cargo run --example encoder_budget

use delnet::channel::{greedy_encoder, optimal_encoder, BudgetSpec, Objective};
use delnet::decision::{InformationState, LossMatrix, ScoringRule};
use delnet::prob::{Distribution, Kernel};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::from_probs(vec![0.3, 0.3, 0.4])?;
    let signal = Kernel::new(vec![
        vec![0.5, 0.2, 0.1, 0.1, 0.05, 0.05],
        vec![0.05, 0.1, 0.5, 0.2, 0.1, 0.05],
        vec![0.05, 0.05, 0.1, 0.1, 0.3, 0.4],
    ])?;
    let state = InformationState::from_experiment("B", &prior, &signal)?;

    let objectives = [
        ("0-1 loss", Objective::Loss(LossMatrix::zero_one(3))),
        ("log score", Objective::Score(ScoringRule::Log)),
    ];
    for (name, objective) in objectives {
        println!("{name}");
        for k in 1..=state.len() {
            let budget = BudgetSpec::new(k)?;
            let best = optimal_encoder(&state, budget, &objective)?;
            let quick = greedy_encoder(&state, budget, &objective)?;
            println!(
                "  k={k} ({:.2} nats)  {:<22} {:.4}   greedy {:.4}",
                budget.capacity_nats(),
                best.partition_label(),
                best.value,
                quick.value
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
