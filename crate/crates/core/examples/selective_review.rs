//! Escalate uncertain cases to a reviewer and trace the cost frontier.
//!
//! cargo run --example selective_review

use delnet::decision::{InformationState, LossMatrix};
use delnet::prob::{Distribution, Kernel};
use delnet::review::{automated_risk, optimal_review, review_frontier, ReviewProblem};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::from_probs(vec![0.5, 0.3, 0.2])?;
    let signal = Kernel::new(vec![
        vec![0.7, 0.2, 0.1, 0.0],
        vec![0.2, 0.5, 0.2, 0.1],
        vec![0.0, 0.2, 0.3, 0.5],
    ])?;
    let state = InformationState::from_experiment("H", &prior, &signal)?;
    let loss = LossMatrix::zero_one(3);

    let problem = ReviewProblem::new(state.clone(), loss.clone(), vec![0.3, 0.1, 0.1, 0.3])?;
    for (h, r) in automated_risk(&problem).iter().enumerate() {
        println!("symbol {h}: automated risk {:.3} with action {}", r.risk, r.action);
    }
    let policy = optimal_review(&problem);
    println!("{:?}  value {:.3}", policy.decisions, policy.value);

    let costs: Vec<f64> = (0..=10).map(|i| i as f64 * 0.05).collect();
    for p in review_frontier(&state, &loss, &costs)? {
        println!("cost {:.2}  escalated {:.2}  loss {:.4}", p.cost, p.escalation_mass, p.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
