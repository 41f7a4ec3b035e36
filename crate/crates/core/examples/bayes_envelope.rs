//! Bayes risk of a noisy binary signal, plus log and Brier values.
//!
//! cargo run --example bayes_envelope

use delnet::decision::{bayes_risk, divergence, scoring_value, InformationState, LossMatrix, ScoringRule};
use delnet::prob::{Distribution, FiniteSpace, Kernel};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::uniform(FiniteSpace::indexed("Y", 2));
    let state = InformationState::from_experiment("B", &prior, &Kernel::symmetric(2, 0.8)?)?;

    let r = bayes_risk(&state, &LossMatrix::zero_one(2))?;
    println!("0-1 risk {:.3}, policy {:?}", r.value, r.policy);

    // asymmetric costs move the decision boundary
    let costly = LossMatrix::new(vec![vec![0.0, 5.0], vec![1.0, 0.0]])?;
    let r = bayes_risk(&state, &costly)?;
    println!("asymmetric risk {:.3}, policy {:?}", r.value, r.policy);

    for rule in [ScoringRule::Log, ScoringRule::Brier] {
        println!("{} value {:.4}", rule.name(), scoring_value(&state, rule));
    }
    let kl = divergence(ScoringRule::Log, state.posterior(0), &prior)?;
    println!("KL(posterior | prior) = {kl:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
