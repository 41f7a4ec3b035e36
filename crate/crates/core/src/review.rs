//! Selective review: automate or escalate each information symbol.
//!
//! With `R_a(h)` the minimum posterior expected loss and `R_h(h)` the loss of
//! escalating, the optimal policy automates with the Bayes act where
//! `R_a(h) ≤ R_h(h)` and escalates elsewhere; its value is
//! `Σ_h P(h) min{R_a(h), R_h(h)}`.

use crate::decision::{InformationState, LossMatrix};
use crate::error::{input, Result};

/// A review-capable decision problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ReviewProblem {
    state: InformationState,
    loss: LossMatrix,
    review_loss: Vec<f64>,
}

impl ReviewProblem {
    /// `review_loss[h]` is the loss of escalating symbol `h`.
    pub fn new(state: InformationState, loss: LossMatrix, review_loss: Vec<f64>) -> Result<Self> {
        if loss.n_labels() != state.n_labels() {
            return input("loss labels do not match the state's labels");
        }
        if review_loss.len() != state.len() {
            return input(format!(
                "review loss has {} entries for {} information symbols",
                review_loss.len(),
                state.len()
            ));
        }
        if review_loss.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return input("review losses must be finite and nonnegative");
        }
        Ok(ReviewProblem {
            state,
            loss,
            review_loss,
        })
    }

    /// The same review cost everywhere.
    pub fn with_constant_cost(state: InformationState, loss: LossMatrix, cost: f64) -> Result<Self> {
        let n = state.len();
        Self::new(state, loss, vec![cost; n])
    }

    pub fn state(&self) -> &InformationState {
        &self.state
    }

    pub fn loss(&self) -> &LossMatrix {
        &self.loss
    }

    pub fn review_loss(&self) -> &[f64] {
        &self.review_loss
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReviewDecision {
    Automate(usize),
    Escalate,
}

/// `R_a(h)` with its minimising action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomatedRisk {
    pub risk: f64,
    pub action: usize,
}

pub fn automated_risk(problem: &ReviewProblem) -> Vec<AutomatedRisk> {
    problem
        .state
        .posteriors()
        .iter()
        .map(|post| {
            let (action, risk) = problem.loss.bayes_act(post.probs());
            AutomatedRisk { risk, action }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReviewPolicy {
    pub decisions: Vec<ReviewDecision>,
    pub value: f64,
    /// `P(escalate)`.
    pub escalation_mass: f64,
}

/// Threshold rule; ties `R_a = R_h` automate.
pub fn optimal_review(problem: &ReviewProblem) -> ReviewPolicy {
    let mut value = 0.0;
    let mut escalation_mass = 0.0;
    let decisions = automated_risk(problem)
        .into_iter()
        .zip(&problem.review_loss)
        .zip(problem.state.weights())
        .map(|((auto, &rh), &w)| {
            if auto.risk <= rh {
                value += w * auto.risk;
                ReviewDecision::Automate(auto.action)
            } else {
                value += w * rh;
                escalation_mass += w;
                ReviewDecision::Escalate
            }
        })
        .collect();
    ReviewPolicy {
        decisions,
        value,
        escalation_mass,
    }
}

/// Expected loss of an arbitrary deterministic policy.
pub fn policy_loss(problem: &ReviewProblem, decisions: &[ReviewDecision]) -> f64 {
    decisions
        .iter()
        .enumerate()
        .map(|(h, d)| {
            let w = problem.state.weight(h);
            match *d {
                ReviewDecision::Escalate => w * problem.review_loss[h],
                ReviewDecision::Automate(a) => w * problem.loss.expected(a, problem.state.posterior(h).probs()),
            }
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierPoint {
    pub cost: f64,
    pub escalation_mass: f64,
    pub value: f64,
}

/// Sweeps a constant review cost over `costs`.
pub fn review_frontier(state: &InformationState, loss: &LossMatrix, costs: &[f64]) -> Result<Vec<FrontierPoint>> {
    if costs.is_empty() {
        return input("cost grid is empty");
    }
    costs
        .iter()
        .map(|&cost| {
            let p = ReviewProblem::with_constant_cost(state.clone(), loss.clone(), cost)?;
            let r = optimal_review(&p);
            Ok(FrontierPoint {
                cost,
                escalation_mass: r.escalation_mass,
                value: r.value,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::bayes_risk;
    use crate::prob::{Distribution, FiniteSpace, Kernel};

    fn state_with(posts: &[Vec<f64>], weights: Vec<f64>) -> InformationState {
        let y = FiniteSpace::indexed("Y", posts[0].len());
        let posts = posts.iter().map(|p| Distribution::new(y.clone(), p.clone()).unwrap()).collect();
        InformationState::new("H", FiniteSpace::indexed("H", weights.len()), weights, posts).unwrap()
    }

    #[test]
    fn automated_risk_examples() {
        let s = state_with(&[vec![1.0, 0.0, 0.0], vec![0.6, 0.3, 0.1]], vec![0.5, 0.5]);
        let p = ReviewProblem::with_constant_cost(s, LossMatrix::zero_one(3), 1.0).unwrap();
        let r = automated_risk(&p);
        assert_eq!(r[0].risk, 0.0);
        assert!((r[1].risk - 0.4).abs() < 1e-15);
        assert_eq!(r[1].action, 0);

        let u = state_with(&[vec![0.25; 4]], vec![1.0]);
        let p = ReviewProblem::with_constant_cost(u, LossMatrix::zero_one(4), 1.0).unwrap();
        assert!((automated_risk(&p)[0].risk - 0.75).abs() < 1e-15);
    }

    #[test]
    fn zero_review_cost_escalates_everything() {
        let s = InformationState::from_experiment(
            "H",
            &Distribution::uniform(FiniteSpace::indexed("Y", 2)),
            &Kernel::symmetric(2, 0.8).unwrap(),
        )
        .unwrap();
        let p = ReviewProblem::with_constant_cost(s.clone(), LossMatrix::zero_one(2), 0.0).unwrap();
        let r = optimal_review(&p);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.escalation_mass, 1.0);

        let p = ReviewProblem::with_constant_cost(s.clone(), LossMatrix::zero_one(2), 1.0).unwrap();
        let r = optimal_review(&p);
        assert_eq!(r.escalation_mass, 0.0);
        assert!((r.value - bayes_risk(&s, &LossMatrix::zero_one(2)).unwrap().value).abs() < 1e-15);
    }

    #[test]
    fn tie_automates() {
        let s = state_with(&[vec![0.7, 0.3]], vec![1.0]);
        let p = ReviewProblem::with_constant_cost(s, LossMatrix::zero_one(2), 0.3).unwrap();
        assert_eq!(optimal_review(&p).decisions, vec![ReviewDecision::Automate(0)]);
    }

    #[test]
    fn invalid_problems() {
        let s = state_with(&[vec![0.7, 0.3]], vec![1.0]);
        assert!(ReviewProblem::new(s.clone(), LossMatrix::zero_one(2), vec![]).is_err());
        assert!(ReviewProblem::new(s.clone(), LossMatrix::zero_one(2), vec![-1.0]).is_err());
        assert!(ReviewProblem::new(s.clone(), LossMatrix::zero_one(3), vec![0.1]).is_err());
        assert!(review_frontier(&s, &LossMatrix::zero_one(2), &[]).is_err());
    }
}
