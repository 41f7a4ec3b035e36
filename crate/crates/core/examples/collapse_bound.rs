//! A two-analyst network against a decision maker who sees every signal.
//!
//! cargo run --example collapse_bound

use delnet::decision::LossMatrix;
use delnet::network::{collapse_gap, network_loss, DelegatedNetwork, NetworkNode, Source};
use delnet::prob::{Distribution, JointModel, Kernel, Limits};

pub fn run() -> delnet::Result<()> {
    let mut exo = JointModel::new("Y", Distribution::from_probs(vec![0.6, 0.4])?);
    exo.add_variable("B", &["Y"], Kernel::symmetric(2, 0.8)?)?;
    exo.add_variable("Z", &["Y"], Kernel::new(vec![vec![0.7, 0.3], vec![0.25, 0.75]])?)?;

    let nodes = vec![
        NetworkNode::new("analyst", vec![Source::exo("B")], Kernel::symmetric(2, 0.9)?),
        NetworkNode::new("auditor", vec![Source::exo("Z")], Kernel::identity(2)),
        // act 1 only when both reports say 1
        NetworkNode::terminal(
            "decide",
            vec![Source::node("analyst"), Source::node("auditor")],
            Kernel::deterministic(&[0, 0, 0, 1], 2)?,
        ),
    ];
    let net = DelegatedNetwork::new(exo, nodes)?;
    let loss = LossMatrix::zero_one(2);

    let g = collapse_gap(&net, &loss)?;
    println!("network {:.4}  centralized {:.4}  gap {:.4}", g.network_loss, g.centralized_value, g.gap);

    let tuned = net.with_bayes_terminal(&loss, &Limits::default())?;
    println!("with a Bayes terminal: {:.4}", network_loss(&tuned, &loss)?);
    println!("edges: {:?}", net.edges());
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
