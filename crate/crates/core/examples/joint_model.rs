//! Build a two-variable model, enumerate its joint table and condition on the signal.
//!
//! cargo run --example joint_model

use delnet::prob::{Distribution, FiniteSpace, JointModel, Kernel};

pub fn run() -> delnet::Result<()> {
    let y = FiniteSpace::new("Y", vec!["rain".into(), "dry".into()])?;
    let mut model = JointModel::new("Y", Distribution::new(y, vec![0.6, 0.4])?);
    model.add_variable("B", &["Y"], Kernel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]])?)?;

    let joint = model.full_joint()?;
    for (cell, p) in joint.cells() {
        println!("Y={} B={} p={p:.2}", cell[0], cell[1]);
    }
    println!("P(B) = {}", Distribution::from_probs(joint.marginal(&["B"])?.probs().to_vec())?);
    println!("P(Y | B=0) = {}", model.posterior(&[("B", 0)])?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
