//! When does handing the decider one more signal help?
//!
//! cargo run --example verification_gain

use delnet::blackwell::verification_gain;
use delnet::decision::LossMatrix;
use delnet::prob::{Distribution, FiniteSpace, JointModel, Kernel};

fn model(extra: &str) -> delnet::Result<JointModel> {
    let mut m = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 4)));
    m.add_variable("M", &["Y"], Kernel::symmetric(4, 0.6)?)?;
    match extra {
        "copy" => m.add_variable("W", &["M"], Kernel::identity(4))?,
        "summary" => m.add_variable("W", &["M"], Kernel::deterministic(&[0, 0, 1, 1], 2)?)?,
        _ => m.add_variable("W", &["Y"], Kernel::symmetric(4, 0.8)?)?,
    };
    Ok(m)
}

pub fn run() -> delnet::Result<()> {
    let loss = LossMatrix::zero_one(4);
    for extra in ["copy", "summary", "fresh"] {
        let g = verification_gain(&model(extra)?.full_joint()?, "Y", &["M"], &["W"], &loss)?;
        println!("{extra:<8} {:.3} -> {:.3}  gain {:.3}  redundant {}", g.v_base, g.v_extended, g.gain, g.redundant);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
