//! Garbling witnesses and separating losses.
//!
//! cargo run --example blackwell_dominance

use delnet::blackwell::{is_dominated, separating_loss, Dominance, Experiment};
use delnet::prob::{Distribution, FiniteSpace, Kernel};

pub fn run() -> delnet::Result<()> {
    let prior = Distribution::uniform(FiniteSpace::indexed("Y", 2));
    let t = Experiment::new(prior.clone(), Kernel::new(vec![vec![0.7, 0.3], vec![0.1, 0.9]])?)?;

    let noisy = Experiment::new(prior.clone(), t.kernel().compose(&Kernel::symmetric(2, 0.8)?)?)?;
    if let Dominance::Dominated(w) = is_dominated(&noisy, &t, 1e-9)? {
        println!("garbling {:?}, residual {:.1e}", w.channel.to_rows(), w.residual);
    }

    let s = Experiment::new(prior, Kernel::new(vec![vec![0.9, 0.1], vec![0.4, 0.6]])?)?;
    for (a, b, name) in [(&s, &t, "s over t"), (&t, &s, "t over s")] {
        let sep = separating_loss(a, b)?;
        println!(
            "{name}: loss {:?}  risks {:.4} vs {:.4}  ({:?})",
            sep.loss.to_rows(),
            sep.risk_s,
            sep.risk_t,
            sep.construction
        );
    }

    match separating_loss(&noisy, &t) {
        Err(e) => println!("noisy copy: {e}"),
        Ok(_) => unreachable!("a garbling never wins"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> delnet::Result<()> {
    run()
}
