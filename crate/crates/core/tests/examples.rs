//! Every example runs to completion.

#[path = "../examples/joint_model.rs"]
#[allow(dead_code)]
mod joint_model;
#[path = "../examples/bayes_envelope.rs"]
#[allow(dead_code)]
mod bayes_envelope;
#[path = "../examples/collapse_bound.rs"]
#[allow(dead_code)]
mod collapse_bound;
#[path = "../examples/encoder_budget.rs"]
#[allow(dead_code)]
mod encoder_budget;
#[path = "../examples/communication_tax.rs"]
#[allow(dead_code)]
mod communication_tax;
#[path = "../examples/serial_chain.rs"]
#[allow(dead_code)]
mod serial_chain;
#[path = "../examples/blackwell_dominance.rs"]
#[allow(dead_code)]
mod blackwell_dominance;
#[path = "../examples/verification_gain.rs"]
#[allow(dead_code)]
mod verification_gain;
#[path = "../examples/selective_review.rs"]
#[allow(dead_code)]
mod selective_review;
#[path = "../examples/run_scenario.rs"]
#[allow(dead_code)]
mod run_scenario;

#[test]
fn library_examples_run() {
    joint_model::run().unwrap();
    bayes_envelope::run().unwrap();
    collapse_bound::run().unwrap();
    encoder_budget::run().unwrap();
    communication_tax::run().unwrap();
    serial_chain::run().unwrap();
    blackwell_dominance::run().unwrap();
    verification_gain::run().unwrap();
    selective_review::run().unwrap();
}

#[test]
fn every_bundled_scenario_runs() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let csv = run_scenario::run_path(path.to_str().unwrap()).unwrap();
        assert!(csv.contains("# config_sha256: "), "{}", path.display());
    }
}
