//! Exact finite models of delegated decision networks.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example joint_model
//! cargo run --example bayes_envelope
//! cargo run --example collapse_bound
//! cargo run --example encoder_budget
//! cargo run --example communication_tax
//! cargo run --example serial_chain
//! cargo run --example blackwell_dominance
//! cargo run --example verification_gain
//! cargo run --example selective_review
//! cargo run --example run_scenario -- scenarios/interface.toml
//! ```

pub mod blackwell;
pub mod channel;
pub mod decision;
pub mod error;
pub mod network;
pub mod partition;
pub mod prob;
pub mod random;
pub mod review;
pub mod scenario;
pub mod simplex;

pub use error::{Error, Result};
