//! Seeded generators for random instances: distributions, kernels, losses,
//! information states and small networks. Used by the scenario sweeps and by
//! the property and acceptance suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decision::{InformationState, LossMatrix};
use crate::network::{DelegatedNetwork, NetworkNode, Source};
use crate::prob::{Distribution, JointModel, Kernel};

/// The generator every seeded routine uses.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A flat-Dirichlet draw; with `sparse`, entries are dropped with
/// probability 0.3 (at least one survives).
pub fn simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize, sparse: bool) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    if sparse && n > 1 {
        let keep = rng.random_range(0..n);
        for (i, x) in w.iter_mut().enumerate() {
            if i != keep && rng.random_bool(0.3) {
                *x = 0.0;
            }
        }
    }
    let total: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.into_iter().map(|x| x / total).collect();
    // absorb rounding so the vector passes the structural unit-sum check
    let drift = 1.0 - p.iter().sum::<f64>();
    let big = (0..n).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap();
    p[big] += drift;
    p
}

pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Distribution {
    Distribution::from_probs(simplex_point(rng, n, false)).expect("generated point is on the simplex")
}

pub fn kernel<R: Rng + ?Sized>(rng: &mut R, n_in: usize, n_out: usize, sparse: bool) -> Kernel {
    let rows = (0..n_in).map(|_| simplex_point(rng, n_out, sparse)).collect();
    Kernel::new(rows).expect("generated rows are stochastic")
}

/// Loss entries uniform on `[0, 1]`.
pub fn loss<R: Rng + ?Sized>(rng: &mut R, n_actions: usize, n_labels: usize) -> LossMatrix {
    let rows = (0..n_actions)
        .map(|_| (0..n_labels).map(|_| rng.random::<f64>()).collect())
        .collect();
    LossMatrix::new(rows).expect("generated loss is bounded")
}

/// The state induced by a random (possibly sparse) experiment on a random prior.
pub fn state<R: Rng + ?Sized>(rng: &mut R, n_symbols: usize, n_labels: usize) -> InformationState {
    let prior = distribution(rng, n_labels);
    let sparse = rng.random_bool(0.3);
    let k = kernel(rng, n_labels, n_symbols, sparse);
    InformationState::from_experiment("H", &prior, &k).expect("shapes agree")
}

/// Shape bounds for [`network`].
#[derive(Debug, Clone, Copy)]
pub struct NetworkShape {
    pub max_nodes: usize,
    pub max_alphabet: usize,
    pub max_private_signals: usize,
}

impl Default for NetworkShape {
    fn default() -> Self {
        NetworkShape {
            max_nodes: 5,
            max_alphabet: 6,
            max_private_signals: 2,
        }
    }
}

/// A random DAG network over a shared signal `B` and optional private
/// signals `Z1, Z2, ..`. Node `i` reads one or two inputs drawn from the
/// signals and earlier nodes; the last node is terminal with `n_actions`
/// outputs.
pub fn network<R: Rng + ?Sized>(rng: &mut R, shape: NetworkShape, n_actions: usize) -> DelegatedNetwork {
    let alpha = |rng: &mut R| rng.random_range(2..=shape.max_alphabet.max(2));
    let n_labels = alpha(rng);
    let mut exo = JointModel::new("Y", distribution(rng, n_labels));
    let mut signals: Vec<(String, usize)> = Vec::new();
    let nb = alpha(rng);
    let sparse = rng.random_bool(0.3);
    exo.add_variable("B", &["Y"], kernel(rng, n_labels, nb, sparse))
        .expect("fresh signal");
    signals.push(("B".into(), nb));
    let n_private = rng.random_range(0..=shape.max_private_signals);
    for z in 0..n_private {
        let nz = rng.random_range(2..=3);
        let name = format!("Z{}", z + 1);
        exo.add_variable(name.clone(), &["Y"], kernel(rng, n_labels, nz, false))
            .expect("fresh signal");
        signals.push((name, nz));
    }

    let n_nodes = rng.random_range(1..=shape.max_nodes.max(1));
    let mut outputs: Vec<(String, usize)> = Vec::new();
    let mut nodes = Vec::with_capacity(n_nodes);
    for i in 0..n_nodes {
        let terminal = i + 1 == n_nodes;
        let n_out = if terminal { n_actions } else { alpha(rng) };
        let n_inputs = rng.random_range(1..=2);
        let mut inputs = Vec::new();
        let mut rows = 1;
        for _ in 0..n_inputs {
            let pool = signals.len() + outputs.len();
            // the terminal always reads the previous node when one exists
            let pick = if terminal && inputs.is_empty() && !outputs.is_empty() {
                pool - 1
            } else {
                rng.random_range(0..pool)
            };
            let (src, card) = if pick < signals.len() {
                (Source::exo(signals[pick].0.clone()), signals[pick].1)
            } else {
                let (id, c) = &outputs[pick - signals.len()];
                (Source::node(id.clone()), *c)
            };
            if inputs.contains(&src) {
                continue;
            }
            inputs.push(src);
            rows *= card;
        }
        let sparse = rng.random_bool(0.3);
        let rule = kernel(rng, rows, n_out, sparse);
        let id = format!("n{i}");
        nodes.push(if terminal {
            NetworkNode::terminal(id.clone(), inputs, rule)
        } else {
            NetworkNode::new(id.clone(), inputs, rule)
        });
        outputs.push((id, n_out));
    }
    DelegatedNetwork::new(exo, nodes).expect("generated network is well formed")
}
