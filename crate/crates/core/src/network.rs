//! Delegated DAG networks evaluated by exact enumeration.
//!
//! Each node reads an ordered tuple of exogenous signals and upstream node
//! outputs and emits a symbol through a stochastic rule (a [`Kernel`] on the
//! row-major product of its input alphabets). Nodes never see the label, so
//! all randomisation is conditionally independent of it given the exogenous
//! signals. The single terminal node's output is the network action.
//!
//! Evaluation keeps a dense factor over (exogenous cell, live node outputs),
//! multiplies in one node at a time in topological order and sums out node
//! outputs as soon as no later node reads them. A node output observed by
//! several downstream nodes is the same random variable for all of them.

use std::collections::HashMap;

use crate::decision::{bayes_risk, InformationState, LossMatrix};
use crate::error::{input, Error, Result};
use crate::prob::{advance, Distribution, FiniteSpace, JointModel, JointTable, Kernel, Limits, Variable};

/// Where a node input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// An exogenous signal of the network's [`JointModel`].
    Exogenous(String),
    /// The output of another node.
    Node(String),
}

impl Source {
    pub fn exo(name: impl Into<String>) -> Self {
        Source::Exogenous(name.into())
    }

    pub fn node(id: impl Into<String>) -> Self {
        Source::Node(id.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkNode {
    pub id: String,
    pub inputs: Vec<Source>,
    pub rule: Kernel,
    pub terminal: bool,
}

impl NetworkNode {
    pub fn new(id: impl Into<String>, inputs: Vec<Source>, rule: Kernel) -> Self {
        NetworkNode {
            id: id.into(),
            inputs,
            rule,
            terminal: false,
        }
    }

    pub fn terminal(id: impl Into<String>, inputs: Vec<Source>, rule: Kernel) -> Self {
        NetworkNode {
            terminal: true,
            ..Self::new(id, inputs, rule)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Exo(usize),
    Node(usize),
}

/// A validated delegated network; nodes are stored in topological order.
#[derive(Debug, Clone, PartialEq)]
pub struct DelegatedNetwork {
    exogenous: JointModel,
    nodes: Vec<NetworkNode>,
    slots: Vec<Vec<Slot>>,
    terminal: usize,
}

impl DelegatedNetwork {
    pub fn new(exogenous: JointModel, nodes: Vec<NetworkNode>) -> Result<Self> {
        let exo_vars: Vec<Variable> = exogenous.variables().into_iter().cloned().collect();
        let label = exogenous.label().name.clone();
        let exo_pos = |name: &str| exo_vars.iter().position(|v| v.name == name);

        let mut ids: HashMap<String, usize> = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if exo_pos(&n.id).is_some() || ids.insert(n.id.clone(), i).is_some() {
                return Err(Error::Graph(format!("duplicate node id {:?}", n.id)));
            }
        }
        let terminals: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].terminal).collect();
        if terminals.len() != 1 {
            return Err(Error::Graph(format!(
                "network needs exactly one terminal node, found {}",
                terminals.len()
            )));
        }

        // Kahn's algorithm, ties broken by declaration order.
        let mut indegree = vec![0usize; nodes.len()];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            for s in &n.inputs {
                match s {
                    Source::Exogenous(name) => {
                        if *name == label {
                            return Err(Error::Graph(format!(
                                "node {:?} reads the label {name:?} directly",
                                n.id
                            )));
                        }
                        if exo_pos(name).is_none() {
                            return Err(Error::Graph(format!(
                                "node {:?} reads unknown exogenous signal {name:?}",
                                n.id
                            )));
                        }
                    }
                    Source::Node(src) => {
                        let j = *ids.get(src.as_str()).ok_or_else(|| {
                            Error::Graph(format!("node {:?} reads unknown node {src:?}", n.id))
                        })?;
                        indegree[i] += 1;
                        children[j].push(i);
                    }
                }
            }
        }
        let mut order = Vec::with_capacity(nodes.len());
        let mut ready: Vec<usize> = (0..nodes.len()).filter(|&i| indegree[i] == 0).collect();
        while let Some(&next) = ready.iter().min() {
            ready.retain(|&i| i != next);
            order.push(next);
            for &c in &children[next] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(c);
                }
            }
        }
        if order.len() != nodes.len() {
            return Err(Error::Graph("node graph contains a cycle".into()));
        }

        let mut position = vec![0usize; nodes.len()];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        let mut sorted: Vec<Option<NetworkNode>> = nodes.into_iter().map(Some).collect();
        let nodes: Vec<NetworkNode> = order.iter().map(|&i| sorted[i].take().unwrap()).collect();
        let mut slots = Vec::with_capacity(nodes.len());
        for n in &nodes {
            let mut s = Vec::with_capacity(n.inputs.len());
            let mut rows = 1usize;
            for src in &n.inputs {
                let slot = match src {
                    Source::Exogenous(name) => {
                        let k = exo_pos(name).unwrap();
                        rows *= exo_vars[k].space.len();
                        Slot::Exo(k)
                    }
                    Source::Node(id) => {
                        let k = position[ids[id.as_str()]];
                        rows *= nodes[k].rule.n_out();
                        Slot::Node(k)
                    }
                };
                s.push(slot);
            }
            if n.rule.n_in() != rows {
                return input(format!(
                    "rule of node {:?} has {} rows but its inputs have {rows} joint values",
                    n.id,
                    n.rule.n_in()
                ));
            }
            slots.push(s);
        }
        let terminal = nodes.iter().position(|n| n.terminal).unwrap();
        Ok(DelegatedNetwork {
            exogenous,
            nodes,
            slots,
            terminal,
        })
    }

    pub fn exogenous(&self) -> &JointModel {
        &self.exogenous
    }

    /// Nodes in evaluation order.
    pub fn nodes(&self) -> &[NetworkNode] {
        &self.nodes
    }

    pub fn terminal_node(&self) -> &NetworkNode {
        &self.nodes[self.terminal]
    }

    /// Directed `(source, target)` node pairs.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for n in &self.nodes {
            for s in &n.inputs {
                if let Source::Node(src) = s {
                    out.push((src.clone(), n.id.clone()));
                }
            }
        }
        out
    }

    /// Names of the exogenous signals (every exogenous variable but the label).
    pub fn signal_names(&self) -> Vec<String> {
        self.exogenous
            .variables()
            .into_iter()
            .skip(1)
            .map(|v| v.name.clone())
            .collect()
    }

    pub fn terminal_joint(&self) -> Result<JointTable> {
        self.terminal_joint_with(&Limits::default())
    }

    /// Joint law of (label, exogenous signals, terminal action), the action
    /// being named after the terminal node.
    pub fn terminal_joint_with(&self, limits: &Limits) -> Result<JointTable> {
        let exo = self.exogenous.full_joint_with(limits)?;
        let exo_dims = exo.dims();
        let n_cells = exo.probs().len();
        let exo_assign: Vec<Vec<usize>> = exo.cells().map(|(a, _)| a).collect();

        let last_use: Vec<usize> = (0..self.nodes.len())
            .map(|k| {
                if k == self.terminal {
                    return usize::MAX;
                }
                (k + 1..self.nodes.len())
                    .filter(|&j| self.slots[j].contains(&Slot::Node(k)))
                    .max()
                    .unwrap_or(k)
            })
            .collect();

        // factor over [exo cell, live nodes in `live` order]
        let mut live: Vec<usize> = Vec::new();
        let mut factor: Vec<f64> = exo.probs().to_vec();

        for (k, node) in self.nodes.iter().enumerate() {
            let n_out = node.rule.n_out();
            let dims: Vec<usize> = std::iter::once(n_cells)
                .chain(live.iter().map(|&l| self.nodes[l].rule.n_out()))
                .collect();
            let new_size = factor.len() as u128 * n_out as u128;
            limits.check("evaluating the delegated network", new_size)?;

            let mut next = vec![0.0; factor.len() * n_out];
            let mut idx = vec![0usize; dims.len()];
            for (flat, &p) in factor.iter().enumerate() {
                if p != 0.0 {
                    let mut row = 0;
                    for slot in &self.slots[k] {
                        let (value, card) = match *slot {
                            Slot::Exo(v) => (exo_assign[idx[0]][v], exo_dims[v]),
                            Slot::Node(n) => {
                                let pos = live.iter().position(|&l| l == n).unwrap();
                                (idx[pos + 1], self.nodes[n].rule.n_out())
                            }
                        };
                        row = row * card + value;
                    }
                    for (o, &q) in node.rule.row(row).iter().enumerate() {
                        next[flat * n_out + o] = p * q;
                    }
                }
                advance(&mut idx, &dims);
            }
            live.push(k);
            factor = next;

            // sum out outputs nobody reads any more
            let keep: Vec<bool> = live.iter().map(|&l| last_use[l] > k).collect();
            if keep.iter().any(|&x| !x) {
                let dims: Vec<usize> = std::iter::once(n_cells)
                    .chain(live.iter().map(|&l| self.nodes[l].rule.n_out()))
                    .collect();
                let kept: Vec<usize> = live
                    .iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(&l, _)| l)
                    .collect();
                let size: usize = n_cells * kept.iter().map(|&l| self.nodes[l].rule.n_out()).product::<usize>();
                let mut reduced = vec![0.0; size];
                let mut idx = vec![0usize; dims.len()];
                for &p in &factor {
                    let mut out = idx[0];
                    for (pos, &l) in live.iter().enumerate() {
                        if keep[pos] {
                            out = out * self.nodes[l].rule.n_out() + idx[pos + 1];
                        }
                    }
                    reduced[out] += p;
                    advance(&mut idx, &dims);
                }
                live = kept;
                factor = reduced;
            }
        }
        debug_assert_eq!(live, vec![self.terminal]);

        let mut vars: Vec<Variable> = exo.variables().to_vec();
        let term = self.terminal_node();
        vars.push(Variable {
            name: term.id.clone(),
            space: term.rule.to_space().clone(),
        });
        Ok(JointTable::from_parts_unchecked(vars, factor))
    }

    /// Information state of the terminal node's input tuple about the label.
    pub fn terminal_input_state(&self, limits: &Limits) -> Result<InformationState> {
        let term = self.terminal_node();
        let n = term.rule.n_in();
        let mut nodes = self.nodes.clone();
        nodes[self.terminal].rule = Kernel::identity(n);
        let probe = DelegatedNetwork::new(self.exogenous.clone(), nodes)?;
        let joint = probe.terminal_joint_with(limits)?;
        InformationState::from_joint(&joint, &self.exogenous.label().name, &[&term.id])
    }

    /// The same network with the terminal rule replaced by the Bayes policy on
    /// its inputs.
    pub fn with_bayes_terminal(&self, loss: &LossMatrix, limits: &Limits) -> Result<DelegatedNetwork> {
        let state = self.terminal_input_state(limits)?;
        let policy = bayes_risk(&state, loss)?.policy;
        let rule = Kernel::deterministic(&policy, loss.n_actions())?
            .relabel(self.terminal_node().rule.from_space().clone(), loss.actions().clone())?;
        let mut nodes = self.nodes.clone();
        nodes[self.terminal].rule = rule;
        DelegatedNetwork::new(self.exogenous.clone(), nodes)
    }
}

/// `E[ℓ(A, Y)]` under the network's terminal action.
pub fn network_loss(net: &DelegatedNetwork, loss: &LossMatrix) -> Result<f64> {
    network_loss_with(net, loss, &Limits::default())
}

pub fn network_loss_with(net: &DelegatedNetwork, loss: &LossMatrix, limits: &Limits) -> Result<f64> {
    check_loss(net, loss)?;
    let joint = net.terminal_joint_with(limits)?;
    Ok(loss_from_joint(net, &joint, loss))
}

fn check_loss(net: &DelegatedNetwork, loss: &LossMatrix) -> Result<()> {
    let n_actions = net.terminal_node().rule.n_out();
    let n_labels = net.exogenous().prior().len();
    if loss.n_actions() != n_actions || loss.n_labels() != n_labels {
        return input(format!(
            "loss is {}x{} but the network has {n_actions} actions and {n_labels} labels",
            loss.n_actions(),
            loss.n_labels()
        ));
    }
    Ok(())
}

fn loss_from_joint(net: &DelegatedNetwork, joint: &JointTable, loss: &LossMatrix) -> f64 {
    let ya = joint
        .marginal(&[&net.exogenous().label().name, &net.terminal_node().id])
        .expect("label and terminal are in the terminal joint");
    let n_a = loss.n_actions();
    ya.probs()
        .iter()
        .enumerate()
        .map(|(i, p)| p * loss.get(i % n_a, i / n_a))
        .sum()
}

/// State of the full exogenous evidence about the label; with no signals this
/// is the single-symbol prior state.
pub fn exogenous_state(model: &JointModel, limits: &Limits) -> Result<InformationState> {
    let joint = model.full_joint_with(limits)?;
    let label = model.label().name.clone();
    let signals: Vec<String> = model.variables().into_iter().skip(1).map(|v| v.name.clone()).collect();
    if signals.is_empty() {
        let prior: Distribution = model.prior().clone();
        return InformationState::new("prior", FiniteSpace::indexed("prior", 1), vec![1.0], vec![prior]);
    }
    let names: Vec<&str> = signals.iter().map(String::as_str).collect();
    InformationState::from_joint(&joint, &label, &names)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseGap {
    pub network_loss: f64,
    pub centralized_value: f64,
    pub gap: f64,
}

/// Network loss against the Bayes risk of a decision maker who sees all
/// exogenous signals at once.
pub fn collapse_gap(net: &DelegatedNetwork, loss: &LossMatrix) -> Result<CollapseGap> {
    collapse_gap_with(net, loss, &Limits::default())
}

pub fn collapse_gap_with(net: &DelegatedNetwork, loss: &LossMatrix, limits: &Limits) -> Result<CollapseGap> {
    let network_loss = network_loss_with(net, loss, limits)?;
    let state = exogenous_state(net.exogenous(), limits)?;
    let centralized_value = bayes_risk(&state, loss)?.value;
    Ok(CollapseGap {
        network_loss,
        centralized_value,
        gap: network_loss - centralized_value,
    })
}
