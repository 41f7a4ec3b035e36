//! Budgeted encoders and the communication tax.
//!
//! An encoder maps the shared signal `B` to a message `M` with at most `k`
//! symbols. The Bayes value of `M` is, message by message, a minimum of linear
//! functionals of the encoder's column, so it is concave in the encoder and
//! its minimum over the encoder polytope sits at a vertex: a deterministic
//! encoder, i.e. a partition of `B`'s alphabet into at most `k` blocks.
//! [`optimal_encoder`] searches those partitions exhaustively.
//!
//! Under a proper scoring rule the loss from passing `H` through a channel is
//! the expected divergence between the posteriors before and after; for log
//! loss this is `I(Y; H | M)`, computed here from the joint table as an
//! independent check.

use crate::decision::{
    bayes_risk, conditional_mutual_information, scoring_value, InformationState, LossMatrix, ScoringRule,
};
use crate::error::{input, Error, Result};
use crate::partition::{self, Partitions};
use crate::prob::{Distribution, FiniteSpace, JointTable, Kernel, Limits, Variable};

/// Upper bound on the message alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetSpec {
    k: usize,
}

impl BudgetSpec {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return input("budget must allow at least one message");
        }
        Ok(BudgetSpec { k })
    }

    pub fn k(self) -> usize {
        self.k
    }

    /// `ln k`; presentation only.
    pub fn capacity_nats(self) -> f64 {
        (self.k as f64).ln()
    }
}

/// A channel from the signal alphabet to a message alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoder {
    kernel: Kernel,
    deterministic: bool,
}

impl Encoder {
    pub fn new(kernel: Kernel) -> Self {
        let deterministic = kernel.is_deterministic();
        Encoder { kernel, deterministic }
    }

    /// Deterministic encoder sending symbol `b` to message `rgs[b]`.
    pub fn from_partition(rgs: &[usize]) -> Self {
        let n_out = partition::block_count(rgs);
        Encoder {
            kernel: Kernel::deterministic(rgs, n_out).expect("block labels are in range"),
            deterministic: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Kernel::identity(n))
    }

    /// Sends every symbol to one message.
    pub fn merge_all(n: usize) -> Self {
        Self::from_partition(&vec![0; n])
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn messages(&self) -> usize {
        self.kernel.n_out()
    }

    pub fn fits(&self, budget: BudgetSpec) -> bool {
        self.messages() <= budget.k
    }

    /// Block labels when the encoder is deterministic.
    pub fn partition(&self) -> Option<Vec<usize>> {
        if !self.deterministic {
            return None;
        }
        Some(
            self.kernel
                .rows()
                .map(|r| r.iter().position(|&p| p == 1.0).unwrap())
                .collect(),
        )
    }
}

/// What the downstream decision stage optimises.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Loss(LossMatrix),
    Score(ScoringRule),
}

impl Objective {
    pub fn value(&self, state: &InformationState) -> Result<f64> {
        match self {
            Objective::Loss(l) => Ok(bayes_risk(state, l)?.value),
            Objective::Score(r) => Ok(scoring_value(state, *r)),
        }
    }

    /// Contribution of one message whose unnormalised label weights are `joint_row`.
    fn message_value(&self, joint_row: &[f64], scratch: &mut [f64]) -> f64 {
        match self {
            Objective::Loss(l) => l.bayes_act(joint_row).1,
            Objective::Score(r) => {
                let mass: f64 = joint_row.iter().sum();
                if mass <= 0.0 {
                    return 0.0;
                }
                for (s, &p) in scratch.iter_mut().zip(joint_row) {
                    *s = p / mass;
                }
                mass * r.expected_score(scratch, scratch)
            }
        }
    }
}

/// The state of the message `M ~ channel(· | H)`.
pub fn apply_channel(state: &InformationState, channel: &Kernel) -> Result<InformationState> {
    if channel.n_in() != state.len() {
        return input(format!(
            "channel has {} inputs but the state has {} symbols",
            channel.n_in(),
            state.len()
        ));
    }
    let (nm, ny) = (channel.n_out(), state.n_labels());
    let mut weights = vec![0.0; nm];
    let mut rows = vec![vec![0.0; ny]; nm];
    for h in 0..state.len() {
        let w = state.weight(h);
        if w == 0.0 {
            continue;
        }
        for m in 0..nm {
            let q = w * channel.get(h, m);
            if q == 0.0 {
                continue;
            }
            weights[m] += q;
            for (r, p) in rows[m].iter_mut().zip(state.posterior(h).probs()) {
                *r += q * p;
            }
        }
    }
    let marginal = state.label_marginal();
    let posteriors = rows
        .into_iter()
        .zip(&weights)
        .map(|(row, &w)| {
            if w > 0.0 {
                Distribution::from_parts_unchecked(
                    state.label_space().clone(),
                    row.into_iter().map(|p| p / w).collect(),
                )
            } else {
                marginal.clone()
            }
        })
        .collect();
    Ok(InformationState::from_parts_unchecked(
        format!("{}>M", state.name()),
        channel.to_space().clone(),
        state.label_space().clone(),
        weights,
        posteriors,
    ))
}

/// [`apply_channel`] for an encoder.
pub fn apply_encoder(state: &InformationState, encoder: &Encoder) -> Result<InformationState> {
    apply_channel(state, encoder.kernel())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderSolution {
    pub encoder: Encoder,
    pub value: f64,
    /// Canonical restricted growth string of the encoder.
    pub partition: Vec<usize>,
    /// False for the greedy fallback.
    pub exact: bool,
}

impl EncoderSolution {
    pub fn partition_label(&self) -> String {
        partition::format_partition(&self.partition)
    }
}

fn joint_rows(state: &InformationState) -> Vec<Vec<f64>> {
    (0..state.len())
        .map(|h| (0..state.n_labels()).map(|y| state.joint(h, y)).collect())
        .collect()
}

fn partition_value(rows: &[Vec<f64>], rgs: &[usize], objective: &Objective, acc: &mut [Vec<f64>], scratch: &mut [f64]) -> f64 {
    let used = partition::block_count(rgs);
    for a in acc.iter_mut().take(used) {
        a.iter_mut().for_each(|v| *v = 0.0);
    }
    for (b, &blk) in rgs.iter().enumerate() {
        for (a, r) in acc[blk].iter_mut().zip(&rows[b]) {
            *a += r;
        }
    }
    acc[..used].iter().map(|a| objective.message_value(a, scratch)).sum()
}

pub fn optimal_encoder(state: &InformationState, budget: BudgetSpec, objective: &Objective) -> Result<EncoderSolution> {
    optimal_encoder_with(state, budget, objective, &Limits::default())
}

/// Exact minimum of the downstream value over deterministic encoders with at
/// most `k` messages. Ties go to the first partition in lexicographic order.
pub fn optimal_encoder_with(
    state: &InformationState,
    budget: BudgetSpec,
    objective: &Objective,
    limits: &Limits,
) -> Result<EncoderSolution> {
    check_objective(state, objective)?;
    let n = state.len();
    if budget.k >= n {
        // no compression needed: V(B) bounds every encoder from below
        let rgs: Vec<usize> = (0..n).collect();
        return Ok(EncoderSolution {
            encoder: Encoder::identity(n),
            value: objective.value(state)?,
            partition: rgs,
            exact: true,
        });
    }
    if n > limits.partition_cap {
        return Err(Error::EnumerationLimit {
            what: "searching partitions of the signal alphabet (greedy_encoder is the non-exact fallback)".into(),
            size: n as u128,
            cap: limits.partition_cap as u128,
        });
    }
    let rows = joint_rows(state);
    let mut acc = vec![vec![0.0; state.n_labels()]; budget.k];
    let mut scratch = vec![0.0; state.n_labels()];
    let mut best: Option<(f64, Vec<usize>)> = None;
    for rgs in Partitions::new(n, budget.k) {
        let v = partition_value(&rows, &rgs, objective, &mut acc, &mut scratch);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, rgs));
        }
    }
    let (value, rgs) = best.expect("at least one partition");
    Ok(EncoderSolution {
        encoder: Encoder::from_partition(&rgs),
        value,
        partition: rgs,
        exact: true,
    })
}

/// Repeatedly merges the two blocks whose union raises the value least
/// until at most `k` remain. Not guaranteed optimal.
pub fn greedy_encoder(state: &InformationState, budget: BudgetSpec, objective: &Objective) -> Result<EncoderSolution> {
    check_objective(state, objective)?;
    let rows = joint_rows(state);
    let mut scratch = vec![0.0; state.n_labels()];
    let mut groups: Vec<(Vec<usize>, Vec<f64>)> = rows.iter().enumerate().map(|(b, r)| (vec![b], r.clone())).collect();
    while groups.len() > budget.k {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let merged: Vec<f64> = groups[i].1.iter().zip(&groups[j].1).map(|(a, b)| a + b).collect();
                let delta = objective.message_value(&merged, &mut scratch)
                    - objective.message_value(&groups[i].1, &mut scratch)
                    - objective.message_value(&groups[j].1, &mut scratch);
                if best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, i, j));
                }
            }
        }
        let (_, i, j) = best.expect("more than one group");
        let (members, row) = groups.remove(j);
        groups[i].0.extend(members);
        for (a, b) in groups[i].1.iter_mut().zip(row) {
            *a += b;
        }
    }
    let mut labels = vec![0usize; state.len()];
    for (g, (members, _)) in groups.iter().enumerate() {
        for &b in members {
            labels[b] = g;
        }
    }
    let rgs = canonical(&labels);
    let value = groups.iter().map(|(_, r)| objective.message_value(r, &mut scratch)).sum();
    Ok(EncoderSolution {
        encoder: Encoder::from_partition(&rgs),
        value,
        partition: rgs,
        exact: false,
    })
}

/// Renumbers block labels by first appearance.
fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(p) => p,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

fn check_objective(state: &InformationState, objective: &Objective) -> Result<()> {
    if let Objective::Loss(l) = objective {
        if l.n_labels() != state.n_labels() {
            return input("loss labels do not match the state's labels");
        }
    }
    if state.is_empty() {
        return input("state has no symbols");
    }
    Ok(())
}

/// Joint table over (`Y`, `H`, `M`) for a state and a channel.
pub fn channel_joint(state: &InformationState, channel: &Kernel) -> Result<JointTable> {
    if channel.n_in() != state.len() {
        return input("channel inputs do not match the state");
    }
    let (ny, nh, nm) = (state.n_labels(), state.len(), channel.n_out());
    let mut probs = vec![0.0; ny * nh * nm];
    for y in 0..ny {
        for h in 0..nh {
            let p = state.joint(h, y);
            for m in 0..nm {
                probs[(y * nh + h) * nm + m] = p * channel.get(h, m);
            }
        }
    }
    let vars = vec![
        Variable { name: "Y".into(), space: state.label_space().clone() },
        Variable { name: "H".into(), space: state.alphabet().clone() },
        Variable { name: "M".into(), space: FiniteSpace::indexed("M", nm) },
    ];
    Ok(JointTable::from_parts_unchecked(vars, probs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaxReport {
    pub rule: ScoringRule,
    pub v_h: f64,
    pub v_m: f64,
    /// `v_m - v_h`.
    pub gap: f64,
    /// `E[D_s(π_H, π_M)]`.
    pub expected_divergence: f64,
    /// `I(Y; H | M)` from the joint table; log rule only.
    pub conditional_mi: Option<f64>,
}

/// Scoring-rule value lost by acting on `M` instead of `H`.
pub fn communication_tax(state: &InformationState, channel: &Kernel, rule: ScoringRule) -> Result<TaxReport> {
    let m_state = apply_channel(state, channel)?;
    let v_h = scoring_value(state, rule);
    let v_m = scoring_value(&m_state, rule);
    let mut expected_divergence = 0.0;
    for h in 0..state.len() {
        for m in 0..channel.n_out() {
            let w = state.weight(h) * channel.get(h, m);
            if w > 0.0 {
                expected_divergence +=
                    w * rule.divergence_raw(state.posterior(h).probs(), m_state.posterior(m).probs());
            }
        }
    }
    let conditional_mi = match rule {
        ScoringRule::Log => {
            let joint = channel_joint(state, channel)?;
            Some(conditional_mutual_information(&joint, &["Y"], &["H"], &["M"])?)
        }
        ScoringRule::Brier => None,
    };
    Ok(TaxReport {
        rule,
        v_h,
        v_m,
        gap: v_m - v_h,
        expected_divergence,
        conditional_mi,
    })
}

/// A serial chain `M₀ → M₁ → … → M_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    initial: InformationState,
    hops: Vec<Kernel>,
}

impl ChainSpec {
    pub fn new(initial: InformationState, hops: Vec<Kernel>) -> Result<Self> {
        let mut width = initial.len();
        for (i, h) in hops.iter().enumerate() {
            if h.n_in() != width {
                return input(format!("hop {} expects {} inputs, previous stage has {width}", i + 1, h.n_in()));
            }
            width = h.n_out();
        }
        Ok(ChainSpec { initial, hops })
    }

    pub fn initial(&self) -> &InformationState {
        &self.initial
    }

    pub fn hops(&self) -> &[Kernel] {
        &self.hops
    }

    /// `[M₀, M₁, …, M_L]`.
    pub fn states(&self) -> Result<Vec<InformationState>> {
        let mut out = vec![self.initial.clone()];
        for h in &self.hops {
            let next = apply_channel(out.last().unwrap(), h)?;
            out.push(next);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    /// `I(Y; M_{k-1} | M_k)` for `k = 1..=L`.
    pub terms: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub total: f64,
    /// `V(M_L; log) - V(M₀; log)`.
    pub end_to_end: f64,
}

/// Per-hop log-loss terms of a serial chain.
pub fn chain_decomposition(chain: &ChainSpec) -> Result<ChainReport> {
    let states = chain.states()?;
    let mut terms = Vec::with_capacity(chain.hops.len());
    let mut cumulative = Vec::with_capacity(chain.hops.len());
    let mut total = 0.0;
    for (k, hop) in chain.hops.iter().enumerate() {
        let joint = channel_joint(&states[k], hop)?;
        let term = conditional_mutual_information(&joint, &["Y"], &["H"], &["M"])?;
        total += term;
        terms.push(term);
        cumulative.push(total);
    }
    let end_to_end =
        scoring_value(states.last().unwrap(), ScoringRule::Log) - scoring_value(&states[0], ScoringRule::Log);
    Ok(ChainReport {
        terms,
        cumulative,
        total,
        end_to_end,
    })
}
