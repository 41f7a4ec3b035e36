//! Loss matrices, proper scoring rules and Bayes risk.
//!
//! The Bayes risk of an information state `H` under a loss `ℓ` is computed
//! through the Bayes envelope: for every symbol `h` pick the action that
//! minimises posterior expected loss, then average over `P(H = h)`. Logs are
//! natural everywhere; callers convert to bits for display.

use crate::error::{input, Error, Result};
use crate::prob::{Distribution, FiniteSpace, JointTable, Kernel, STRUCTURAL_TOL};

/// A bounded nonnegative loss `ℓ(a, y)`, stored action-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LossMatrix {
    actions: FiniteSpace,
    labels: FiniteSpace,
    values: Vec<f64>,
}

impl LossMatrix {
    pub fn with_spaces(actions: FiniteSpace, labels: FiniteSpace, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != actions.len() {
            return input(format!(
                "loss has {} rows but {} actions",
                rows.len(),
                actions.len()
            ));
        }
        let mut values = Vec::with_capacity(actions.len() * labels.len());
        for (a, row) in rows.iter().enumerate() {
            if row.len() != labels.len() {
                return input(format!(
                    "loss row {a} has {} entries, expected {}",
                    row.len(),
                    labels.len()
                ));
            }
            for &v in row {
                if !v.is_finite() || v < 0.0 {
                    return input(format!("loss entry {v} in row {a} is not finite and nonnegative"));
                }
            }
            values.extend_from_slice(row);
        }
        Ok(LossMatrix {
            actions,
            labels,
            values,
        })
    }

    /// Rows are actions, columns are labels.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_a = rows.len();
        let n_y = rows.first().map_or(0, Vec::len);
        if n_a == 0 || n_y == 0 {
            return input("loss matrix needs at least one action and one label");
        }
        Self::with_spaces(
            FiniteSpace::indexed("A", n_a),
            FiniteSpace::indexed("Y", n_y),
            rows,
        )
    }

    /// Classification loss: action `a` guesses label `a`.
    pub fn zero_one(n: usize) -> Self {
        let rows = (0..n)
            .map(|a| (0..n).map(|y| if a == y { 0.0 } else { 1.0 }).collect())
            .collect();
        Self::new(rows).expect("zero-one loss is valid")
    }

    pub fn actions(&self) -> &FiniteSpace {
        &self.actions
    }

    pub fn labels(&self) -> &FiniteSpace {
        &self.labels
    }

    pub fn n_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, action: usize, label: usize) -> f64 {
        self.values[action * self.n_labels() + label]
    }

    pub fn row(&self, action: usize) -> &[f64] {
        let n = self.n_labels();
        &self.values[action * n..(action + 1) * n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.n_labels()).map(<[f64]>::to_vec).collect()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Expected loss of `action` under label weights (not necessarily normalized).
    pub fn expected(&self, action: usize, weights: &[f64]) -> f64 {
        self.row(action).iter().zip(weights).map(|(l, w)| l * w).sum()
    }

    /// Minimising action under label weights, lowest index on ties.
    pub fn bayes_act(&self, weights: &[f64]) -> (usize, f64) {
        let mut best = (0, self.expected(0, weights));
        for a in 1..self.n_actions() {
            let v = self.expected(a, weights);
            if v < best.1 {
                best = (a, v);
            }
        }
        best
    }
}

/// A strictly proper scoring rule over reports in the label simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoringRule {
    /// `-ln q(y)`, `+∞` when `q(y) = 0`.
    Log,
    /// `Σ_y' (q(y') - 1{y' = y})²`.
    Brier,
}

impl ScoringRule {
    pub fn name(self) -> &'static str {
        match self {
            ScoringRule::Log => "log",
            ScoringRule::Brier => "brier",
        }
    }

    /// Score of report `q` when the label is `y`.
    pub fn score(self, q: &[f64], y: usize) -> f64 {
        match self {
            ScoringRule::Log => {
                if q[y] <= 0.0 {
                    f64::INFINITY
                } else {
                    -q[y].ln()
                }
            }
            ScoringRule::Brier => q
                .iter()
                .enumerate()
                .map(|(i, &qi)| {
                    let t = if i == y { 1.0 } else { 0.0 };
                    (qi - t) * (qi - t)
                })
                .sum(),
        }
    }

    /// Expected score of report `q` when labels follow `p`; zero-probability
    /// labels contribute nothing even if their score is infinite.
    pub fn expected_score(self, p: &[f64], q: &[f64]) -> f64 {
        p.iter()
            .enumerate()
            .filter(|(_, &py)| py > 0.0)
            .map(|(y, &py)| py * self.score(q, y))
            .sum()
    }

    /// Pointwise divergence on raw vectors; see [`divergence`].
    pub fn divergence_raw(self, p: &[f64], q: &[f64]) -> f64 {
        match self {
            ScoringRule::Log => {
                let mut kl = 0.0;
                for (&pi, &qi) in p.iter().zip(q) {
                    if pi > 0.0 {
                        if qi <= 0.0 {
                            return f64::INFINITY;
                        }
                        kl += pi * (pi / qi).ln();
                    }
                }
                kl.max(0.0)
            }
            ScoringRule::Brier => p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum(),
        }
    }
}

impl std::str::FromStr for ScoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(ScoringRule::Log),
            "brier" => Ok(ScoringRule::Brier),
            other => input(format!("unknown scoring rule {other:?} (expected log or brier)")),
        }
    }
}

/// `D_s(p, q) = Σ_y p(y)(s(q, y) - s(p, y))`: KL(p‖q) for log, ‖p - q‖² for
/// Brier. Log divergence is `f64::INFINITY` when `q` does not dominate `p`.
pub fn divergence(rule: ScoringRule, p: &Distribution, q: &Distribution) -> Result<f64> {
    if p.len() != q.len() {
        return input("divergence between distributions on different spaces");
    }
    Ok(rule.divergence_raw(p.probs(), q.probs()))
}

/// A finite information state `H`: the law of each symbol and the label
/// posterior it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationState {
    name: String,
    alphabet: FiniteSpace,
    labels: FiniteSpace,
    weights: Vec<f64>,
    posteriors: Vec<Distribution>,
}

impl InformationState {
    pub fn new(
        name: impl Into<String>,
        alphabet: FiniteSpace,
        weights: Vec<f64>,
        posteriors: Vec<Distribution>,
    ) -> Result<Self> {
        if weights.len() != alphabet.len() || posteriors.len() != alphabet.len() {
            return input("information state: weights and posteriors must match the alphabet");
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || (total - 1.0).abs() > STRUCTURAL_TOL {
            return input(format!("information state weights sum to {total:.17}, not 1"));
        }
        let labels = posteriors[0].space().clone();
        if posteriors.iter().any(|p| p.len() != labels.len()) {
            return input("information state posteriors live on different label spaces");
        }
        Ok(InformationState {
            name: name.into(),
            alphabet,
            labels,
            weights,
            posteriors,
        })
    }

    /// The state induced by observing `kernel(Y)` when `Y ~ prior`.
    /// Zero-probability symbols keep the prior as their posterior.
    pub fn from_experiment(name: impl Into<String>, prior: &Distribution, kernel: &Kernel) -> Result<Self> {
        if kernel.n_in() != prior.len() {
            return input("experiment kernel rows must match the prior");
        }
        let n = kernel.n_out();
        let mut weights = vec![0.0; n];
        let mut joint = vec![vec![0.0; prior.len()]; n];
        for (y, &py) in prior.probs().iter().enumerate() {
            for h in 0..n {
                let p = py * kernel.get(y, h);
                joint[h][y] = p;
                weights[h] += p;
            }
        }
        Ok(Self::from_weighted_rows(name.into(), kernel.to_space().clone(), prior, weights, joint))
    }

    /// The state of `given` about `target` read off a joint table.
    pub fn from_joint(joint: &JointTable, target: &str, given: &[&str]) -> Result<Self> {
        if given.is_empty() {
            return input("information state needs at least one observed variable");
        }
        let mut names = vec![target];
        names.extend_from_slice(given);
        let sub = joint.marginal(&names)?;
        let label_space = sub.variables()[0].space.clone();
        let parts: Vec<&FiniteSpace> = sub.variables()[1..].iter().map(|v| &v.space).collect();
        let alphabet = FiniteSpace::product(given.join(","), &parts);
        let ny = label_space.len();
        let nh = alphabet.len();
        let mut rows = vec![vec![0.0; ny]; nh];
        let mut weights = vec![0.0; nh];
        for (i, &p) in sub.probs().iter().enumerate() {
            let (y, h) = (i / nh, i % nh);
            rows[h][y] += p;
            weights[h] += p;
        }
        let prior = joint.marginal(&[target])?;
        let prior = Distribution::from_parts_unchecked(label_space, prior.probs().to_vec());
        Ok(Self::from_weighted_rows(given.join(","), alphabet, &prior, weights, rows))
    }

    fn from_weighted_rows(
        name: String,
        alphabet: FiniteSpace,
        prior: &Distribution,
        weights: Vec<f64>,
        rows: Vec<Vec<f64>>,
    ) -> Self {
        let posteriors = rows
            .into_iter()
            .zip(&weights)
            .map(|(row, &w)| {
                if w > 0.0 {
                    Distribution::from_parts_unchecked(
                        prior.space().clone(),
                        row.into_iter().map(|p| p / w).collect(),
                    )
                } else {
                    prior.clone()
                }
            })
            .collect();
        InformationState {
            name,
            alphabet,
            labels: prior.space().clone(),
            weights,
            posteriors,
        }
    }

    pub(crate) fn from_parts_unchecked(
        name: String,
        alphabet: FiniteSpace,
        labels: FiniteSpace,
        weights: Vec<f64>,
        posteriors: Vec<Distribution>,
    ) -> Self {
        InformationState {
            name,
            alphabet,
            labels,
            weights,
            posteriors,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &FiniteSpace {
        &self.alphabet
    }

    pub fn label_space(&self) -> &FiniteSpace {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, h: usize) -> f64 {
        self.weights[h]
    }

    pub fn posteriors(&self) -> &[Distribution] {
        &self.posteriors
    }

    pub fn posterior(&self, h: usize) -> &Distribution {
        &self.posteriors[h]
    }

    /// `P(H = h, Y = y)`.
    pub fn joint(&self, h: usize, y: usize) -> f64 {
        self.weights[h] * self.posteriors[h].probs()[y]
    }

    /// Law of the label, `Σ_h P(h) π_h`.
    pub fn label_marginal(&self) -> Distribution {
        let mut out = vec![0.0; self.n_labels()];
        for (w, post) in self.weights.iter().zip(&self.posteriors) {
            for (o, p) in out.iter_mut().zip(post.probs()) {
                *o += w * p;
            }
        }
        Distribution::from_parts_unchecked(self.labels.clone(), out)
    }

    /// Kernel `Y → H` on labels with positive marginal mass; rows of
    /// zero-mass labels are uniform.
    pub fn likelihood(&self) -> Kernel {
        let marginal = self.label_marginal();
        let (ny, nh) = (self.n_labels(), self.len());
        let mut data = vec![0.0; ny * nh];
        for y in 0..ny {
            let py = marginal.probs()[y];
            for h in 0..nh {
                data[y * nh + h] = if py > 0.0 {
                    self.joint(h, y) / py
                } else {
                    1.0 / nh as f64
                };
            }
        }
        Kernel::from_data_unchecked(self.labels.clone(), self.alphabet.clone(), data)
    }
}

/// Value and minimising policy of a decision problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesRisk {
    pub value: f64,
    /// Bayes action per information symbol.
    pub policy: Vec<usize>,
}

/// `V(H; ℓ) = Σ_h P(h) min_a Σ_y ℓ(a, y) π_h(y)`, lowest action on ties.
pub fn bayes_risk(state: &InformationState, loss: &LossMatrix) -> Result<BayesRisk> {
    if loss.n_labels() != state.n_labels() {
        return input(format!(
            "loss has {} labels, state has {}",
            loss.n_labels(),
            state.n_labels()
        ));
    }
    let mut value = 0.0;
    let mut policy = Vec::with_capacity(state.len());
    for (w, post) in state.weights().iter().zip(state.posteriors()) {
        let (a, risk) = loss.bayes_act(post.probs());
        value += w * risk;
        policy.push(a);
    }
    Ok(BayesRisk { value, policy })
}

/// `E[s(π_H, Y)]`: conditional entropy in nats for log, expected Brier score
/// of the true posterior for Brier.
pub fn scoring_value(state: &InformationState, rule: ScoringRule) -> f64 {
    state
        .weights()
        .iter()
        .zip(state.posteriors())
        .filter(|(&w, _)| w > 0.0)
        .map(|(w, post)| w * rule.expected_score(post.probs(), post.probs()))
        .sum()
}

fn grouped(joint: &JointTable, groups: &[&[&str]]) -> Result<(Vec<usize>, Vec<f64>)> {
    let mut names = Vec::new();
    for g in groups {
        if g.is_empty() {
            return input("information quantity needs nonempty variable groups");
        }
        names.extend_from_slice(g);
    }
    let sub = joint.marginal(&names)?;
    let mut sizes = Vec::with_capacity(groups.len());
    let mut k = 0;
    for g in groups {
        sizes.push(sub.variables()[k..k + g.len()].iter().map(|v| v.space.len()).product());
        k += g.len();
    }
    Ok((sizes, sub.probs().to_vec()))
}

/// `I(Y; H | M)` in nats, where each argument names a group of variables
/// of `joint`.
pub fn conditional_mutual_information(
    joint: &JointTable,
    y: &[&str],
    h: &[&str],
    m: &[&str],
) -> Result<f64> {
    let (sizes, p) = grouped(joint, &[y, h, m])?;
    let (ny, nh, nm) = (sizes[0], sizes[1], sizes[2]);
    let mut p_ym = vec![0.0; ny * nm];
    let mut p_hm = vec![0.0; nh * nm];
    let mut p_m = vec![0.0; nm];
    for yi in 0..ny {
        for hi in 0..nh {
            for mi in 0..nm {
                let v = p[(yi * nh + hi) * nm + mi];
                p_ym[yi * nm + mi] += v;
                p_hm[hi * nm + mi] += v;
                p_m[mi] += v;
            }
        }
    }
    let mut total = 0.0;
    for yi in 0..ny {
        for hi in 0..nh {
            for mi in 0..nm {
                let v = p[(yi * nh + hi) * nm + mi];
                if v > 0.0 {
                    total += v * (v * p_m[mi] / (p_ym[yi * nm + mi] * p_hm[hi * nm + mi])).ln();
                }
            }
        }
    }
    Ok(total.max(0.0))
}

/// `I(A; B)` in nats.
pub fn mutual_information(joint: &JointTable, a: &[&str], b: &[&str]) -> Result<f64> {
    let (sizes, p) = grouped(joint, &[a, b])?;
    let (na, nb) = (sizes[0], sizes[1]);
    let mut pa = vec![0.0; na];
    let mut pb = vec![0.0; nb];
    for i in 0..na {
        for j in 0..nb {
            pa[i] += p[i * nb + j];
            pb[j] += p[i * nb + j];
        }
    }
    let mut total = 0.0;
    for i in 0..na {
        for j in 0..nb {
            let v = p[i * nb + j];
            if v > 0.0 {
                total += v * (v / (pa[i] * pb[j])).ln();
            }
        }
    }
    Ok(total.max(0.0))
}
