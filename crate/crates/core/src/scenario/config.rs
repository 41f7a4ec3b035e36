//! Scenario documents.
//!
//! A scenario is one TOML document: a top-level `kind`, an optional `seed`
//! and `output`, a `[model]` section with the label prior and signal kernel,
//! and exactly one parameter section named after the kind (`relay-depth`
//! reads `[relay_depth]`, and so on). Unknown keys are rejected.
//!
//! ```toml
//! kind = "relay-depth"
//!
//! [model]
//! prior = [0.25, 0.25, 0.25, 0.25]
//! signal = "identity"
//!
//! [relay_depth]
//! depths = [1, 2, 3, 5]
//! hop = { symmetric = 0.9 }
//! ```

use serde::{Deserialize, Serialize};

use crate::decision::{LossMatrix, ScoringRule};
use crate::channel::Objective;
use crate::error::{Error, Result};
use crate::prob::{Distribution, FiniteSpace, Kernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    RelayDepth,
    Interface,
    DistortionScatter,
    SignalExpansion,
    ReviewFrontier,
    CustomNetwork,
    EncodeOpt,
    Tax,
    Chain,
    Dominance,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::RelayDepth => "relay-depth",
            ScenarioKind::Interface => "interface",
            ScenarioKind::DistortionScatter => "distortion-scatter",
            ScenarioKind::SignalExpansion => "signal-expansion",
            ScenarioKind::ReviewFrontier => "review-frontier",
            ScenarioKind::CustomNetwork => "custom-network",
            ScenarioKind::EncodeOpt => "encode-opt",
            ScenarioKind::Tax => "tax",
            ScenarioKind::Chain => "chain",
            ScenarioKind::Dominance => "dominance",
        }
    }

    fn section(self) -> &'static str {
        match self {
            ScenarioKind::RelayDepth => "relay_depth",
            ScenarioKind::Interface => "interface",
            ScenarioKind::DistortionScatter => "distortion_scatter",
            ScenarioKind::SignalExpansion => "signal_expansion",
            ScenarioKind::ReviewFrontier => "review_frontier",
            ScenarioKind::CustomNetwork => "custom_network",
            ScenarioKind::EncodeOpt => "encode_opt",
            ScenarioKind::Tax => "tax",
            ScenarioKind::Chain => "chain",
            ScenarioKind::Dominance => "dominance",
        }
    }
}

/// A channel literal. Input size is supplied by context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelSpec {
    Identity,
    /// Keep the symbol with this probability, else move uniformly.
    Symmetric(f64),
    /// Explicit row-stochastic matrix.
    Matrix(Vec<Vec<f64>>),
    /// Every row equal to this distribution.
    Constant(Vec<f64>),
    /// Deterministic map `i -> labels[i]`.
    Partition(Vec<usize>),
}

impl ChannelSpec {
    pub fn build(&self, n_in: usize) -> Result<Kernel> {
        match self {
            ChannelSpec::Identity => Ok(Kernel::identity(n_in)),
            ChannelSpec::Symmetric(f) => Kernel::symmetric(n_in, *f),
            ChannelSpec::Matrix(rows) => {
                if rows.len() != n_in {
                    return Err(Error::Input(format!("matrix has {} rows, expected {n_in}", rows.len())));
                }
                Kernel::new(rows.clone())
            }
            ChannelSpec::Constant(p) => Ok(Kernel::constant(n_in, &Distribution::from_probs(p.clone())?)),
            ChannelSpec::Partition(labels) => {
                if labels.len() != n_in {
                    return Err(Error::Input(format!("partition has {} entries, expected {n_in}", labels.len())));
                }
                let n_out = labels.iter().max().map_or(1, |m| m + 1);
                Kernel::deterministic(labels, n_out)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossSpec {
    ZeroOne,
    Matrix(Vec<Vec<f64>>),
}

impl LossSpec {
    pub fn build(&self, n_labels: usize) -> Result<LossMatrix> {
        match self {
            LossSpec::ZeroOne => Ok(LossMatrix::zero_one(n_labels)),
            LossSpec::Matrix(rows) => {
                let l = LossMatrix::new(rows.clone())?;
                if l.n_labels() != n_labels {
                    return Err(Error::Input(format!("loss has {} label columns, prior has {n_labels}", l.n_labels())));
                }
                Ok(l)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveSpec {
    ZeroOne,
    Log,
    Brier,
    Matrix(Vec<Vec<f64>>),
}

impl ObjectiveSpec {
    pub fn build(&self, n_labels: usize) -> Result<Objective> {
        Ok(match self {
            ObjectiveSpec::ZeroOne => Objective::Loss(LossMatrix::zero_one(n_labels)),
            ObjectiveSpec::Log => Objective::Score(ScoringRule::Log),
            ObjectiveSpec::Brier => Objective::Score(ScoringRule::Brier),
            ObjectiveSpec::Matrix(rows) => Objective::Loss(LossSpec::Matrix(rows.clone()).build(n_labels)?),
        })
    }
}

/// Law of the label and of the shared signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub prior: Vec<f64>,
    /// Kernel from labels to the signal; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<ChannelSpec>,
}

impl ModelSpec {
    pub fn prior(&self) -> Result<Distribution> {
        Distribution::new(FiniteSpace::indexed("Y", self.prior.len()), self.prior.clone())
    }

    pub fn signal(&self) -> Result<Kernel> {
        self.signal
            .as_ref()
            .unwrap_or(&ChannelSpec::Identity)
            .build(self.prior.len())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelayDepthParams {
    pub depths: Vec<usize>,
    pub hop: ChannelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfaceParams {
    pub stages: usize,
    /// Message budget of the structured encoder.
    pub budget: usize,
    #[serde(default = "default_objective")]
    pub objective: ObjectiveSpec,
    /// Noise applied to structured messages after encoding.
    #[serde(default = "default_identity")]
    pub structured_hop: ChannelSpec,
    /// Fixed garbling of the full signal per stage.
    pub prose_hop: ChannelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistortionScatterParams {
    pub instances: usize,
    pub labels: usize,
    pub signals: usize,
    pub relay: ChannelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraSignalSpec {
    /// Exact copy of the terminal state.
    Copy,
    /// Fresh observation of the label through a symmetric channel.
    Fresh(f64),
    /// Uniform noise on this many symbols, independent of everything.
    Noise(usize),
    /// Kernel from the terminal state.
    FromM(Vec<Vec<f64>>),
    /// Kernel from (label, terminal state), rows row-major in that order.
    FromYm(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSetting {
    pub name: String,
    pub w: ExtraSignalSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalExpansionParams {
    #[serde(default = "default_loss")]
    pub loss: LossSpec,
    pub settings: Vec<SignalSetting>,
}

/// Escalation loss per information symbol, or a shorthand for one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReviewLossSpec {
    Constant(f64),
    PerSymbol(Vec<f64>),
    /// `scale * H(π_h)` in nats.
    EntropyScaled(f64),
}

impl ReviewLossSpec {
    /// Expands to one value per symbol of `state`.
    pub fn expand(&self, state: &crate::decision::InformationState) -> Result<Vec<f64>> {
        let out = match self {
            ReviewLossSpec::Constant(c) => vec![*c; state.len()],
            ReviewLossSpec::PerSymbol(v) => {
                if v.len() != state.len() {
                    return Err(Error::Input(format!(
                        "per-symbol review loss has {} entries, signal has {} symbols",
                        v.len(),
                        state.len()
                    )));
                }
                v.clone()
            }
            ReviewLossSpec::EntropyScaled(s) => state.posteriors().iter().map(|p| s * p.entropy()).collect(),
        };
        if out.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::Input("review losses must be finite and nonnegative".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReviewFrontierParams {
    #[serde(default = "default_loss")]
    pub loss: LossSpec,
    /// Constant review costs to sweep.
    pub costs: Vec<f64>,
    /// Optional per-symbol review loss; its optimal policy goes to the footer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub review_loss: Option<ReviewLossSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalDecl {
    pub name: String,
    #[serde(default = "default_parents")]
    pub parents: Vec<String>,
    pub kernel: ChannelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDecl {
    pub id: String,
    /// Signal names or node ids, in rule row-major order.
    pub inputs: Vec<String>,
    pub rule: ChannelSpec,
    #[serde(default)]
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomNetworkParams {
    #[serde(default = "default_loss")]
    pub loss: LossSpec,
    pub signals: Vec<SignalDecl>,
    pub nodes: Vec<NodeDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodeOptParams {
    /// Budgets to solve; `1..=|B|` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<Vec<usize>>,
    #[serde(default = "default_objective")]
    pub objective: ObjectiveSpec,
    /// Use the greedy merge when the alphabet exceeds the exhaustive cap.
    #[serde(default)]
    pub greedy_fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaxParams {
    pub channel: ChannelSpec,
    #[serde(default = "default_rules")]
    pub rules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    pub hops: Vec<ChannelSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominanceParams {
    /// Kernel of the candidate dominated experiment, from labels.
    pub s: ChannelSpec,
    /// Kernel of the candidate dominating experiment, from labels.
    pub t: ChannelSpec,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_objective() -> ObjectiveSpec {
    ObjectiveSpec::ZeroOne
}

fn default_identity() -> ChannelSpec {
    ChannelSpec::Identity
}

fn default_loss() -> LossSpec {
    LossSpec::ZeroOne
}

fn default_parents() -> Vec<String> {
    vec!["Y".into()]
}

fn default_rules() -> Vec<String> {
    vec!["log".into(), "brier".into()]
}

fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub model: ModelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relay_depth: Option<RelayDepthParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interface: Option<InterfaceParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distortion_scatter: Option<DistortionScatterParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal_expansion: Option<SignalExpansionParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub review_frontier: Option<ReviewFrontierParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_network: Option<CustomNetworkParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encode_opt: Option<EncodeOptParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tax: Option<TaxParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominance: Option<DominanceParams>,
}

/// 1-based line of the first line that opens `section` or assigns `key`.
fn locate(source: &str, section: &str, key: Option<&str>) -> Option<usize> {
    let header = format!("[{section}");
    let mut in_section = section.is_empty();
    for (i, line) in source.lines().enumerate() {
        let t = line.trim_start();
        if t.starts_with('[') {
            in_section = t.starts_with(&header);
            if in_section && key.is_none() {
                return Some(i + 1);
            }
        } else if in_section {
            if let Some(k) = key {
                if t.starts_with(k) && t[k.len()..].trim_start().starts_with('=') {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

impl ScenarioConfig {
    /// Parses and validates a scenario document.
    pub fn from_toml(source: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(source).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate(Some(source))?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Canonical serialisation; parsing it yields an identical config.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config serialises")
    }

    fn present_sections(&self) -> Vec<ScenarioKind> {
        let mut out = Vec::new();
        let mut push = |present: bool, k| {
            if present {
                out.push(k)
            }
        };
        push(self.relay_depth.is_some(), ScenarioKind::RelayDepth);
        push(self.interface.is_some(), ScenarioKind::Interface);
        push(self.distortion_scatter.is_some(), ScenarioKind::DistortionScatter);
        push(self.signal_expansion.is_some(), ScenarioKind::SignalExpansion);
        push(self.review_frontier.is_some(), ScenarioKind::ReviewFrontier);
        push(self.custom_network.is_some(), ScenarioKind::CustomNetwork);
        push(self.encode_opt.is_some(), ScenarioKind::EncodeOpt);
        push(self.tax.is_some(), ScenarioKind::Tax);
        push(self.chain.is_some(), ScenarioKind::Chain);
        push(self.dominance.is_some(), ScenarioKind::Dominance);
        out
    }

    /// Structural checks: sections, stochastic matrices, seeds.
    pub fn validate(&self, source: Option<&str>) -> Result<()> {
        let at = |section: &str, key: Option<&str>, msg: String| -> Error {
            let line = source.and_then(|s| locate(s, section, key));
            let place = match key {
                Some(k) if section.is_empty() => k.to_string(),
                Some(k) => format!("{section}.{k}"),
                None => section.to_string(),
            };
            match line {
                Some(l) => Error::Config(format!("line {l}: {place}: {msg}")),
                None => Error::Config(format!("{place}: {msg}")),
            }
        };
        let section = self.kind.section();
        for other in self.present_sections() {
            if other != self.kind {
                return Err(at(
                    other.section(),
                    None,
                    format!("section does not belong to kind {:?}", self.kind.name()),
                ));
            }
        }
        if !self.present_sections().contains(&self.kind) {
            return Err(at("", Some("kind"), format!("kind {:?} needs a [{section}] section", self.kind.name())));
        }

        let ny = self.model.prior.len();
        self.model.prior().map_err(|e| at("model", Some("prior"), e.to_string()))?;
        let signal = self.model.signal().map_err(|e| at("model", Some("signal"), e.to_string()))?;
        let nb = signal.n_out();
        let check = |key: &str, spec: &ChannelSpec, n_in: usize| -> Result<Kernel> {
            spec.build(n_in).map_err(|e| at(section, Some(key), e.to_string()))
        };

        match self.kind {
            ScenarioKind::RelayDepth => {
                let p = self.relay_depth.as_ref().unwrap();
                if p.depths.is_empty() || p.depths.contains(&0) {
                    return Err(at(section, Some("depths"), "depths must be a nonempty list of values >= 1".into()));
                }
                let hop = check("hop", &p.hop, nb)?;
                if hop.n_out() != nb {
                    return Err(at(section, Some("hop"), "relay hop must map the signal alphabet to itself".into()));
                }
            }
            ScenarioKind::Interface => {
                let p = self.interface.as_ref().unwrap();
                if p.budget == 0 {
                    return Err(at(section, Some("budget"), "budget must be >= 1".into()));
                }
                let prose = check("prose_hop", &p.prose_hop, nb)?;
                if prose.n_out() != nb {
                    return Err(at(section, Some("prose_hop"), "prose hop must map the signal alphabet to itself".into()));
                }
                if let ChannelSpec::Matrix(_) | ChannelSpec::Partition(_) = p.structured_hop {
                    return Err(at(
                        section,
                        Some("structured_hop"),
                        "structured hop must be size-agnostic (identity, symmetric or constant)".into(),
                    ));
                }
                p.objective.build(ny).map_err(|e| at(section, Some("objective"), e.to_string()))?;
            }
            ScenarioKind::DistortionScatter => {
                let p = self.distortion_scatter.as_ref().unwrap();
                if self.seed.is_none() {
                    return Err(at("", Some("seed"), "distortion-scatter is randomized and needs a seed".into()));
                }
                if p.instances < 3 {
                    return Err(at(section, Some("instances"), "correlation statistics need at least 3 instances".into()));
                }
                if p.labels < 2 || p.signals < 2 {
                    return Err(at(section, None, "labels and signals must be >= 2".into()));
                }
                check("relay", &p.relay, p.signals)?;
            }
            ScenarioKind::SignalExpansion => {
                let p = self.signal_expansion.as_ref().unwrap();
                p.loss.build(ny).map_err(|e| at(section, Some("loss"), e.to_string()))?;
                if p.settings.is_empty() {
                    return Err(at(section, None, "at least one setting is required".into()));
                }
            }
            ScenarioKind::ReviewFrontier => {
                let p = self.review_frontier.as_ref().unwrap();
                p.loss.build(ny).map_err(|e| at(section, Some("loss"), e.to_string()))?;
                if p.costs.is_empty() || p.costs.iter().any(|c| !c.is_finite() || *c < 0.0) {
                    return Err(at(section, Some("costs"), "costs must be a nonempty list of values >= 0".into()));
                }
                if let Some(r) = &p.review_loss {
                    let state = crate::decision::InformationState::from_experiment("B", &self.model.prior()?, &signal)?;
                    r.expand(&state).map_err(|e| at(section, Some("review_loss"), e.to_string()))?;
                }
            }
            ScenarioKind::CustomNetwork => {
                let p = self.custom_network.as_ref().unwrap();
                if self.model.signal.is_some() {
                    return Err(at(
                        "model",
                        Some("signal"),
                        "custom-network declares its signals in [[custom_network.signals]]".into(),
                    ));
                }
                p.loss.build(ny).map_err(|e| at(section, Some("loss"), e.to_string()))?;
            }
            ScenarioKind::EncodeOpt => {
                let p = self.encode_opt.as_ref().unwrap();
                if let Some(b) = &p.budgets {
                    if b.is_empty() || b.contains(&0) {
                        return Err(at(section, Some("budgets"), "budgets must be values >= 1".into()));
                    }
                }
                p.objective.build(ny).map_err(|e| at(section, Some("objective"), e.to_string()))?;
            }
            ScenarioKind::Tax => {
                let p = self.tax.as_ref().unwrap();
                check("channel", &p.channel, nb)?;
                for r in &p.rules {
                    r.parse::<ScoringRule>().map_err(|e| at(section, Some("rules"), e.to_string()))?;
                }
            }
            ScenarioKind::Chain => {
                let p = self.chain.as_ref().unwrap();
                let mut width = nb;
                for h in &p.hops {
                    width = check("hops", h, width)?.n_out();
                }
            }
            ScenarioKind::Dominance => {
                let p = self.dominance.as_ref().unwrap();
                check("s", &p.s, ny)?;
                check("t", &p.t, ny)?;
                if !(p.tolerance > 0.0) {
                    return Err(at(section, Some("tolerance"), "tolerance must be positive".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RELAY: &str = r#"
kind = "relay-depth"

[model]
prior = [0.25, 0.25, 0.25, 0.25]

[relay_depth]
depths = [1, 2, 3, 5]
hop = { symmetric = 0.9 }
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ScenarioConfig::from_toml(RELAY).unwrap();
        assert_eq!(cfg.kind, ScenarioKind::RelayDepth);
        let again = ScenarioConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let bad = RELAY.replace("depths", "depht");
        let err = ScenarioConfig::from_toml(&bad).unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
        let bad = format!("{RELAY}\nextra = 1\n");
        assert!(ScenarioConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn validation_errors_point_at_lines() {
        let bad = RELAY.replace("0.25, 0.25, 0.25, 0.25", "0.5, 0.25, 0.25, 0.25");
        let err = ScenarioConfig::from_toml(&bad).unwrap_err().to_string();
        assert!(err.starts_with("config error: line 5: model.prior"), "{err}");
    }

    #[test]
    fn missing_or_foreign_sections() {
        let bad = RELAY.replace("kind = \"relay-depth\"", "kind = \"chain\"");
        assert!(ScenarioConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn scatter_needs_seed() {
        let src = r#"
kind = "distortion-scatter"
[model]
prior = [0.5, 0.5]
[distortion_scatter]
instances = 2
labels = 3
signals = 3
relay = { symmetric = 0.9 }
"#;
        let err = ScenarioConfig::from_toml(src).unwrap_err().to_string();
        assert!(err.contains("seed"), "{err}");
        let seeded = format!("seed = 1\n{src}");
        let err = ScenarioConfig::from_toml(&seeded).unwrap_err().to_string();
        assert!(err.contains("at least 3"), "{err}");
    }

    #[test]
    fn channel_specs_build() {
        assert_eq!(ChannelSpec::Identity.build(3).unwrap(), Kernel::identity(3));
        assert_eq!(ChannelSpec::Partition(vec![0, 0, 1]).build(3).unwrap().n_out(), 2);
        assert!(ChannelSpec::Matrix(vec![vec![1.0]]).build(2).is_err());
        assert_eq!(ChannelSpec::Constant(vec![0.5, 0.5]).build(4).unwrap().n_in(), 4);
    }
}
