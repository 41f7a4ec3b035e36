//! Scenario runners: each consumes a [`ScenarioConfig`] and returns a
//! [`ResultTable`] whose footer records the config hash, seed and version.

mod config;
mod table;

pub use config::{
    ChainParams, ChannelSpec, CustomNetworkParams, DistortionScatterParams, DominanceParams, EncodeOptParams,
    ExtraSignalSpec, InterfaceParams, LossSpec, ModelSpec, NodeDecl, ObjectiveSpec, RelayDepthParams,
    ReviewFrontierParams, ReviewLossSpec, ScenarioConfig, ScenarioKind, SignalDecl, SignalExpansionParams, SignalSetting,
    TaxParams,
};
pub use table::{format_number, sha256_hex, Cell, ResultTable};

use std::collections::HashMap;

use rand::Rng;

use crate::blackwell::{is_dominated, separating_loss, verification_gain, Construction, Dominance, Experiment};
use crate::channel::{
    apply_channel, apply_encoder, chain_decomposition, communication_tax, greedy_encoder, optimal_encoder_with,
    BudgetSpec, ChainSpec, Objective,
};
use crate::decision::{bayes_risk, InformationState, LossMatrix, ScoringRule};
use crate::error::{Error, Result};
use crate::network::{collapse_gap_with, DelegatedNetwork, NetworkNode, Source};
use crate::prob::{Distribution, FiniteSpace, JointModel, Kernel, Limits, IDENTITY_TOL};
use crate::random;
use crate::review::{optimal_review, review_frontier, ReviewDecision, ReviewProblem};

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Replaces the config's seed.
    pub seed: Option<u64>,
    pub limits: Limits,
}

/// Runs any scenario kind.
pub fn run(config: &ScenarioConfig, options: &RunOptions) -> Result<ResultTable> {
    let mut cfg = config.clone();
    if options.seed.is_some() {
        cfg.seed = options.seed;
    }
    cfg.validate(None)?;
    let limits = &options.limits;
    let mut table = match cfg.kind {
        ScenarioKind::RelayDepth => run_relay_depth(&cfg, limits),
        ScenarioKind::Interface => run_interface(&cfg, limits),
        ScenarioKind::DistortionScatter => run_distortion_scatter(&cfg),
        ScenarioKind::SignalExpansion => run_signal_expansion(&cfg, limits),
        ScenarioKind::ReviewFrontier => run_review_frontier(&cfg),
        ScenarioKind::CustomNetwork => run_custom_network(&cfg, limits),
        ScenarioKind::EncodeOpt => run_encode_opt(&cfg, limits),
        ScenarioKind::Tax => run_tax(&cfg),
        ScenarioKind::Chain => run_chain(&cfg),
        ScenarioKind::Dominance => run_dominance(&cfg),
    }?;
    table.set_provenance("kind", cfg.kind.name());
    table.set_provenance("config_sha256", sha256_hex(cfg.to_toml().as_bytes()));
    table.set_provenance("seed", cfg.seed.map_or_else(|| "none".to_string(), |s| s.to_string()));
    table.set_provenance("version", concat!("delnet ", env!("CARGO_PKG_VERSION")));
    Ok(table)
}

fn bad_section(kind: ScenarioKind) -> Error {
    Error::Config(format!("kind {:?} is missing its parameter section", kind.name()))
}

/// State of the configured signal `B` about the label.
pub fn model_state(model: &ModelSpec) -> Result<InformationState> {
    InformationState::from_experiment("B", &model.prior()?, &model.signal()?)
}

fn accuracy(state: &InformationState) -> Result<f64> {
    Ok(1.0 - bayes_risk(state, &LossMatrix::zero_one(state.n_labels()))?.value)
}

/// `Y -> B -> relay_1 -> … -> relay_depth -> decide`, with the Bayes rule for
/// `loss` at the terminal.
pub fn relay_network(
    prior: &Distribution,
    signal: &Kernel,
    hop: &Kernel,
    depth: usize,
    loss: &LossMatrix,
    limits: &Limits,
) -> Result<DelegatedNetwork> {
    let mut exo = JointModel::new("Y", prior.clone());
    exo.add_variable("B", &["Y"], signal.clone())?;
    let mut nodes = Vec::with_capacity(depth + 1);
    let mut upstream = Source::exo("B");
    for i in 1..=depth {
        let id = format!("relay_{i}");
        nodes.push(NetworkNode::new(id.clone(), vec![upstream], hop.clone()));
        upstream = Source::node(id);
    }
    let placeholder = Kernel::constant(hop.n_out(), &Distribution::uniform(FiniteSpace::indexed("A", loss.n_actions())));
    nodes.push(NetworkNode::terminal("decide", vec![upstream], placeholder));
    DelegatedNetwork::new(exo, nodes)?.with_bayes_terminal(loss, limits)
}

pub fn run_relay_depth(cfg: &ScenarioConfig, limits: &Limits) -> Result<ResultTable> {
    let p = cfg.relay_depth.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let prior = cfg.model.prior()?;
    let signal = cfg.model.signal()?;
    let hop = p.hop.build(signal.n_out())?;
    let loss = LossMatrix::zero_one(prior.len());
    let mut t = ResultTable::new(&["depth", "accuracy", "network_loss", "centralized_loss", "gap_to_centralized"]);
    for &depth in &p.depths {
        let net = relay_network(&prior, &signal, &hop, depth, &loss, limits)?;
        let g = collapse_gap_with(&net, &loss, limits)?;
        t.push(vec![
            depth.into(),
            (1.0 - g.network_loss).into(),
            g.network_loss.into(),
            g.centralized_value.into(),
            g.gap.into(),
        ])?;
    }
    Ok(t)
}

fn garbled(state: &InformationState, spec: &ChannelSpec) -> Result<InformationState> {
    apply_channel(state, &spec.build(state.len())?)
}

pub fn run_interface(cfg: &ScenarioConfig, limits: &Limits) -> Result<ResultTable> {
    let p = cfg.interface.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let base = model_state(&cfg.model)?;
    let objective = p.objective.build(base.n_labels())?;
    let budget = BudgetSpec::new(p.budget)?;
    let prose_hop = p.prose_hop.build(base.len())?;
    let mut t = ResultTable::new(&[
        "stage",
        "structured_accuracy",
        "prose_accuracy",
        "structured_messages",
        "structured_dominates_prose",
    ]);
    let mut structured = base.clone();
    let mut prose = base.clone();
    let acc = accuracy(&base)?;
    t.push(vec![0usize.into(), acc.into(), acc.into(), base.len().into(), true.into()])?;
    for stage in 1..=p.stages {
        let sol = optimal_encoder_with(&structured, budget, &objective, limits)?;
        structured = garbled(&apply_encoder(&structured, &sol.encoder)?, &p.structured_hop)?;
        prose = apply_channel(&prose, &prose_hop)?;
        let dominates = is_dominated(
            &Experiment::from_state(&prose),
            &Experiment::from_state(&structured),
            IDENTITY_TOL,
        )?
        .is_dominated();
        t.push(vec![
            stage.into(),
            accuracy(&structured)?.into(),
            accuracy(&prose)?.into(),
            structured.len().into(),
            dominates.into(),
        ])?;
    }
    Ok(t)
}

/// Sample Pearson correlation; `None` below three points or with a constant
/// coordinate.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 3 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// A random experiment whose rows lean on symbol `y mod n_signals` with the
/// given sharpness.
pub fn sharpened_kernel<R: Rng + ?Sized>(rng: &mut R, n_labels: usize, n_signals: usize, sharpness: f64) -> Kernel {
    let noise = random::kernel(rng, n_labels, n_signals, false);
    let rows = (0..n_labels)
        .map(|y| {
            let mut row: Vec<f64> = noise.row(y).iter().map(|v| (1.0 - sharpness) * v).collect();
            row[y % n_signals] += sharpness;
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v /= s);
            row
        })
        .collect();
    Kernel::new(rows).expect("mixture of stochastic rows")
}

pub fn run_distortion_scatter(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let p = cfg.distortion_scatter.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let seed = cfg.seed.ok_or_else(|| Error::Config("distortion-scatter needs a seed".into()))?;
    if p.instances < 3 {
        return Err(Error::Config("correlation statistics need at least 3 instances".into()));
    }
    let mut rng = random::seeded(seed);
    let relay = p.relay.build(p.signals)?;
    let mut t = ResultTable::new(&[
        "instance",
        "sharpness",
        "expected_kl",
        "accuracy_direct",
        "accuracy_relayed",
        "accuracy_drop",
    ]);
    let (mut kls, mut drops) = (Vec::new(), Vec::new());
    for i in 0..p.instances {
        let prior = random::distribution(&mut rng, p.labels);
        let sharpness: f64 = rng.random();
        let kernel = sharpened_kernel(&mut rng, p.labels, p.signals, sharpness);
        let state = InformationState::from_experiment("B", &prior, &kernel)?;
        let kl = communication_tax(&state, &relay, ScoringRule::Log)?.expected_divergence;
        let direct = accuracy(&state)?;
        let relayed = accuracy(&apply_channel(&state, &relay)?)?;
        kls.push(kl);
        drops.push(direct - relayed);
        t.push(vec![
            i.into(),
            sharpness.into(),
            Cell::Info(kl),
            direct.into(),
            relayed.into(),
            (direct - relayed).into(),
        ])?;
    }
    t.note("instances", p.instances);
    match pearson(&kls, &drops) {
        Some(r) => t.note("pearson_r", r),
        None => t.note("pearson_r", "undefined (zero variance)"),
    }
    Ok(t)
}

/// Joint law of `(Y, M, W)` for one extra-signal setting.
pub fn expansion_model(prior: &Distribution, signal: &Kernel, w: &ExtraSignalSpec) -> Result<JointModel> {
    let (ny, nm) = (prior.len(), signal.n_out());
    let mut model = JointModel::new("Y", prior.clone());
    model.add_variable("M", &["Y"], signal.clone())?;
    match w {
        ExtraSignalSpec::Copy => model.add_variable("W", &["M"], Kernel::identity(nm))?,
        ExtraSignalSpec::Fresh(f) => model.add_variable("W", &["Y"], Kernel::symmetric(ny, *f)?)?,
        ExtraSignalSpec::Noise(n) => {
            if *n == 0 {
                return Err(Error::Input("noise signal needs at least one symbol".into()));
            }
            let u = Distribution::uniform(FiniteSpace::indexed("W", *n));
            model.add_variable("W", &["M"], Kernel::constant(nm, &u))?
        }
        ExtraSignalSpec::FromM(rows) => model.add_variable("W", &["M"], Kernel::new(rows.clone())?)?,
        ExtraSignalSpec::FromYm(rows) => model.add_variable("W", &["Y", "M"], Kernel::new(rows.clone())?)?,
    };
    Ok(model)
}

pub fn run_signal_expansion(cfg: &ScenarioConfig, limits: &Limits) -> Result<ResultTable> {
    let p = cfg.signal_expansion.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let prior = cfg.model.prior()?;
    let signal = cfg.model.signal()?;
    let loss = p.loss.build(prior.len())?;
    let mut t = ResultTable::new(&["setting", "loss_without_w", "loss_with_w", "gain", "redundant"]);
    for s in &p.settings {
        let joint = expansion_model(&prior, &signal, &s.w)
            .map_err(|e| Error::Config(format!("setting {:?}: {e}", s.name)))?
            .full_joint_with(limits)?;
        let g = verification_gain(&joint, "Y", &["M"], &["W"], &loss)?;
        t.push(vec![
            s.name.as_str().into(),
            g.v_base.into(),
            g.v_extended.into(),
            g.gain.into(),
            g.redundant.into(),
        ])?;
    }
    Ok(t)
}

pub fn run_review_frontier(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let p = cfg.review_frontier.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let state = model_state(&cfg.model)?;
    let loss = p.loss.build(state.n_labels())?;
    let mut t = ResultTable::new(&["cost", "escalation_mass", "expected_loss"]);
    for point in review_frontier(&state, &loss, &p.costs)? {
        t.push(vec![point.cost.into(), point.escalation_mass.into(), point.value.into()])?;
    }
    if let Some(spec) = &p.review_loss {
        let review = spec.expand(&state)?;
        let policy = optimal_review(&ReviewProblem::new(state, loss, review)?);
        let decisions: Vec<String> = policy
            .decisions
            .iter()
            .map(|d| match d {
                ReviewDecision::Automate(a) => a.to_string(),
                ReviewDecision::Escalate => "review".into(),
            })
            .collect();
        t.note("policy", decisions.join(" "));
        t.note("policy_escalation_mass", policy.escalation_mass);
        t.note("policy_expected_loss", policy.value);
    }
    Ok(t)
}

/// Builds the network declared by a `custom-network` section.
pub fn custom_network(prior: &Distribution, p: &CustomNetworkParams) -> Result<DelegatedNetwork> {
    let mut exo = JointModel::new("Y", prior.clone());
    let mut card: HashMap<String, usize> = HashMap::from([("Y".to_string(), prior.len())]);
    for s in &p.signals {
        let mut rows = 1;
        for parent in &s.parents {
            rows *= card
                .get(parent)
                .ok_or_else(|| Error::Config(format!("signal {:?}: parent {parent:?} is not declared before it", s.name)))?;
        }
        let k = s.kernel.build(rows).map_err(|e| Error::Config(format!("signal {:?}: {e}", s.name)))?;
        card.insert(s.name.clone(), k.n_out());
        let parents: Vec<&str> = s.parents.iter().map(String::as_str).collect();
        exo.add_variable(s.name.clone(), &parents, k)?;
    }
    let exo_names: Vec<String> = card.keys().cloned().collect();

    // node rules need their input sizes, which depend on upstream rules
    let mut built: Vec<Option<NetworkNode>> = vec![None; p.nodes.len()];
    let mut remaining = p.nodes.len();
    while remaining > 0 {
        let mut progressed = false;
        for (i, decl) in p.nodes.iter().enumerate() {
            if built[i].is_some() || !decl.inputs.iter().all(|name| card.contains_key(name)) {
                continue;
            }
            let rows = decl.inputs.iter().map(|name| card[name]).product();
            let rule = decl.rule.build(rows).map_err(|e| Error::Config(format!("node {:?}: {e}", decl.id)))?;
            let inputs = decl
                .inputs
                .iter()
                .map(|name| {
                    if exo_names.contains(name) {
                        Source::exo(name.clone())
                    } else {
                        Source::node(name.clone())
                    }
                })
                .collect();
            if card.insert(decl.id.clone(), rule.n_out()).is_some() {
                return Err(Error::Graph(format!("id {:?} is used twice", decl.id)));
            }
            built[i] = Some(if decl.terminal {
                NetworkNode::terminal(decl.id.clone(), inputs, rule)
            } else {
                NetworkNode::new(decl.id.clone(), inputs, rule)
            });
            remaining -= 1;
            progressed = true;
        }
        if !progressed {
            let stuck: Vec<&str> = p
                .nodes
                .iter()
                .zip(&built)
                .filter(|(_, b)| b.is_none())
                .map(|(d, _)| d.id.as_str())
                .collect();
            return Err(Error::Graph(format!(
                "nodes {stuck:?} read unknown sources or form a cycle"
            )));
        }
    }
    DelegatedNetwork::new(exo, built.into_iter().map(Option::unwrap).collect())
}

pub fn run_custom_network(cfg: &ScenarioConfig, limits: &Limits) -> Result<ResultTable> {
    let p = cfg.custom_network.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let prior = cfg.model.prior()?;
    let net = custom_network(&prior, p)?;
    let loss = p.loss.build(prior.len())?;
    let gap = collapse_gap_with(&net, &loss, limits)?;
    let joint = net.terminal_joint_with(limits)?;
    let mut columns: Vec<&str> = joint.variables().iter().map(|v| v.name.as_str()).collect();
    columns.push("probability");
    let mut t = ResultTable::new(&columns);
    for (cell, prob) in joint.cells() {
        let mut row: Vec<Cell> = cell
            .iter()
            .zip(joint.variables())
            .map(|(&i, v)| v.space.label(i).into())
            .collect();
        row.push(prob.into());
        t.push(row)?;
    }
    t.note("network_loss", gap.network_loss);
    t.note("centralized_loss", gap.centralized_value);
    t.note("collapse_gap", gap.gap);
    Ok(t)
}

fn value_cell(objective: &Objective, v: f64) -> Cell {
    match objective {
        Objective::Score(ScoringRule::Log) => Cell::Info(v),
        _ => Cell::Num(v),
    }
}

pub fn run_encode_opt(cfg: &ScenarioConfig, limits: &Limits) -> Result<ResultTable> {
    let p = cfg.encode_opt.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let state = model_state(&cfg.model)?;
    let objective = p.objective.build(state.n_labels())?;
    let budgets = p.budgets.clone().unwrap_or_else(|| (1..=state.len()).collect());
    let mut t = ResultTable::new(&["k", "value", "messages", "encoder_partition", "exact"]);
    for k in budgets {
        let budget = BudgetSpec::new(k)?;
        let sol = match optimal_encoder_with(&state, budget, &objective, limits) {
            Err(Error::EnumerationLimit { .. }) if p.greedy_fallback => greedy_encoder(&state, budget, &objective)?,
            other => other?,
        };
        t.push(vec![
            k.into(),
            value_cell(&objective, sol.value),
            sol.encoder.messages().into(),
            sol.partition_label().into(),
            sol.exact.into(),
        ])?;
    }
    Ok(t)
}

pub fn run_tax(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let p = cfg.tax.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let state = model_state(&cfg.model)?;
    let channel = p.channel.build(state.len())?;
    let mut t = ResultTable::new(&["rule", "v_h", "v_m", "gap", "expected_divergence", "conditional_mi"]);
    for name in &p.rules {
        let rule: ScoringRule = name.parse()?;
        let r = communication_tax(&state, &channel, rule)?;
        let cell = |v: f64| match rule {
            ScoringRule::Log => Cell::Info(v),
            ScoringRule::Brier => Cell::Num(v),
        };
        t.push(vec![
            rule.name().into(),
            cell(r.v_h),
            cell(r.v_m),
            cell(r.gap),
            cell(r.expected_divergence),
            r.conditional_mi.map_or(Cell::Empty, Cell::Info),
        ])?;
    }
    Ok(t)
}

pub fn run_chain(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let p = cfg.chain.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let initial = model_state(&cfg.model)?;
    let mut hops = Vec::with_capacity(p.hops.len());
    let mut width = initial.len();
    for h in &p.hops {
        let k = h.build(width)?;
        width = k.n_out();
        hops.push(k);
    }
    let report = chain_decomposition(&ChainSpec::new(initial, hops)?)?;
    let mut t = ResultTable::new(&["stage", "term", "cumulative"]);
    for (i, (term, cum)) in report.terms.iter().zip(&report.cumulative).enumerate() {
        t.push(vec![(i + 1).into(), Cell::Info(*term), Cell::Info(*cum)])?;
    }
    t.note("total", Cell::Info(report.total));
    t.note("end_to_end", Cell::Info(report.end_to_end));
    Ok(t)
}

pub fn run_dominance(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let p = cfg.dominance.as_ref().ok_or_else(|| bad_section(cfg.kind))?;
    let prior = cfg.model.prior()?;
    let s = Experiment::new(prior.clone(), p.s.build(prior.len())?)?;
    let te = Experiment::new(prior.clone(), p.t.build(prior.len())?)?;
    let matrix_table = |name: &str, rows: Vec<Vec<f64>>| -> Result<ResultTable> {
        let width = rows.first().map_or(0, Vec::len);
        let headers: Vec<String> = (0..width).map(|j| format!("c{j}")).collect();
        let mut cols = vec!["matrix", "row"];
        cols.extend(headers.iter().map(String::as_str));
        let mut t = ResultTable::new(&cols);
        for (i, r) in rows.into_iter().enumerate() {
            let mut cells: Vec<Cell> = vec![name.into(), i.into()];
            cells.extend(r.into_iter().map(Cell::Num));
            t.push(cells)?;
        }
        Ok(t)
    };
    match is_dominated(&s, &te, p.tolerance)? {
        Dominance::Dominated(w) => {
            let mut t = matrix_table("garbling", w.channel.to_rows())?;
            t.note("dominated", true);
            t.note("residual", w.residual);
            Ok(t)
        }
        Dominance::NotDominated(_) => {
            let sep = separating_loss(&s, &te)?;
            let mut t = matrix_table("separating_loss", sep.loss.to_rows())?;
            t.note("dominated", false);
            t.note("risk_s", sep.risk_s);
            t.note("risk_t", sep.risk_t);
            t.note("margin", sep.margin);
            t.note(
                "construction",
                match sep.construction {
                    Construction::Certificate => "certificate",
                    Construction::Search => "search",
                },
            );
            Ok(t)
        }
    }
}
