//! Blackwell comparison of finite experiments.
//!
//! `S` is dominated by `T` when some channel `G` from `T`'s alphabet to `S`'s
//! satisfies `K_S = K_T G` on every label of positive prior mass. Feasibility
//! of that linear system is decided by [`crate::simplex::phase_one`]. When it
//! fails, the Farkas vector `(λ, μ)` gives a utility `u(s, y) = λ(y, s) / p(y)`
//! under which acting on `S` beats acting on `T`, because
//!
//! ```text
//! U(S) ≥ Σ_{y,s} K_S(y,s) λ(y,s) > -Σ_t μ(t) ≥ Σ_t max_s Σ_y K_T(y,t) λ(y,s) = U(T).
//! ```
//!
//! The resulting loss `C - u` is always re-checked with [`bayes_risk`]; if the
//! margin is too small a seeded random search over losses takes over.

use rand::Rng;

use crate::decision::{bayes_risk, InformationState, LossMatrix};
use crate::error::{input, Error, Result};
use crate::prob::{Distribution, FiniteSpace, JointTable, Kernel, IDENTITY_TOL};
use crate::random;
use crate::simplex::{phase_one, Feasibility};

/// Smallest verified risk gap accepted from [`separating_loss`].
pub const MIN_MARGIN: f64 = 1e-7;

const SEARCH_SEED: u64 = 0x5eed_b1ac;
const SEARCH_ROUNDS: usize = 4000;

/// A prior over labels and a kernel from labels to signals.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    prior: Distribution,
    kernel: Kernel,
}

impl Experiment {
    pub fn new(prior: Distribution, kernel: Kernel) -> Result<Self> {
        if kernel.n_in() != prior.len() {
            return input(format!(
                "experiment kernel has {} rows for {} labels",
                kernel.n_in(),
                prior.len()
            ));
        }
        Ok(Experiment { prior, kernel })
    }

    /// The experiment whose induced state is `state`.
    pub fn from_state(state: &InformationState) -> Self {
        Experiment {
            prior: state.label_marginal(),
            kernel: state.likelihood(),
        }
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn state(&self) -> InformationState {
        InformationState::from_experiment("signal", &self.prior, &self.kernel)
            .expect("validated at construction")
    }

    /// Labels with positive prior mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.prior.len()).filter(|&y| self.prior.probs()[y] > 0.0).collect()
    }
}

/// A channel generating `S` from `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct GarblingWitness {
    pub channel: Kernel,
    /// `max |K_S - K_T G|` over labels of positive prior mass.
    pub residual: f64,
    /// Zero-prior labels left out of the constraints.
    pub excluded_labels: Vec<usize>,
}

/// Farkas certificate of non-dominance.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityCertificate {
    /// `λ(y, s)`, rows indexed by label; zero on excluded labels.
    pub lambda: Vec<Vec<f64>>,
    /// `μ(t)`, one entry per symbol of the dominating candidate.
    pub mu: Vec<f64>,
    pub violation: f64,
    pub excluded_labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dominance {
    Dominated(GarblingWitness),
    NotDominated(InfeasibilityCertificate),
}

impl Dominance {
    pub fn witness(&self) -> Option<&GarblingWitness> {
        match self {
            Dominance::Dominated(w) => Some(w),
            Dominance::NotDominated(_) => None,
        }
    }

    pub fn is_dominated(&self) -> bool {
        matches!(self, Dominance::Dominated(_))
    }
}

fn same_prior(s: &Experiment, t: &Experiment) -> Result<()> {
    if s.prior.len() != t.prior.len() || s.prior.max_abs_diff(&t.prior) > IDENTITY_TOL {
        return input("experiments must share the label space and prior");
    }
    Ok(())
}

/// Residual of a candidate garbling on the given labels.
pub fn garbling_residual(s: &Experiment, t: &Experiment, channel: &Kernel, labels: &[usize]) -> f64 {
    let composed = t.kernel.compose(channel).expect("channel dimensions checked");
    let mut worst: f64 = 0.0;
    for &y in labels {
        for (a, b) in composed.row(y).iter().zip(s.kernel.row(y)) {
            worst = worst.max((a - b).abs());
        }
    }
    worst
}

/// Decides whether `s` is a garbling of `t` (`t` Blackwell-dominates `s`).
pub fn is_dominated(s: &Experiment, t: &Experiment, tol: f64) -> Result<Dominance> {
    same_prior(s, t)?;
    let support = s.support();
    let excluded: Vec<usize> = (0..s.prior.len()).filter(|y| !support.contains(y)).collect();
    let (nt, ns) = (t.kernel.n_out(), s.kernel.n_out());
    let n_vars = nt * ns;

    let mut a = Vec::with_capacity(support.len() * ns + nt);
    let mut b = Vec::with_capacity(support.len() * ns + nt);
    for &y in &support {
        for sym in 0..ns {
            let mut row = vec![0.0; n_vars];
            for tt in 0..nt {
                row[tt * ns + sym] = t.kernel.get(y, tt);
            }
            a.push(row);
            b.push(s.kernel.get(y, sym));
        }
    }
    for tt in 0..nt {
        let mut row = vec![0.0; n_vars];
        for sym in 0..ns {
            row[tt * ns + sym] = 1.0;
        }
        a.push(row);
        b.push(1.0);
    }

    let not_dominated = |certificate: Vec<f64>, violation: f64| {
        let mut lambda = vec![vec![0.0; ns]; s.prior.len()];
        for (k, &y) in support.iter().enumerate() {
            lambda[y].copy_from_slice(&certificate[k * ns..(k + 1) * ns]);
        }
        let mu = certificate[support.len() * ns..].to_vec();
        Dominance::NotDominated(InfeasibilityCertificate {
            lambda,
            mu,
            violation,
            excluded_labels: excluded.clone(),
        })
    };

    match phase_one(&a, &b, tol) {
        Feasibility::Feasible { x } => {
            let rows: Vec<Vec<f64>> = x
                .chunks(ns)
                .map(|r| {
                    let total: f64 = r.iter().sum();
                    if total > 0.0 {
                        r.iter().map(|v| v / total).collect()
                    } else {
                        vec![1.0 / ns as f64; ns]
                    }
                })
                .collect();
            let channel = Kernel::from_data_unchecked(
                t.kernel.to_space().clone(),
                s.kernel.to_space().clone(),
                rows.concat(),
            );
            let residual = garbling_residual(s, t, &channel, &support);
            if residual <= tol {
                Ok(Dominance::Dominated(GarblingWitness {
                    channel,
                    residual,
                    excluded_labels: excluded,
                }))
            } else {
                Ok(not_dominated(vec![0.0; a.len()], residual))
            }
        }
        Feasibility::Infeasible {
            certificate,
            violation,
        } => Ok(not_dominated(certificate, violation)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Built from the Farkas certificate.
    Certificate,
    /// Found by seeded random search over losses.
    Search,
}

/// A loss under which `S` is strictly more valuable than `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingLoss {
    pub loss: LossMatrix,
    pub risk_s: f64,
    pub risk_t: f64,
    /// `risk_t - risk_s`, recomputed through the Bayes envelope.
    pub margin: f64,
    pub construction: Construction,
}

fn verify(s: &InformationState, t: &InformationState, loss: &LossMatrix) -> Result<(f64, f64)> {
    Ok((bayes_risk(s, loss)?.value, bayes_risk(t, loss)?.value))
}

fn certificate_loss(s: &Experiment, cert: &InfeasibilityCertificate) -> Option<LossMatrix> {
    let ns = s.kernel.n_out();
    let ny = s.prior.len();
    let mut u = vec![vec![0.0; ny]; ns];
    for y in 0..ny {
        let p = s.prior.probs()[y];
        if p > 0.0 {
            for a in 0..ns {
                u[a][y] = cert.lambda[y][a] / p;
            }
        }
    }
    let hi = u.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = u.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let span = hi - lo;
    if !(span > 0.0) || !span.is_finite() {
        return None;
    }
    let rows = u
        .into_iter()
        .map(|row| row.into_iter().map(|v| ((hi - v) / span).max(0.0)).collect())
        .collect();
    LossMatrix::with_spaces(s.kernel.to_space().clone(), s.prior.space().clone(), rows).ok()
}

/// Builds a bounded loss with `V(S; ℓ) ≤ V(T; ℓ) - margin`, `margin ≥ MIN_MARGIN`.
/// Losses are scaled to `[0, 1]`.
pub fn separating_loss(s: &Experiment, t: &Experiment) -> Result<SeparatingLoss> {
    let cert = match is_dominated(s, t, IDENTITY_TOL)? {
        Dominance::Dominated(w) => return Err(Error::DominanceDetected { residual: w.residual }),
        Dominance::NotDominated(c) => c,
    };
    let (ss, ts) = (s.state(), t.state());

    let mut best_margin = f64::NEG_INFINITY;
    if let Some(loss) = certificate_loss(s, &cert) {
        let (risk_s, risk_t) = verify(&ss, &ts, &loss)?;
        let margin = risk_t - risk_s;
        if margin >= MIN_MARGIN {
            return Ok(SeparatingLoss {
                loss,
                risk_s,
                risk_t,
                margin,
                construction: Construction::Certificate,
            });
        }
        best_margin = margin;
    }

    let mut rng = random::seeded(SEARCH_SEED);
    let ny = s.prior.len();
    let max_actions = s.kernel.n_out().max(2) + 1;
    let mut best: Option<SeparatingLoss> = None;
    for round in 0..SEARCH_ROUNDS {
        let n_a = rng.random_range(2..=max_actions);
        let loss = if round % 2 == 0 {
            random::loss(&mut rng, n_a, ny)
        } else {
            // sparse 0/1 losses catch separations that lie on faces
            let rows = (0..n_a)
                .map(|_| (0..ny).map(|_| if rng.random_bool(0.5) { 1.0 } else { 0.0 }).collect())
                .collect();
            LossMatrix::new(rows)?
        };
        let (risk_s, risk_t) = verify(&ss, &ts, &loss)?;
        let margin = risk_t - risk_s;
        if margin > best_margin {
            best_margin = margin;
            best = Some(SeparatingLoss {
                loss,
                risk_s,
                risk_t,
                margin,
                construction: Construction::Search,
            });
        }
    }
    match best {
        Some(found) if found.margin >= MIN_MARGIN => Ok(found),
        _ => Err(Error::NoSeparation {
            min_margin: MIN_MARGIN,
            best: best_margin,
        }),
    }
}

/// Value of an extra terminal signal.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationGain {
    pub v_base: f64,
    pub v_extended: f64,
    /// `v_base - v_extended`.
    pub gain: f64,
    /// The extended state is a garbling of the base state.
    pub redundant: bool,
}

/// Compares the Bayes risk of `base` with that of `(base, extra)` about
/// `label`, and certifies redundancy through [`is_dominated`].
pub fn verification_gain(
    joint: &JointTable,
    label: &str,
    base: &[&str],
    extra: &[&str],
    loss: &LossMatrix,
) -> Result<VerificationGain> {
    let base_state = InformationState::from_joint(joint, label, base)?;
    let mut both: Vec<&str> = base.to_vec();
    both.extend_from_slice(extra);
    let ext_state = InformationState::from_joint(joint, label, &both)?;
    let v_base = bayes_risk(&base_state, loss)?.value;
    let v_extended = bayes_risk(&ext_state, loss)?.value;
    let redundant = is_dominated(
        &Experiment::from_state(&ext_state),
        &Experiment::from_state(&base_state),
        IDENTITY_TOL,
    )?
    .is_dominated();
    Ok(VerificationGain {
        v_base,
        v_extended,
        gain: v_base - v_extended,
        redundant,
    })
}

/// The perfect experiment on `prior`.
pub fn perfect(prior: &Distribution) -> Experiment {
    let n = prior.len();
    Experiment {
        prior: prior.clone(),
        kernel: Kernel::identity(n),
    }
}

/// The uninformative experiment on `prior`.
pub fn blind(prior: &Distribution) -> Experiment {
    let one = Distribution::point(FiniteSpace::indexed("", 1), 0);
    Experiment {
        prior: prior.clone(),
        kernel: Kernel::constant(prior.len(), &one),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform2() -> Distribution {
        Distribution::from_probs(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn perfect_dominates_with_ks_as_witness() {
        let s = Experiment::new(uniform2(), Kernel::new(vec![vec![0.9, 0.1], vec![0.4, 0.6]]).unwrap()).unwrap();
        let t = perfect(&uniform2());
        let d = is_dominated(&s, &t, 1e-9).unwrap();
        let w = d.witness().expect("dominated");
        assert!(w.residual <= 1e-12);
        assert!(w.channel.max_abs_diff(s.kernel()) < 1e-12);
    }

    #[test]
    fn perfect_versus_blind_separates_by_half() {
        let s = perfect(&uniform2());
        let t = blind(&uniform2());
        let sep = separating_loss(&s, &t).unwrap();
        assert!(sep.margin >= MIN_MARGIN);
        // the classical 0-1 comparison
        let l = LossMatrix::zero_one(2);
        let (rs, rt) = verify(&s.state(), &t.state(), &l).unwrap();
        assert_eq!((rs, rt), (0.0, 0.5));
    }

    #[test]
    fn self_comparison_refuses() {
        let s = Experiment::new(uniform2(), Kernel::symmetric(2, 0.7).unwrap()).unwrap();
        assert!(matches!(
            separating_loss(&s, &s.clone()),
            Err(Error::DominanceDetected { .. })
        ));
    }

    #[test]
    fn zero_prior_labels_are_excluded() {
        let prior = Distribution::from_probs(vec![0.5, 0.5, 0.0]).unwrap();
        let t = Experiment::new(prior.clone(), Kernel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap();
        // S disagrees with T only on the impossible label
        let s = Experiment::new(prior, Kernel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap()).unwrap();
        let d = is_dominated(&s, &t, 1e-9).unwrap();
        assert_eq!(d.witness().unwrap().excluded_labels, vec![2]);
    }

    #[test]
    fn mismatched_priors_are_rejected() {
        let s = perfect(&uniform2());
        let t = perfect(&Distribution::from_probs(vec![0.3, 0.7]).unwrap());
        assert!(is_dominated(&s, &t, 1e-9).is_err());
    }
}
