//! Library results against independent oracles: exact rational arithmetic
//! and exhaustive enumeration.

mod common;

use common::*;
use num_rational::Ratio;

use delnet::blackwell::{is_dominated, separating_loss, verification_gain, Experiment};
use delnet::channel::{
    apply_encoder, chain_decomposition, communication_tax, optimal_encoder, BudgetSpec, ChainSpec, Encoder,
    Objective,
};
use delnet::decision::{bayes_risk, conditional_mutual_information, InformationState, LossMatrix, ScoringRule};
use delnet::network::{collapse_gap, network_loss, DelegatedNetwork, NetworkNode, Source};
use delnet::prob::{Distribution, FiniteSpace, JointModel, Kernel};
use delnet::random;
use delnet::review::{optimal_review, ReviewProblem};
use delnet::scenario::{run, RunOptions, ScenarioConfig};

type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn to_f(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn dist(p: &[f64]) -> Distribution {
    Distribution::from_probs(p.to_vec()).unwrap()
}

fn kern(rows: &[Vec<f64>]) -> Kernel {
    Kernel::new(rows.to_vec()).unwrap()
}

fn two_by_two_model(prior: &[f64]) -> JointModel {
    let mut m = JointModel::new("Y", dist(prior));
    m.add_variable("B", &["Y"], kern(&[vec![0.8, 0.2], vec![0.3, 0.7]])).unwrap();
    m
}

#[test]
fn joint_table_matches_rational_product() {
    let prior = [q(3, 5), q(2, 5)];
    let k = [[q(4, 5), q(1, 5)], [q(3, 10), q(7, 10)]];
    let joint = two_by_two_model(&[0.6, 0.4]).full_joint().unwrap();
    for y in 0..2 {
        for b in 0..2 {
            let exact = prior[y] * k[y][b];
            assert!((joint.prob(&[y, b]) - to_f(exact)).abs() < 1e-15);
        }
    }
    let got = joint.probs();
    for (g, e) in got.iter().zip([0.48, 0.12, 0.12, 0.28]) {
        assert!((g - e).abs() < 1e-15);
    }
}

#[test]
fn marginal_matches_rational_column_sums() {
    let prior = [q(3, 5), q(2, 5)];
    let k = [[q(4, 5), q(1, 5)], [q(3, 10), q(7, 10)]];
    let joint = two_by_two_model(&[0.6, 0.4]).full_joint().unwrap();
    let b = joint.marginal(&["B"]).unwrap();
    for col in 0..2 {
        let exact = prior[0] * k[0][col] + prior[1] * k[1][col];
        assert!((b.probs()[col] - to_f(exact)).abs() < 1e-15);
    }
}

#[test]
fn posterior_matches_rational_bayes_rule() {
    let joint = two_by_two_model(&[0.5, 0.5]).full_joint().unwrap();
    let post = joint.posterior("Y", &[("B", 0)]).unwrap();
    let num = [q(1, 2) * q(4, 5), q(1, 2) * q(3, 10)];
    let z = num[0] + num[1];
    assert_eq!(num[0] / z, q(8, 11));
    for y in 0..2 {
        assert!((post.probs()[y] - to_f(num[y] / z)).abs() < 1e-15);
    }
}

#[test]
fn compose_matches_rational_matrix_product() {
    let a = [[q(9, 10), q(1, 10)], [q(2, 10), q(8, 10)]];
    let b = [[q(7, 10), q(3, 10)], [q(4, 10), q(6, 10)]];
    let got = kern(&[vec![0.9, 0.1], vec![0.2, 0.8]])
        .compose(&kern(&[vec![0.7, 0.3], vec![0.4, 0.6]]))
        .unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let exact = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            assert!((got.get(i, j) - to_f(exact)).abs() < 1e-15);
        }
    }
    assert_eq!(a[0][0] * b[0][0] + a[0][1] * b[1][0], q(67, 100));
}

#[test]
fn bayes_risk_matches_rule_enumeration() {
    let mut rng = random::seeded(11);
    for _ in 0..200 {
        use rand::Rng;
        let ny = rng.random_range(2..=4);
        let nh = rng.random_range(1..=5);
        let na = rng.random_range(1..=3);
        let prior = random::distribution(&mut rng, ny);
        let k = random::kernel(&mut rng, ny, nh, true);
        let loss = random::loss(&mut rng, na, ny);
        let state = InformationState::from_experiment("H", &prior, &k).unwrap();
        let oracle = rule_enumeration_risk(&joint_of(prior.probs(), &k.to_rows()), &loss.to_rows());
        assert!((bayes_risk(&state, &loss).unwrap().value - oracle).abs() < 1e-12);
    }
    // binary symmetric channel with flip 0.2
    let bsc = vec![vec![0.8, 0.2], vec![0.2, 0.8]];
    let oracle = rule_enumeration_risk(&joint_of(&[0.5, 0.5], &bsc), &LossMatrix::zero_one(2).to_rows());
    assert!((oracle - 0.2).abs() < 1e-15);
}

/// `Y -> B=Y -> 3 relays (0.9 on 4 symbols) -> decide = copy`.
fn three_hop_relay() -> DelegatedNetwork {
    let mut exo = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 4)));
    exo.add_variable("B", &["Y"], Kernel::identity(4)).unwrap();
    let hop = Kernel::symmetric(4, 0.9).unwrap();
    let nodes = vec![
        NetworkNode::new("r1", vec![Source::exo("B")], hop.clone()),
        NetworkNode::new("r2", vec![Source::node("r1")], hop.clone()),
        NetworkNode::new("r3", vec![Source::node("r2")], hop),
        NetworkNode::terminal("decide", vec![Source::node("r3")], Kernel::identity(4)),
    ];
    DelegatedNetwork::new(exo, nodes).unwrap()
}

#[test]
fn three_hop_relay_matches_exhaustive_summation() {
    let net = three_hop_relay();
    let k = symmetric(4, 0.9);
    // P(Y = y, A = a) by summing over every intermediate outcome
    let mut oracle = vec![vec![0.0; 4]; 4];
    for y in 0..4 {
        for r1 in 0..4 {
            for r2 in 0..4 {
                for r3 in 0..4 {
                    oracle[y][r3] += 0.25 * k[y][r1] * k[r1][r2] * k[r2][r3];
                }
            }
        }
    }
    let joint = net.terminal_joint().unwrap();
    let ya = joint.marginal(&["Y", "decide"]).unwrap();
    for y in 0..4 {
        for a in 0..4 {
            assert!((ya.prob(&[y, a]) - oracle[y][a]).abs() < 1e-15);
        }
    }
    let err: f64 = (0..4).flat_map(|y| (0..4).map(move |a| (y, a))).filter(|(y, a)| y != a).map(|(y, a)| oracle[y][a]).sum();
    let loss = LossMatrix::zero_one(4);
    assert!((network_loss(&net, &loss).unwrap() - err).abs() < 1e-15);
    let gap = collapse_gap(&net, &loss).unwrap();
    assert_eq!(gap.centralized_value, 0.0);
    assert!((gap.gap - err).abs() < 1e-15);
}

#[test]
fn cmi_matches_eight_cell_summation() {
    let flip = 0.25;
    let mut cells = Vec::new();
    for y in 0..2 {
        for m in 0..2 {
            let p = 0.5 * if m == y { 1.0 - flip } else { flip };
            cells.push((y, y, m, p));
        }
    }
    let oracle = cmi_cells(&cells);
    let mut model = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 2)));
    model.add_variable("H", &["Y"], Kernel::identity(2)).unwrap();
    model.add_variable("M", &["H"], Kernel::symmetric(2, 1.0 - flip).unwrap()).unwrap();
    let joint = model.full_joint().unwrap();
    let got = conditional_mutual_information(&joint, &["Y"], &["H"], &["M"]).unwrap();
    assert!((got - oracle).abs() < 1e-14);
}

#[test]
fn incomparable_pair_matches_two_by_two_solve() {
    // K_T G = K_S with G = [[a, 1-a], [b, 1-b]] is two equations in (a, b)
    fn garbling_exists(t: [[f64; 2]; 2], s: [[f64; 2]; 2]) -> bool {
        let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
        let a = (s[0][0] * t[1][1] - t[0][1] * s[1][0]) / det;
        let b = (t[0][0] * s[1][0] - s[0][0] * t[1][0]) / det;
        (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b)
    }
    let ks = [[0.9, 0.1], [0.4, 0.6]];
    let kt = [[0.7, 0.3], [0.1, 0.9]];
    assert!(!garbling_exists(kt, ks));
    assert!(!garbling_exists(ks, kt));

    let prior = Distribution::uniform(FiniteSpace::indexed("Y", 2));
    let rows = |k: [[f64; 2]; 2]| k.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let s = Experiment::new(prior.clone(), kern(&rows(ks))).unwrap();
    let t = Experiment::new(prior.clone(), kern(&rows(kt))).unwrap();
    assert!(!is_dominated(&s, &t, 1e-9).unwrap().is_dominated());
    assert!(!is_dominated(&t, &s, 1e-9).unwrap().is_dominated());

    for (a, b, ka, kb) in [(&s, &t, ks, kt), (&t, &s, kt, ks)] {
        let sep = separating_loss(a, b).unwrap();
        let l = sep.loss.to_rows();
        let va = rule_enumeration_risk(&joint_of(&[0.5, 0.5], &rows(ka)), &l);
        let vb = rule_enumeration_risk(&joint_of(&[0.5, 0.5], &rows(kb)), &l);
        assert!(vb - va >= 1e-7, "gap {}", vb - va);
        assert!((sep.margin - (vb - va)).abs() < 1e-12);
    }
}

#[test]
fn fresh_signal_gain_matches_joint_enumeration() {
    let w = symmetric(4, 0.8);
    for (m_fid, expected) in [(0.25, 0.55), (0.6, 0.2)] {
        let mk = symmetric(4, m_fid);
        let mut model = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 4)));
        model.add_variable("M", &["Y"], Kernel::symmetric(4, m_fid).unwrap()).unwrap();
        model.add_variable("W", &["Y"], Kernel::symmetric(4, 0.8).unwrap()).unwrap();
        let joint = model.full_joint().unwrap();
        let loss = LossMatrix::zero_one(4);
        let g = verification_gain(&joint, "Y", &["M"], &["W"], &loss).unwrap();

        // 0-1 accuracy is the mass of the most likely label in each cell
        let acc_m: f64 = (0..4).map(|m| (0..4).map(|y| 0.25 * mk[y][m]).fold(0.0, f64::max)).sum();
        let acc_mw: f64 = (0..16)
            .map(|mw| (0..4).map(|y| 0.25 * mk[y][mw / 4] * w[y][mw % 4]).fold(0.0, f64::max))
            .sum();
        let oracle = acc_mw - acc_m;
        assert!((g.gain - oracle).abs() < 1e-12);
        assert!((g.gain - expected).abs() < 1e-12);
        assert!(!g.redundant);
    }
}

#[test]
fn optimal_encoder_matches_all_maps() {
    use rand::Rng;
    let mut rng = random::seeded(5);
    for _ in 0..60 {
        let nb = rng.random_range(2..=6);
        let ny = rng.random_range(2..=3);
        let state = random::state(&mut rng, nb, ny);
        let na = rng.random_range(2..=3);
        let loss = random::loss(&mut rng, na, ny);
        for k in 1..=nb {
            let sol = optimal_encoder(&state, BudgetSpec::new(k).unwrap(), &Objective::Loss(loss.clone())).unwrap();
            // every map B -> {0..k-1}, each message decided by its own best action
            let mut map = vec![0usize; nb];
            let mut best = f64::INFINITY;
            'outer: loop {
                let mut cells = vec![vec![0.0; ny]; k];
                for b in 0..nb {
                    for y in 0..ny {
                        cells[map[b]][y] += state.joint(b, y);
                    }
                }
                let v: f64 = cells
                    .iter()
                    .map(|c| {
                        loss.to_rows()
                            .iter()
                            .map(|l| l.iter().zip(c).map(|(a, b)| a * b).sum::<f64>())
                            .fold(f64::INFINITY, f64::min)
                    })
                    .sum();
                best = best.min(v);
                for i in 0..nb {
                    map[i] += 1;
                    if map[i] < k {
                        continue 'outer;
                    }
                    map[i] = 0;
                }
                break;
            }
            assert!((sol.value - best).abs() < 1e-12, "k={k} got {} oracle {best}", sol.value);
        }
    }
}

fn three_symbol_state() -> InformationState {
    let y = FiniteSpace::indexed("Y", 2);
    let posts = [[0.9, 0.1], [0.5, 0.5], [0.2, 0.8]]
        .iter()
        .map(|p| Distribution::new(y.clone(), p.to_vec()).unwrap())
        .collect();
    InformationState::new("B", FiniteSpace::indexed("B", 3), vec![0.3, 0.4, 0.3], posts).unwrap()
}

#[test]
fn three_symbol_budget_two_by_enumeration() {
    let s = three_symbol_state();
    let zo = [[0.0, 1.0], [1.0, 0.0]];
    let cell = |members: &[usize]| -> f64 {
        let w: Vec<f64> = (0..2)
            .map(|y| members.iter().map(|&b| s.weight(b) * s.posterior(b).probs()[y]).sum())
            .collect();
        zo.iter().map(|l| l[0] * w[0] + l[1] * w[1]).fold(f64::INFINITY, f64::min)
    };
    let candidates = [
        cell(&[0, 1, 2]),
        cell(&[0, 1]) + cell(&[2]),
        cell(&[0, 2]) + cell(&[1]),
        cell(&[0]) + cell(&[1, 2]),
    ];
    let oracle = candidates.iter().copied().fold(f64::INFINITY, f64::min);
    let sol = optimal_encoder(&s, BudgetSpec::new(2).unwrap(), &Objective::Loss(LossMatrix::zero_one(2))).unwrap();
    assert!((sol.value - oracle).abs() < 1e-15);
}

#[test]
fn brier_tax_of_merge_by_direct_arithmetic() {
    let s = three_symbol_state();
    let enc = Encoder::from_partition(&[0, 1, 1]);
    let merged = apply_encoder(&s, &enc).unwrap();
    let pm = merged.posterior(1).probs().to_vec();
    let direct: f64 = [1usize, 2]
        .iter()
        .map(|&h| {
            let p = s.posterior(h).probs();
            s.weight(h) * ((p[0] - pm[0]).powi(2) + (p[1] - pm[1]).powi(2))
        })
        .sum();
    let r = communication_tax(&s, enc.kernel(), ScoringRule::Brier).unwrap();
    assert!((r.gap - direct).abs() < 1e-15);
    assert!((r.expected_divergence - direct).abs() < 1e-15);
}

#[test]
fn chain_terms_match_exhaustive_joint() {
    let k = symmetric(4, 0.9);
    // cells over (y, m0, m1, m2, m3) with m0 = y
    let mut cells = Vec::new();
    for y in 0..4 {
        for m1 in 0..4 {
            for m2 in 0..4 {
                for m3 in 0..4 {
                    cells.push(([y, y, m1, m2, m3], 0.25 * k[y][m1] * k[m1][m2] * k[m2][m3]));
                }
            }
        }
    }
    let initial = InformationState::from_experiment("M0", &Distribution::uniform(FiniteSpace::indexed("Y", 4)), &Kernel::identity(4)).unwrap();
    let hop = Kernel::symmetric(4, 0.9).unwrap();
    let report = chain_decomposition(&ChainSpec::new(initial, vec![hop.clone(), hop.clone(), hop]).unwrap()).unwrap();
    for stage in 1..=3 {
        let projected: Vec<(usize, usize, usize, f64)> =
            cells.iter().map(|(c, p)| (c[0], c[stage], c[stage + 1], *p)).collect();
        assert!((report.terms[stage - 1] - cmi_cells(&projected)).abs() < 1e-12);
    }
    assert!((report.total - report.end_to_end).abs() < 1e-12);
}

#[test]
fn review_on_binary_symmetric_state_matches_subsets() {
    let prior = Distribution::uniform(FiniteSpace::indexed("Y", 2));
    let k = Kernel::symmetric(2, 0.8).unwrap();
    let state = InformationState::from_experiment("H", &prior, &k).unwrap();
    let loss = LossMatrix::zero_one(2);
    for cost in [0.0, 0.1, 0.15, 0.2, 0.25, 0.5] {
        let p = ReviewProblem::with_constant_cost(state.clone(), loss.clone(), cost).unwrap();
        let oracle = review_subset_oracle(&joint_of(&[0.5, 0.5], &k.to_rows()), &loss.to_rows(), &[cost, cost]);
        assert!((optimal_review(&p).value - oracle).abs() < 1e-15);
    }
}

#[test]
fn relay_depth_scenario_matches_kernel_powers() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/relay_depth.toml")).unwrap();
    let cfg = ScenarioConfig::from_toml(&src).unwrap();
    let table = run(&cfg, &RunOptions::default()).unwrap();
    let acc = table.numbers("accuracy").unwrap();
    let depths = table.numbers("depth").unwrap();
    let signal = symmetric(4, 0.95);
    let hop = symmetric(4, 0.9);
    for (d, a) in depths.iter().zip(&acc) {
        let mut c = signal.clone();
        for _ in 0..*d as usize {
            c = matmul(&c, &hop);
        }
        // Bayes terminal picks the most likely label per symbol
        let oracle: f64 = (0..4).map(|m| (0..4).map(|y| 0.25 * c[y][m]).fold(0.0, f64::max)).sum();
        assert!((a - oracle).abs() < 1e-12, "depth {d}: {a} vs {oracle}");
    }
}
