//! Brute-force oracles shared by the integration suites. Everything here works
//! on raw nested vectors so it shares no code with the library.
#![allow(dead_code)]

use std::collections::HashMap;

/// `joint[h][y] = prior[y] * kernel[y][h]`.
pub fn joint_of(prior: &[f64], kernel: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n_h = kernel[0].len();
    (0..n_h)
        .map(|h| (0..prior.len()).map(|y| prior[y] * kernel[y][h]).collect())
        .collect()
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Minimum expected loss over every deterministic map from symbols to
/// actions, enumerated one map at a time.
pub fn rule_enumeration_risk(joint: &[Vec<f64>], loss: &[Vec<f64>]) -> f64 {
    let n_h = joint.len();
    let n_a = loss.len();
    let mut rule = vec![0usize; n_h];
    let mut best = f64::INFINITY;
    loop {
        let mut v = 0.0;
        for h in 0..n_h {
            for (y, p) in joint[h].iter().enumerate() {
                v += p * loss[rule[h]][y];
            }
        }
        best = best.min(v);
        let mut i = 0;
        loop {
            if i == n_h {
                return best;
            }
            rule[i] += 1;
            if rule[i] < n_a {
                break;
            }
            rule[i] = 0;
            i += 1;
        }
    }
}

/// Minimum over all `2^|H|` escalation subsets; automated symbols take their
/// best action.
pub fn review_subset_oracle(joint: &[Vec<f64>], loss: &[Vec<f64>], review: &[f64]) -> f64 {
    let n_h = joint.len();
    let mass: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let auto: Vec<f64> = joint
        .iter()
        .map(|r| {
            loss.iter()
                .map(|l| l.iter().zip(r).map(|(a, b)| a * b).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut best = f64::INFINITY;
    for subset in 0u32..(1 << n_h) {
        let v: f64 = (0..n_h)
            .map(|h| if subset >> h & 1 == 1 { mass[h] * review[h] } else { auto[h] })
            .sum();
        best = best.min(v);
    }
    best
}

/// `I(Y; H | M)` in nats from `(y, h, m, p)` cells.
pub fn cmi_cells(cells: &[(usize, usize, usize, f64)]) -> f64 {
    let mut ym: HashMap<(usize, usize), f64> = HashMap::new();
    let mut hm: HashMap<(usize, usize), f64> = HashMap::new();
    let mut m: HashMap<usize, f64> = HashMap::new();
    let mut yhm: HashMap<(usize, usize, usize), f64> = HashMap::new();
    for &(y, h, mm, p) in cells {
        *ym.entry((y, mm)).or_default() += p;
        *hm.entry((h, mm)).or_default() += p;
        *m.entry(mm).or_default() += p;
        *yhm.entry((y, h, mm)).or_default() += p;
    }
    yhm.iter()
        .filter(|(_, &p)| p > 0.0)
        .map(|(&(y, h, mm), &p)| p * (p * m[&mm] / (ym[&(y, mm)] * hm[&(h, mm)])).ln())
        .sum()
}

pub fn symmetric(n: usize, f: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f } else { (1.0 - f) / (n - 1) as f64 }).collect())
        .collect()
}
