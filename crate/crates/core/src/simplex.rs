//! Dense phase-one simplex for `A x = b, x ≥ 0`.
//!
//! Rows with negative right-hand side are negated, one artificial column is
//! added per row, and the sum of artificials is minimised with Bland's rule.
//! A positive optimum proves infeasibility; the optimal phase-one duals,
//! mapped back through the row negations, form a Farkas vector `y` with
//! `Aᵀy ≤ 0` and `bᵀy > 0`.

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible {
        x: Vec<f64>,
    },
    Infeasible {
        /// Farkas vector, one entry per constraint row.
        certificate: Vec<f64>,
        /// Minimum total violation reached by phase one.
        violation: f64,
    },
}

/// Solves the phase-one problem; `tol` is the largest residual violation
/// still counted as feasible.
pub fn phase_one(a: &[Vec<f64>], b: &[f64], tol: f64) -> Feasibility {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert_eq!(b.len(), m, "one right-hand side per row");

    let width = n + m + 1;
    let mut sign = vec![1.0; m];
    let mut t = vec![0.0; m * width];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        for j in 0..n {
            t[i * width + j] = sign[i] * a[i][j];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + width - 1] = sign[i] * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cost = |j: usize| if j >= n && j < n + m { 1.0 } else { 0.0 };

    // reduced costs r_j = c_j - Σ_i c_B(i) t_ij
    let mut reduced = vec![0.0; width];
    let recompute = |t: &[f64], basis: &[usize], reduced: &mut [f64]| {
        for j in 0..width {
            let mut r = if j < width - 1 { cost(j) } else { 0.0 };
            for (i, &bi) in basis.iter().enumerate() {
                r -= cost(bi) * t[i * width + j];
            }
            reduced[j] = r;
        }
    };
    recompute(&t, &basis, &mut reduced);

    // Bland's rule terminates; the bound only guards against float trouble.
    let max_iter = 50 * (n + m + 10) * (m + 10);
    for _ in 0..max_iter {
        let Some(enter) = (0..n + m).find(|&j| reduced[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let coef = t[i * width + enter];
            if coef > PIVOT_EPS {
                let ratio = t[i * width + width - 1] / coef;
                let better = ratio < best - PIVOT_EPS
                    || (ratio <= best + PIVOT_EPS && leave.is_some_and(|l| basis[i] < basis[l]));
                if leave.is_none() || better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let Some(r) = leave else { break };
        let piv = t[r * width + enter];
        for j in 0..width {
            t[r * width + j] /= piv;
        }
        for i in 0..m {
            if i != r {
                let f = t[i * width + enter];
                if f != 0.0 {
                    for j in 0..width {
                        t[i * width + j] -= f * t[r * width + j];
                    }
                }
            }
        }
        basis[r] = enter;
        recompute(&t, &basis, &mut reduced);
    }

    let violation: f64 = basis
        .iter()
        .enumerate()
        .map(|(i, &bi)| cost(bi) * t[i * width + width - 1])
        .sum();
    if violation <= tol {
        let mut x = vec![0.0; n];
        for (i, &bi) in basis.iter().enumerate() {
            if bi < n {
                x[bi] = t[i * width + width - 1].max(0.0);
            }
        }
        return Feasibility::Feasible { x };
    }
    // y_i = Σ_k c_B(k) (B⁻¹)_{k,i}; B⁻¹ sits in the artificial columns.
    let certificate = (0..m)
        .map(|i| {
            let y: f64 = basis
                .iter()
                .enumerate()
                .map(|(k, &bk)| cost(bk) * t[k * width + n + i])
                .sum();
            sign[i] * y
        })
        .collect();
    Feasibility::Infeasible {
        certificate,
        violation,
    }
}
