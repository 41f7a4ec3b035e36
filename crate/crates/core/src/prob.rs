//! Exact finite probability: labeled finite sets, distributions, row-stochastic
//! kernels, and enumerated joint tables.
//!
//! Everything is dense and enumerated. A [`JointModel`] is a small Bayesian
//! network rooted at the label variable; [`JointModel::full_joint`] expands it
//! into a [`JointTable`] indexed row-major in declaration order, from which
//! marginals and posteriors are read off by summation.

use std::fmt;

use crate::error::{input, Error, Result};

/// Tolerance for structural checks (unit sums, stochastic rows).
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Tolerance for identity checks between two computed quantities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Environment variable overriding the joint enumeration cap.
pub const ENUM_CAP_ENV: &str = "DELNET_ENUM_CAP";

/// Enumeration caps shared by every exhaustive routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of cells in any enumerated joint table.
    pub enumeration_cap: u128,
    /// Maximum alphabet size for exhaustive partition search.
    pub partition_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 10_000_000,
            partition_cap: 12,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration cap taken from `DELNET_ENUM_CAP` if set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(ENUM_CAP_ENV) {
            limits.enumeration_cap = raw.trim().parse().map_err(|_| {
                Error::Config(format!("{ENUM_CAP_ENV}={raw:?} is not a positive integer"))
            })?;
        }
        Ok(limits)
    }

    pub(crate) fn check(&self, what: &str, size: u128) -> Result<()> {
        if size > self.enumeration_cap {
            return Err(Error::EnumerationLimit {
                what: what.to_string(),
                size,
                cap: self.enumeration_cap,
            });
        }
        Ok(())
    }
}

/// A finite labeled set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    id: String,
    labels: Vec<String>,
}

impl FiniteSpace {
    pub fn new(id: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return input("finite space must have at least one element");
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return input(format!("duplicate label {l:?} in space"));
            }
        }
        Ok(FiniteSpace {
            id: id.into(),
            labels,
        })
    }

    /// A space `{0, .., n-1}` labeled by the decimal indices.
    pub fn indexed(id: impl Into<String>, n: usize) -> Self {
        assert!(n > 0, "finite space must be nonempty");
        FiniteSpace {
            id: id.into(),
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// Row-major product of several spaces; labels are joined with `,`.
    pub fn product(id: impl Into<String>, parts: &[&FiniteSpace]) -> Self {
        let mut labels = vec![String::new()];
        for (k, p) in parts.iter().enumerate() {
            let mut next = Vec::with_capacity(labels.len() * p.len());
            for prefix in &labels {
                for l in &p.labels {
                    if k == 0 {
                        next.push(l.clone());
                    } else {
                        next.push(format!("{prefix},{l}"));
                    }
                }
            }
            labels = next;
        }
        FiniteSpace {
            id: id.into(),
            labels,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn outcome(&self, index: usize) -> Result<Outcome> {
        if index >= self.len() {
            return input(format!(
                "index {index} out of range for space {:?} of size {}",
                self.id,
                self.len()
            ));
        }
        Ok(Outcome {
            space_id: self.id.clone(),
            index,
            label: self.labels[index].clone(),
        })
    }
}

/// One element of a [`FiniteSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub space_id: String,
    pub index: usize,
    pub label: String,
}

fn check_simplex(probs: &[f64], what: &str) -> Result<()> {
    let mut sum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return input(format!("{what}: entry {i} = {p} is not a nonnegative number"));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > STRUCTURAL_TOL {
        return input(format!("{what}: entries sum to {sum:.17}, not 1"));
    }
    Ok(())
}

/// A probability vector over a finite space.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    space: FiniteSpace,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(space: FiniteSpace, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != space.len() {
            return input(format!(
                "distribution has {} entries but space {:?} has {} elements",
                probs.len(),
                space.id(),
                space.len()
            ));
        }
        check_simplex(&probs, "distribution")?;
        Ok(Distribution { space, probs })
    }

    /// A distribution over an anonymous indexed space.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return input("distribution must have at least one entry");
        }
        Self::new(FiniteSpace::indexed("", probs.len()), probs)
    }

    /// Rescales nonnegative weights to unit mass.
    pub fn normalized(space: FiniteSpace, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return input("cannot normalize weights with zero, negative or non-finite mass");
        }
        let probs = weights.into_iter().map(|w| w / total).collect();
        Self::new(space, probs)
    }

    pub fn uniform(space: FiniteSpace) -> Self {
        let n = space.len();
        Distribution {
            space,
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point(space: FiniteSpace, index: usize) -> Self {
        let mut probs = vec![0.0; space.len()];
        probs[index] = 1.0;
        Distribution { space, probs }
    }

    pub(crate) fn from_parts_unchecked(space: FiniteSpace, probs: Vec<f64>) -> Self {
        debug_assert_eq!(space.len(), probs.len());
        Distribution { space, probs }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        self.probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum()
    }

    /// Largest elementwise difference to another vector of the same length.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p:.6}")?;
        }
        write!(f, ")")
    }
}

/// A row-stochastic matrix: row `i` is the conditional law of the output
/// given input `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    from: FiniteSpace,
    to: FiniteSpace,
    data: Vec<f64>,
}

impl Kernel {
    pub fn with_spaces(from: FiniteSpace, to: FiniteSpace, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != from.len() {
            return input(format!(
                "kernel has {} rows but input space has {} elements",
                rows.len(),
                from.len()
            ));
        }
        let mut data = Vec::with_capacity(from.len() * to.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != to.len() {
                return input(format!(
                    "kernel row {i} has {} entries, expected {}",
                    row.len(),
                    to.len()
                ));
            }
            check_simplex(row, &format!("kernel row {i}"))?;
            data.extend_from_slice(row);
        }
        Ok(Kernel { from, to, data })
    }

    /// A kernel between anonymous indexed spaces.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_in = rows.len();
        let n_out = rows.first().map_or(0, Vec::len);
        if n_in == 0 || n_out == 0 {
            return input("kernel must have at least one row and one column");
        }
        Self::with_spaces(
            FiniteSpace::indexed("", n_in),
            FiniteSpace::indexed("", n_out),
            rows,
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Kernel {
            from: FiniteSpace::indexed("", n),
            to: FiniteSpace::indexed("", n),
            data,
        }
    }

    /// Every input maps to the same output law.
    pub fn constant(n_in: usize, dist: &Distribution) -> Self {
        let mut data = Vec::with_capacity(n_in * dist.len());
        for _ in 0..n_in {
            data.extend_from_slice(dist.probs());
        }
        Kernel {
            from: FiniteSpace::indexed("", n_in),
            to: dist.space().clone(),
            data,
        }
    }

    /// Keeps the symbol with probability `fidelity`, otherwise moves to one of
    /// the other `n - 1` symbols uniformly.
    pub fn symmetric(n: usize, fidelity: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return input(format!("fidelity {fidelity} outside [0, 1]"));
        }
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let off = (1.0 - fidelity) / (n - 1) as f64;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { fidelity } else { off }).collect())
            .collect();
        Self::new(rows)
    }

    /// Deterministic kernel `i -> map[i]` into `n_out` symbols.
    pub fn deterministic(map: &[usize], n_out: usize) -> Result<Self> {
        let mut rows = vec![vec![0.0; n_out]; map.len()];
        for (i, &j) in map.iter().enumerate() {
            if j >= n_out {
                return input(format!("map sends {i} to {j}, outside 0..{n_out}"));
            }
            rows[i][j] = 1.0;
        }
        Self::new(rows)
    }

    pub fn relabel(mut self, from: FiniteSpace, to: FiniteSpace) -> Result<Self> {
        if from.len() != self.from.len() || to.len() != self.to.len() {
            return input("relabel: space sizes do not match kernel dimensions");
        }
        self.from = from;
        self.to = to;
        Ok(self)
    }

    pub fn from_space(&self) -> &FiniteSpace {
        &self.from
    }

    pub fn to_space(&self) -> &FiniteSpace {
        &self.to
    }

    pub fn n_in(&self) -> usize {
        self.from.len()
    }

    pub fn n_out(&self) -> usize {
        self.to.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.n_out();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_out() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n_out())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// True when every row is a point mass.
    pub fn is_deterministic(&self) -> bool {
        self.rows().all(|r| r.iter().all(|&p| p == 0.0 || p == 1.0))
    }

    /// Matrix product `self · next`.
    pub fn compose(&self, next: &Kernel) -> Result<Kernel> {
        if self.n_out() != next.n_in() {
            return input(format!(
                "cannot compose kernel with {} outputs into kernel with {} inputs",
                self.n_out(),
                next.n_in()
            ));
        }
        let (n, m, p) = (self.n_in(), self.n_out(), next.n_out());
        let mut data = vec![0.0; n * p];
        for i in 0..n {
            for j in 0..m {
                let a = self.data[i * m + j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..p {
                    data[i * p + k] += a * next.data[j * p + k];
                }
            }
        }
        Ok(Kernel {
            from: self.from.clone(),
            to: next.to.clone(),
            data,
        })
    }

    /// Pushes a distribution on the input space forward.
    pub fn push_forward(&self, dist: &Distribution) -> Result<Distribution> {
        if dist.len() != self.n_in() {
            return input("push_forward: distribution length does not match kernel input");
        }
        let mut out = vec![0.0; self.n_out()];
        for (i, &p) in dist.probs().iter().enumerate() {
            for (o, &k) in out.iter_mut().zip(self.row(i)) {
                *o += p * k;
            }
        }
        Ok(Distribution::from_parts_unchecked(self.to.clone(), out))
    }

    pub fn max_abs_diff(&self, other: &Kernel) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_data_unchecked(from: FiniteSpace, to: FiniteSpace, data: Vec<f64>) -> Self {
        debug_assert_eq!(from.len() * to.len(), data.len());
        Kernel { from, to, data }
    }
}

/// Composes two kernels; see [`Kernel::compose`].
pub fn compose(first: &Kernel, second: &Kernel) -> Result<Kernel> {
    first.compose(second)
}

/// A named variable with its finite space.
#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub space: FiniteSpace,
}

#[derive(Debug, Clone, PartialEq)]
struct Factor {
    var: Variable,
    parents: Vec<usize>,
    kernel: Kernel,
}

/// Joint law of a label variable and signals, each signal drawn from a kernel
/// on the product of its declared parents (row-major in parent order).
#[derive(Debug, Clone, PartialEq)]
pub struct JointModel {
    label: Variable,
    prior: Distribution,
    factors: Vec<Factor>,
}

impl JointModel {
    pub fn new(label_name: impl Into<String>, prior: Distribution) -> Self {
        let name = label_name.into();
        JointModel {
            label: Variable {
                name,
                space: prior.space().clone(),
            },
            prior,
            factors: Vec::new(),
        }
    }

    /// Adds a variable drawn from `kernel` given `parents`, which must already
    /// be declared. The variable's space is the kernel's output space.
    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        parents: &[&str],
        kernel: Kernel,
    ) -> Result<&mut Self> {
        let name = name.into();
        if self.position(&name).is_some() {
            return input(format!("variable {name:?} declared twice"));
        }
        let mut parent_idx = Vec::with_capacity(parents.len());
        let mut rows = 1usize;
        for p in parents {
            let idx = self
                .position(p)
                .ok_or_else(|| Error::Input(format!("parent {p:?} of {name:?} is not declared before it")))?;
            rows *= self.variable(idx).space.len();
            parent_idx.push(idx);
        }
        if kernel.n_in() != rows {
            return input(format!(
                "kernel for {name:?} has {} rows, parents' product has {rows}",
                kernel.n_in()
            ));
        }
        self.factors.push(Factor {
            var: Variable {
                name,
                space: kernel.to_space().clone(),
            },
            parents: parent_idx,
            kernel,
        });
        Ok(self)
    }

    pub fn label(&self) -> &Variable {
        &self.label
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    /// All variables in declaration order, label first.
    pub fn variables(&self) -> Vec<&Variable> {
        std::iter::once(&self.label)
            .chain(self.factors.iter().map(|f| &f.var))
            .collect()
    }

    fn variable(&self, idx: usize) -> &Variable {
        if idx == 0 {
            &self.label
        } else {
            &self.factors[idx - 1].var
        }
    }

    fn position(&self, name: &str) -> Option<usize> {
        if self.label.name == name {
            return Some(0);
        }
        self.factors
            .iter()
            .position(|f| f.var.name == name)
            .map(|i| i + 1)
    }

    pub fn cell_count(&self) -> u128 {
        self.variables().iter().map(|v| v.space.len() as u128).product()
    }

    pub fn full_joint(&self) -> Result<JointTable> {
        self.full_joint_with(&Limits::default())
    }

    /// Enumerates every assignment; cell probability is the prior times the
    /// selected kernel entries.
    pub fn full_joint_with(&self, limits: &Limits) -> Result<JointTable> {
        limits.check("enumerating the joint model", self.cell_count())?;
        let vars: Vec<Variable> = self.variables().into_iter().cloned().collect();
        let dims: Vec<usize> = vars.iter().map(|v| v.space.len()).collect();
        let total: usize = dims.iter().product();
        let mut probs = Vec::with_capacity(total);
        let mut assignment = vec![0usize; dims.len()];
        for _ in 0..total {
            let mut p = self.prior.probs()[assignment[0]];
            for (k, f) in self.factors.iter().enumerate() {
                if p == 0.0 {
                    break;
                }
                let mut row = 0;
                for &pi in &f.parents {
                    row = row * dims[pi] + assignment[pi];
                }
                p *= f.kernel.get(row, assignment[k + 1]);
            }
            probs.push(p);
            advance(&mut assignment, &dims);
        }
        Ok(JointTable { vars, probs })
    }

    /// Posterior of the label given observed variables, via the full joint.
    pub fn posterior(&self, given: &[(&str, usize)]) -> Result<Distribution> {
        self.full_joint()?.posterior(&self.label.name, given)
    }
}

/// Row-major odometer increment; returns false after wrapping to all zeros.
pub(crate) fn advance(assignment: &mut [usize], dims: &[usize]) -> bool {
    for k in (0..dims.len()).rev() {
        assignment[k] += 1;
        if assignment[k] < dims[k] {
            return true;
        }
        assignment[k] = 0;
    }
    false
}

/// A dense probability table over named variables, row-major in variable order.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    vars: Vec<Variable>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new(vars: Vec<Variable>, probs: Vec<f64>) -> Result<Self> {
        let cells: usize = vars.iter().map(|v| v.space.len()).product();
        if vars.is_empty() || cells != probs.len() {
            return input(format!(
                "joint table has {} cells but variables need {cells}",
                probs.len()
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return input(format!("duplicate variable {:?} in joint table", v.name));
            }
        }
        check_simplex(&probs, "joint table")?;
        Ok(JointTable { vars, probs })
    }

    pub(crate) fn from_parts_unchecked(vars: Vec<Variable>, probs: Vec<f64>) -> Self {
        JointTable { vars, probs }
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.space.len()).collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::Input(format!("unknown variable {name:?}")))
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability of one full assignment, given as indices in variable order.
    pub fn prob(&self, assignment: &[usize]) -> f64 {
        let dims = self.dims();
        let mut idx = 0;
        for (a, d) in assignment.iter().zip(&dims) {
            idx = idx * d + a;
        }
        self.probs[idx]
    }

    /// Iterates `(assignment, probability)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let dims = self.dims();
        let mut assignment = vec![0usize; dims.len()];
        self.probs.iter().map(move |&p| {
            let current = assignment.clone();
            advance(&mut assignment, &dims);
            (current, p)
        })
    }

    /// Sums out every variable not in `names`; the result is ordered as `names`.
    pub fn marginal(&self, names: &[&str]) -> Result<JointTable> {
        if names.is_empty() {
            return input("marginal needs at least one variable");
        }
        let mut keep = Vec::with_capacity(names.len());
        for n in names {
            let i = self.var_index(n)?;
            if keep.contains(&i) {
                return input(format!("variable {n:?} listed twice"));
            }
            keep.push(i);
        }
        let vars: Vec<Variable> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let out_dims: Vec<usize> = vars.iter().map(|v| v.space.len()).collect();
        let mut probs = vec![0.0; out_dims.iter().product()];
        for (a, p) in self.cells() {
            let mut idx = 0;
            for (&k, d) in keep.iter().zip(&out_dims) {
                idx = idx * d + a[k];
            }
            probs[idx] += p;
        }
        Ok(JointTable { vars, probs })
    }

    /// Conditional law of `target` given an assignment of observed variables.
    pub fn posterior(&self, target: &str, given: &[(&str, usize)]) -> Result<Distribution> {
        let t = self.var_index(target)?;
        let mut observed = Vec::with_capacity(given.len());
        for (name, value) in given {
            let i = self.var_index(name)?;
            if *value >= self.vars[i].space.len() {
                return input(format!("value {value} out of range for {name:?}"));
            }
            observed.push((i, *value));
        }
        let mut weights = vec![0.0; self.vars[t].space.len()];
        for (a, p) in self.cells() {
            if observed.iter().all(|&(i, v)| a[i] == v) {
                weights[a[t]] += p;
            }
        }
        let mass: f64 = weights.iter().sum();
        if mass <= 0.0 {
            let desc: Vec<String> = given.iter().map(|(n, v)| format!("{n}={v}")).collect();
            return Err(Error::NullEvidence(desc.join(", ")));
        }
        let probs = weights.into_iter().map(|w| w / mass).collect();
        Ok(Distribution::from_parts_unchecked(
            self.vars[t].space.clone(),
            probs,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_model(prior: Vec<f64>, rows: Vec<Vec<f64>>) -> JointModel {
        let mut m = JointModel::new("Y", Distribution::from_probs(prior).unwrap());
        m.add_variable("B", &["Y"], Kernel::new(rows).unwrap()).unwrap();
        m
    }

    #[test]
    fn identity_signal_joint_is_diagonal() {
        let m = binary_model(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let j = m.full_joint().unwrap();
        assert_eq!(j.probs(), &[0.5, 0.0, 0.0, 0.5]);
        let y = j.marginal(&["Y"]).unwrap();
        assert_eq!(y.probs(), &[0.5, 0.5]);
        let post = j.posterior("Y", &[("B", 1)]).unwrap();
        assert_eq!(post.probs(), &[0.0, 1.0]);
    }

    #[test]
    fn independent_signal_cells_are_quarter() {
        let m = binary_model(vec![0.5, 0.5], vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        let j = m.full_joint().unwrap();
        assert!(j.probs().iter().all(|&p| p == 0.25));
    }

    #[test]
    fn uninformative_kernel_leaves_prior() {
        let m = binary_model(vec![0.3, 0.7], vec![vec![0.4, 0.6], vec![0.4, 0.6]]);
        let post = m.posterior(&[("B", 0)]).unwrap();
        assert!((post.probs()[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn marginal_onto_everything_is_unchanged() {
        let m = binary_model(vec![0.6, 0.4], vec![vec![0.8, 0.2], vec![0.3, 0.7]]);
        let j = m.full_joint().unwrap();
        assert_eq!(j.marginal(&["Y", "B"]).unwrap(), j);
    }

    #[test]
    fn unknown_variable_and_null_evidence() {
        let m = binary_model(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![1.0, 0.0]]);
        let j = m.full_joint().unwrap();
        assert!(matches!(j.marginal(&["Z"]), Err(Error::Input(_))));
        assert!(matches!(
            j.posterior("Y", &[("B", 1)]),
            Err(Error::NullEvidence(_))
        ));
    }

    #[test]
    fn enumeration_cap_names_size() {
        let mut m = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 10)));
        m.add_variable("B", &["Y"], Kernel::identity(10)).unwrap();
        let limits = Limits {
            enumeration_cap: 50,
            ..Limits::default()
        };
        match m.full_joint_with(&limits) {
            Err(Error::EnumerationLimit { size, cap, .. }) => {
                assert_eq!(size, 100);
                assert_eq!(cap, 50);
            }
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn compose_with_identity_both_sides() {
        let k = Kernel::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        assert_eq!(k.compose(&Kernel::identity(2)).unwrap().to_rows(), k.to_rows());
        assert_eq!(Kernel::identity(2).compose(&k).unwrap().to_rows(), k.to_rows());
        let bad = Kernel::identity(3);
        assert!(k.compose(&bad).is_err());
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(Distribution::from_probs(vec![0.5, 0.6]).is_err());
        assert!(Distribution::from_probs(vec![-0.1, 1.1]).is_err());
        assert!(Kernel::new(vec![vec![0.5, 0.5], vec![1.0]]).is_err());
        assert!(FiniteSpace::new("s", vec!["a".into(), "a".into()]).is_err());
        let mut m = JointModel::new("Y", Distribution::uniform(FiniteSpace::indexed("Y", 2)));
        assert!(m.add_variable("B", &["Z"], Kernel::identity(2)).is_err());
        assert!(m.add_variable("B", &["Y"], Kernel::identity(3)).is_err());
    }

    #[test]
    fn product_space_labels_are_row_major() {
        let a = FiniteSpace::indexed("a", 2);
        let b = FiniteSpace::new("b", vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let p = FiniteSpace::product("ab", &[&a, &b]);
        assert_eq!(p.labels()[4], "1,y");
        assert_eq!(p.len(), 6);
    }
}
