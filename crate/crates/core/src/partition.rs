//! Set partitions as restricted growth strings.
//!
//! A restricted growth string `a` of length `n` has `a[0] = 0` and
//! `a[i] ≤ 1 + max(a[..i])`; each string names one partition of `{0, .., n-1}`
//! with blocks numbered by first appearance, so relabelled duplicates never
//! occur. Strings are produced in lexicographic order.

/// Iterator over restricted growth strings with at most `max_blocks` blocks.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Vec<usize>,
    // prefix_max[i] = max(current[..=i])
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(n: usize, max_blocks: usize) -> Self {
        Partitions {
            current: vec![0; n],
            prefix_max: vec![0; n],
            max_blocks,
            started: false,
            done: n == 0 || max_blocks == 0,
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let n = self.current.len();
        for i in (1..n).rev() {
            let limit = (self.prefix_max[i - 1] + 1).min(self.max_blocks - 1);
            if self.current[i] < limit {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Number of blocks in a restricted growth string.
pub fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |m| m + 1)
}

/// Blocks of a restricted growth string, each sorted ascending.
pub fn blocks(rgs: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); block_count(rgs)];
    for (i, &b) in rgs.iter().enumerate() {
        out[b].push(i);
    }
    out
}

/// Renders `{0,2}|{1}`.
pub fn format_partition(rgs: &[usize]) -> String {
    blocks(rgs)
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Count of partitions of an `n`-set into at most `k` blocks (sum of
/// Stirling numbers of the second kind).
pub fn count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    // s[j] = S(i, j) for the current i
    let mut s = vec![0u128; k + 1];
    s[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            s[j] = j as u128 * s[j] + s[j - 1];
        }
        s[0] = 0;
    }
    s[1..].iter().sum()
}
