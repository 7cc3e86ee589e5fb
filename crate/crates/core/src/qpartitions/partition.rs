use std::fmt;

use serde::{Deserialize, Serialize};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a partition from arbitrary parts (sorted, zeros dropped).
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0) as usize;
        Self((0..width).map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32).collect())
    }

    /// κ(λ) = Σ λ_i(λ_i − 2i + 1), i from 1.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// n(λ) = Σ (i−1) λ_i.
    pub fn n(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &p)| i as i64 * p as i64).sum()
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.part(j) - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Whether the diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n`, by increasing size.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// Partitions contained in both `self` and `other`.
    pub fn common_subpartitions(&self, other: &Partition) -> Vec<Partition> {
        let len = self.len().min(other.len());
        let bound: Vec<u32> = (0..len).map(|i| self.part(i).min(other.part(i))).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(i: usize, bound: &[u32], prev: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if i == bound.len() {
                return;
            }
            for p in 1..=bound[i].min(prev) {
                cur.push(p);
                rec(i + 1, bound, p, cur, out);
                cur.pop();
            }
        }
        rec(0, &bound, u32::MAX, &mut cur, &mut out);
        out
    }
}

impl From<&[u32]> for Partition {
    fn from(p: &[u32]) -> Self {
        Partition::new(p.to_vec())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
