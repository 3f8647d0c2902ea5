use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::Partition;

/// How the entropies of the two partitions are combined in the AMI denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmiNormalization {
    #[default]
    Arithmetic,
    Geometric,
    Max,
    Min,
}

impl AmiNormalization {
    fn combine(self, h1: f64, h2: f64) -> f64 {
        match self {
            Self::Arithmetic => 0.5 * (h1 + h2),
            Self::Geometric => (h1 * h2).sqrt(),
            Self::Max => h1.max(h2),
            Self::Min => h1.min(h2),
        }
    }
}

/// Co-occurrence counts of two labelings over the same nodes.
///
/// Rows follow the first labeling, columns the second, both in order of
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<usize>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    total: usize,
}

impl ContingencyTable {
    pub fn new(first: &[usize], second: &[usize]) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::NodeSetMismatch(first.len(), second.len()));
        }
        let first = dense(first);
        let second = dense(second);
        let r = first.iter().max().map_or(0, |&x| x + 1);
        let c = second.iter().max().map_or(0, |&x| x + 1);
        let mut counts = vec![vec![0; c]; r];
        let mut rows = vec![0; r];
        let mut cols = vec![0; c];
        for (&a, &b) in first.iter().zip(&second) {
            counts[a][b] += 1;
            rows[a] += 1;
            cols[b] += 1;
        }
        Ok(Self {
            counts,
            rows,
            cols,
            total: first.len(),
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.cols
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// True when each row has exactly one nonzero cell and vice versa.
    pub fn is_bijection(&self) -> bool {
        self.rows.len() == self.cols.len()
            && self
                .counts
                .iter()
                .zip(&self.rows)
                .all(|(row, &sum)| row.iter().filter(|&&x| x > 0).count() == 1 && row.contains(&sum))
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.total as f64;
        let mut mi = 0.0;
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &nij) in row.iter().enumerate() {
                if nij > 0 {
                    let nij = nij as f64;
                    mi += nij / n * (n * nij / (self.rows[i] as f64 * self.cols[j] as f64)).ln();
                }
            }
        }
        mi.max(0.0)
    }

    /// Expected mutual information under random permutations of the labels
    /// with both marginals held fixed.
    pub fn expected_mutual_information(&self) -> f64 {
        let n = self.total;
        let lf = log_factorials(n);
        let nf = n as f64;
        let mut emi = 0.0;
        for &a in &self.rows {
            for &b in &self.cols {
                let lo = (a + b).saturating_sub(n).max(1);
                let hi = a.min(b);
                let base = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
                for nij in lo..=hi {
                    let log_p = base - lf[nij] - lf[a - nij] - lf[b - nij] - lf[n + nij - a - b];
                    let x = nij as f64;
                    emi += x / nf * (nf * x / (a as f64 * b as f64)).ln() * log_p.exp();
                }
            }
        }
        emi
    }

    /// `row,col,count` lines for the nonzero cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,count\n");
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x > 0 {
                    let _ = writeln!(out, "{i},{j},{x}");
                }
            }
        }
        out
    }
}

fn dense(labels: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = ids.len();
            *ids.entry(l).or_insert(next)
        })
        .collect()
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    for k in 1..=n {
        out[k] = out[k - 1] + (k as f64).ln();
    }
    out
}

fn entropy(marginals: &[usize], n: usize) -> f64 {
    let n = n as f64;
    marginals
        .iter()
        .filter(|&&x| x > 0)
        .map(|&x| {
            let p = x as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Adjusted mutual information of two labelings of the same nodes.
///
/// Identical labelings (up to renaming) score 1. When the denominator
/// vanishes otherwise, the score is 0.
pub fn ami_labels(first: &[usize], second: &[usize], normalization: AmiNormalization) -> Result<f64> {
    let table = ContingencyTable::new(first, second)?;
    if table.is_bijection() {
        return Ok(1.0);
    }
    let n = table.total();
    let h1 = entropy(table.row_sums(), n);
    let h2 = entropy(table.col_sums(), n);
    let mi = table.mutual_information();
    let emi = table.expected_mutual_information();
    let denominator = normalization.combine(h1, h2) - emi;
    if denominator.abs() <= 1e-12 * (1.0 + h1.max(h2)) {
        return Ok(0.0);
    }
    Ok((mi - emi) / denominator)
}

/// [`ami_labels`] with arithmetic-mean normalization on two partitions.
pub fn ami(first: &Partition, second: &Partition) -> Result<f64> {
    ami_labels(first.assignment(), second.assignment(), AmiNormalization::Arithmetic)
}
