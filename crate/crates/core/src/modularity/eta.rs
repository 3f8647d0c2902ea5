use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which member of the τ-family (or a custom table) a set of weights came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaProvenance {
    Tau(f64),
    Strict,
    Custom,
}

/// Selector for the τ-family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauChoice {
    Tau(f64),
    Strict,
}

/// Smallest count that makes a community the strict majority of a size-`d` edge.
pub fn majority_threshold(d: usize) -> usize {
    d / 2 + 1
}

/// Hyper-parameters `η(c, d)` for `⌊d/2⌋ + 1 <= c <= d`.
///
/// Rows are indexed by edge size and hold the weights for ascending `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaWeights {
    provenance: EtaProvenance,
    rows: BTreeMap<usize, Vec<f64>>,
}

impl EtaWeights {
    /// τ-modularity weights `(c/d)^τ`.
    pub fn tau(tau: f64) -> Result<Self> {
        eta_from_tau(TauChoice::Tau(tau), 2)
    }

    /// Only pure edges (`c = d`) count.
    pub fn strict() -> Self {
        eta_from_tau(TauChoice::Strict, 2).expect("strict weights are always valid")
    }

    /// Arbitrary table; each row must have `d - ⌊d/2⌋` entries in `[0, 1]`.
    pub fn custom(rows: BTreeMap<usize, Vec<f64>>) -> Result<Self> {
        for (&d, row) in &rows {
            if d < 2 {
                return Err(Error::InvalidParameter(format!("eta row for size {d} < 2")));
            }
            let expected = d + 1 - majority_threshold(d);
            if row.len() != expected {
                return Err(Error::InvalidParameter(format!(
                    "eta row for size {d} needs {expected} values, got {}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Error::InvalidParameter(format!(
                    "eta row for size {d} has values outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            provenance: EtaProvenance::Custom,
            rows,
        })
    }

    pub fn provenance(&self) -> EtaProvenance {
        self.provenance
    }

    /// `η(c, d)`; zero for `c` not a strict majority, `None` when a custom
    /// table has no row for `d`.
    pub fn value(&self, c: usize, d: usize) -> Option<f64> {
        if d < 2 || c > d {
            return None;
        }
        if c < majority_threshold(d) {
            return Some(0.0);
        }
        match self.provenance {
            EtaProvenance::Tau(tau) => Some(tau_value(tau, c, d)),
            EtaProvenance::Strict => Some(if c == d { 1.0 } else { 0.0 }),
            EtaProvenance::Custom => self
                .rows
                .get(&d)
                .map(|row| row[c - majority_threshold(d)]),
        }
    }

    /// Weights for ascending admissible `c` of edges of size `d`.
    pub fn row(&self, d: usize) -> Option<Vec<f64>> {
        (majority_threshold(d)..=d).map(|c| self.value(c, d)).collect()
    }

    /// Materialized rows (up to the requested size for formula-backed weights).
    pub fn rows(&self) -> &BTreeMap<usize, Vec<f64>> {
        &self.rows
    }
}

fn tau_value(tau: f64, c: usize, d: usize) -> f64 {
    if c == d {
        1.0
    } else {
        (c as f64 / d as f64).powf(tau)
    }
}

/// τ-family weights with rows materialized for sizes `2..=d_max`.
pub fn eta_from_tau(choice: TauChoice, d_max: usize) -> Result<EtaWeights> {
    if d_max < 2 {
        return Err(Error::InvalidParameter(format!("d_max must be >= 2, got {d_max}")));
    }
    let provenance = match choice {
        TauChoice::Tau(tau) if tau.is_nan() || tau < 0.0 => {
            return Err(Error::InvalidParameter(format!("tau must be >= 0, got {tau}")))
        }
        TauChoice::Tau(tau) if tau.is_infinite() => EtaProvenance::Strict,
        TauChoice::Tau(tau) => EtaProvenance::Tau(tau),
        TauChoice::Strict => EtaProvenance::Strict,
    };
    let mut eta = EtaWeights {
        provenance,
        rows: BTreeMap::new(),
    };
    for d in 2..=d_max {
        let row = eta.row(d).expect("formula-backed rows exist");
        eta.rows.insert(d, row);
    }
    Ok(eta)
}
