use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `(p_b, p_c)` pair driving the blend schedule.
///
/// `p_b` sets the step sizes `α_i = 1 − (1 − p_b)^(i−1)`; `p_c` sets the
/// community-count thresholds `n·p_c^(i−1)` at which each step is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaPolicy {
    pub p_b: f64,
    pub p_c: f64,
}

impl AlphaPolicy {
    pub fn new(p_b: f64, p_c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_b) {
            return Err(Error::InvalidParameter(format!("p_b must lie in [0, 1], got {p_b}")));
        }
        if !(p_c > 0.0 && p_c < 1.0) {
            return Err(Error::InvalidParameter(format!("p_c must lie in (0, 1), got {p_c}")));
        }
        Ok(Self { p_b, p_c })
    }
}

/// Next blend weight after a move, given the current number of communities.
///
/// `j` is the largest `k >= 0` with `community_count / n <= p_c^k`, and the
/// schedule value is `1 − (1 − p_b)^j`. The result never falls below
/// `current_alpha`: each step is taken the first time its threshold is reached.
pub fn update_alpha(community_count: usize, n: usize, current_alpha: f64, policy: AlphaPolicy) -> f64 {
    if current_alpha >= 1.0 {
        return 1.0;
    }
    let ratio = community_count as f64 / n as f64;
    let mut j: i32 = 0;
    while ratio <= policy.p_c.powi(j + 1) {
        j += 1;
    }
    let scheduled = 1.0 - (1.0 - policy.p_b).powi(j);
    scheduled.max(current_alpha)
}

/// Blend weight in force during one optimization run, with its trace.
#[derive(Debug, Clone)]
pub struct AlphaController {
    value: f64,
    policy: Option<AlphaPolicy>,
    node_count: usize,
    trace: Vec<(usize, f64)>,
}

impl AlphaController {
    /// Starts at α = 0 and follows `policy` on a hypergraph with `node_count` nodes.
    pub fn scheduled(policy: AlphaPolicy, node_count: usize) -> Self {
        Self {
            value: 0.0,
            policy: Some(policy),
            node_count,
            trace: vec![(node_count, 0.0)],
        }
    }

    /// α fixed at `alpha`; moves never change it.
    pub fn pinned(alpha: f64, node_count: usize) -> Self {
        Self {
            value: alpha,
            policy: None,
            node_count,
            trace: vec![(node_count, alpha)],
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_pinned(&self) -> bool {
        self.policy.is_none()
    }

    /// `(community_count, α)` at start and at every change.
    pub fn trace(&self) -> &[(usize, f64)] {
        &self.trace
    }

    /// Called after every accepted move.
    pub fn after_move(&mut self, community_count: usize) {
        if let Some(policy) = self.policy {
            let next = update_alpha(community_count, self.node_count, self.value, policy);
            if next != self.value {
                self.value = next;
                self.trace.push((community_count, next));
            }
        }
    }

    /// The switch to pure hypergraph modularity at the end of the schedule.
    pub fn force_one(&mut self, community_count: usize) {
        if self.value < 1.0 {
            self.value = 1.0;
            self.trace.push((community_count, 1.0));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        let policy = AlphaPolicy::new(0.5, 0.5).unwrap();
        assert_eq!(update_alpha(100, 100, 0.0, policy), 0.0);
        assert_eq!(update_alpha(50, 100, 0.0, policy), 0.5);
        assert_eq!(update_alpha(20, 100, 0.0, policy), 0.75);
    }

    #[test]
    fn zero_step_stays_zero() {
        let policy = AlphaPolicy::new(0.0, 0.3).unwrap();
        for count in 1..=100 {
            assert_eq!(update_alpha(count, 100, 0.0, policy), 0.0);
        }
    }

    #[test]
    fn full_step_jumps_to_one() {
        let policy = AlphaPolicy::new(1.0, 0.5).unwrap();
        assert_eq!(update_alpha(100, 100, 0.0, policy), 0.0);
        assert_eq!(update_alpha(50, 100, 0.0, policy), 1.0);
    }

    #[test]
    fn saturates_at_one() {
        let policy = AlphaPolicy::new(0.5, 0.5).unwrap();
        assert_eq!(update_alpha(100, 100, 1.0, policy), 1.0);
    }

    #[test]
    fn monotone_in_community_count() {
        let policy = AlphaPolicy::new(0.3, 0.7).unwrap();
        let mut previous = 0.0;
        for count in (1..=200).rev() {
            let a = update_alpha(count, 200, 0.0, policy);
            assert!(a >= previous);
            previous = a;
        }
        // A rebound in the community count never lowers α.
        assert_eq!(update_alpha(200, 200, 0.51, policy), 0.51);
    }

    #[test]
    fn policy_ranges() {
        assert!(AlphaPolicy::new(-0.1, 0.5).is_err());
        assert!(AlphaPolicy::new(0.5, 0.0).is_err());
        assert!(AlphaPolicy::new(0.5, 1.0).is_err());
        assert!(AlphaPolicy::new(1.0, 0.99).is_ok());
    }

    #[test]
    fn controller_traces_changes_only() {
        let mut alpha = AlphaController::scheduled(AlphaPolicy::new(0.5, 0.5).unwrap(), 100);
        alpha.after_move(99);
        alpha.after_move(50);
        alpha.after_move(49);
        alpha.after_move(20);
        alpha.force_one(18);
        assert_eq!(alpha.trace(), &[(100, 0.0), (50, 0.5), (20, 0.75), (18, 1.0)]);
        let mut pinned = AlphaController::pinned(1.0, 10);
        pinned.after_move(1);
        assert_eq!(pinned.trace(), &[(10, 1.0)]);
    }
}
