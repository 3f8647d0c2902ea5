//! Gaussian-process tuning of the `(p_b, p_c)` policy.

mod acquisition;
mod gp;
mod tune;

pub use acquisition::{expected_improvement, halton, propose_next, SCAN_POINTS};
pub use gp::{gp_fit, Domain, GpHyperparams, Surrogate, NOISE_FLOOR};
pub use tune::{objective, tune, Evaluation, TuneResult, TunerConfig};
