//! Community detection in hypergraphs by direct optimization of hypergraph
//! modularity.
//!
//! The optimizer ([`hlouvain::h_louvain`]) is a Louvain-style local search on
//! a blend of the 2-section graph modularity and the hypergraph modularity,
//! with the blend weight ramped from 0 to 1 by an `(p_b, p_c)` policy. The
//! policy can be tuned with Gaussian-process Bayesian optimization
//! ([`bayesopt::tune`]). A small synthetic generator ([`habcd`]) and
//! evaluation helpers ([`metrics`]) support experiments.

pub mod bayesopt;
pub mod error;
pub mod habcd;
pub mod hlouvain;
pub mod hypercore;
pub mod metrics;
pub mod modularity;

pub use error::{Error, Result};
