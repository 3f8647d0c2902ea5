//! Partition agreement (AMI) and the edge-composition τ heuristic.

mod ami;
mod tau;

pub use ami::{ami, ami_labels, AmiNormalization, ContingencyTable};
pub use tau::{suggest_tau, TauRecommendation, STRICT_THRESHOLD, TAU3_THRESHOLD};
