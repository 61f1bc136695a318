//! Oversampling via optimum-path forests.
//!
//! The crate contains the unsupervised OPF clusterer ([`cluster`]), the
//! supervised OPF classifier ([`classifier`]), the O2PF oversampler built on
//! top of them ([`o2pf`]), SMOTE-family baselines ([`smote`]), evaluation
//! statistics ([`metrics`], [`wilcoxon`]) and the experiment runner that ties
//! everything together ([`harness`]).

pub mod classifier;
pub mod cluster;
pub mod data;
mod error;
pub mod harness;
mod neighbors;
pub mod metrics;
pub mod o2pf;
pub mod seed;
pub mod smote;
pub mod wilcoxon;

pub use error::{Error, Result};
