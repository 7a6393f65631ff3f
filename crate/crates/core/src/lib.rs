//! Exact-arithmetic engine for Alexander-module and medial-quandle link
//! invariants computed from combinatorial oriented link diagrams.
//!
//! The pipeline runs from a [`diagram::LinkDiagram`] through the multivariate
//! Alexander presentation ([`alexander`]), its one-variable reduction and
//! specialization at `t = -1` ([`modulealg`]), quandle coloring counts and
//! displacement modules ([`quandle`]), into a bundled fingerprint used to
//! separate links up to permutation of component indices ([`distinguish`]).

pub mod alexander;
pub mod config;
pub mod diagram;
pub mod distinguish;
pub mod error;
pub mod fixtures;
pub mod laurent;
pub mod modulealg;
pub mod quandle;

pub use error::{Error, Result};
