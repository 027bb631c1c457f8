//! Data-transfer scheduling toolkit.
//!
//! Single-link admission control (batch preemptive via max-flow, online
//! non-preemptive over range-query timelines), interval colorings of the
//! slot horizon, aggregate queries on tree networks, and offline
//! data-distribution solvers. The `flowsched` binary replays request
//! traces and exposes each solver on the command line.

pub mod cli;
pub mod error;
pub mod generate;
pub mod interval_coloring;
pub mod link_scheduler;
pub mod maxflow;
pub mod oracle;
pub mod perm_count;
pub mod revenue_path;
pub mod timeline;
pub mod trace;
pub mod tree_aggregates;
pub mod wireless_distribution;

pub use error::{Error, Result};
