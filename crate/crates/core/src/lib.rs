//! Server-centric data-centre topologies (DCell, β-DCell, FiConn) with
//! dimensional, shortest-path and proxy routing, plus the experiment harness
//! behind the `scdcn` command-line tool.

pub mod cli;
pub mod error;
pub mod harness;
pub mod routing;
pub mod topology;

pub use error::{Error, Result};
pub use topology::{
    compute_sizes, label_from_uid, uid_from_label, Family, LevelSizes, Network, NetworkSpec,
    ServerLabel,
};
