//! Command-line front end for `lattice-games`: solve games, decide core
//! non-emptiness, share network traffic surplus between edges and nodes,
//! and replay the worked examples.

pub mod commands;
pub mod error;
pub mod trace;
pub mod worked;

pub use error::{CliError, CliResult};
