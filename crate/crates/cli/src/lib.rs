//! Serialization and rendering for the `shape-forge` command.

pub mod dot;
pub mod report;
pub mod schema;
