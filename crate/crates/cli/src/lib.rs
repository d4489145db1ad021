//! Library side of the `serrelab` command: the source-document grammar,
//! report rendering, subcommands and the built-in fixture corpus.

pub mod commands;
pub mod corpus;
pub mod doc;
pub mod json;

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
