//! File formats, commands and the torsion search behind the `toric-bm`
//! binary.

pub mod commands;
pub mod format;
pub mod search;

pub use commands::{CliError, ComputeOptions, FanSource, Outcome};
pub use search::SearchOptions;
