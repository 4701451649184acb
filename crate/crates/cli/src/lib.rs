//! File formats and command implementations behind the `circula` binary.

pub mod commands;
pub mod dataset;
pub mod model_file;
pub mod summary_file;
