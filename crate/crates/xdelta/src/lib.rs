//! File formats, reports and the command-line interface over `xdelta-core`.

pub mod cli;
pub mod formsio;
pub mod report;
