//! Command-line front end for `moore-l`: special-value tables, verification
//! reports and JSON output.

pub mod cache;
pub mod commands;
pub mod factor;
pub mod report;

pub use commands::{execute, Cli, Command, Format, Outcome};
pub use report::{ReportDocument, Status};
