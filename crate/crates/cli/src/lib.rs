//! Command-line front end: algebra file parsing, command dispatch and
//! text/JSON/CSV report rendering on top of the core library.

pub mod commands;
pub mod file;
pub mod report;

pub use commands::{run, Cli, CliError};
pub use file::{parse_algebra, render_algebra, FileError};
