//! File format, workspace and commands behind the `qloid` binary.

pub mod commands;
pub mod format;
pub mod workspace;

pub use commands::{run, Command, Options, Report, Status};
pub use workspace::{CliError, Workspace};
