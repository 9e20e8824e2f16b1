//! Front end for the `twocut` binary: instance files, SVG output and the
//! subcommands.

pub mod commands;
pub mod instance;
pub mod svg;

pub use commands::{run, Cli, CliError, Command, Mode};
pub use instance::{Instance, ParseError};
pub use svg::{render, RenderSpec, Scene};
