//! Command-line front end for `ordbundle`: reads the JSON formats of the
//! library, runs one computation per subcommand and renders a [`Report`].

pub mod commands;
pub mod report;

pub use commands::{run, Cli, Failure};
pub use report::{Field, Report};
