//! Command-line front end for `latcheck-core`: instance files, batch
//! checking and the default verification suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod identities;
pub mod instance_file;
pub mod report;

pub use commands::{cmd_check, cmd_gen, cmd_suite, run_suite, CheckArgs, Format, Outcome};
pub use config::SuiteConfig;
pub use error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
