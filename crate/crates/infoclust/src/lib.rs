//! Source files, reports, validation runs and the command-line front end for
//! [`infoclust_core`].

pub mod cli;
pub mod error;
pub mod generate;
pub mod parallel;
pub mod report;
pub mod source;
pub mod validate;

pub use error::{CliError, Result};
