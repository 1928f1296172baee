//! File formats, reports and the command surface of the `msforms` tool.

pub mod app;
pub mod format;
pub mod report;
pub mod sample;

pub use app::{run, CliError, Outcome};
pub use format::{parse_3form, write_form, FormFile, ParseError};
