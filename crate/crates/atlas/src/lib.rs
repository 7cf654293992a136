//! File formats, reports and the command line front end for
//! `systolic-core`.
//!
//! Every float written by this crate has 15 significant digits, CSV output
//! always starts with a header row and JSON output follows the schemas in
//! `schemas/`. Identical flags give byte-identical output.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod svg;

pub use commands::run;
pub use error::AtlasError;
