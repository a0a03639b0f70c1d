//! Configuration files, deterministic CSV/JSON export and the `emdetect`
//! command-line tool built on [`emdetect_core`].

pub mod commands;
pub mod config;
mod error;
pub mod export;
pub mod parallel;

pub use error::CliError;
