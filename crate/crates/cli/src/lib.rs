//! Batch harness around `primelab-core`: argument parsing, task dispatch,
//! ordered parallel execution over key ranges, checkpoint/resume and
//! CSV/JSONL reports.

pub mod checkpoint;
pub mod cli;
pub mod config;
pub mod error;
pub mod record;
pub mod runner;
pub mod task;

pub use config::TaskConfig;
pub use error::CliError;
pub use runner::{run, Summary};
