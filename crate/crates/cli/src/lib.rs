//! Library surface of the `symlab` binary: argument definitions, run
//! configuration, the content-addressed cache, stored-ideal records, and a
//! structural schema checker. The binary itself only adds process concerns
//! (exit codes, the wall-clock watchdog, panic containment).

pub mod cache;
pub mod commands;
pub mod config;
pub mod record;
pub mod schema;

pub use commands::{run, Cli, Command};
pub use config::{Format, RunConfig};
