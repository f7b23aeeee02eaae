//! Command implementations and run reports for the `fibertope` binary.

pub mod commands;
pub mod report;

pub use commands::{cmd_build, cmd_fiber_polytope, cmd_nbar, cmd_verify, BuildObject, Options, DEFAULT_SEED};
pub use report::{Check, RunReport};
