//! Driver layer behind the `oscbath` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
pub mod plot;
pub mod run;
pub mod verify;

pub use config::{Approach, ConfigError, Mode, RunConfig, Settings};
pub use run::RunError;
