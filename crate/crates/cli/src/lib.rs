//! Command implementations behind the `nbcolor` binary.
//!
//! Every command returns a serializable report; `main` only parses flags,
//! renders reports and maps errors to exit codes.

pub mod commands;
pub mod input;
pub mod output;
pub mod sweep;

pub use input::{load_graph, target_of, LoadedGraph, Target};
pub use output::Format;
pub use sweep::{er_sweep, ExperimentRow, SweepConfig, SweepOutcome, SweepSummary};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    /// Generic failure, including a rejected certificate or coloring.
    pub const FAILURE: u8 = 1;
    pub const INELIGIBLE: u8 = 2;
    pub const NON_CONVERGENCE: u8 = 3;
    pub const PARSE: u8 = 4;
}

/// Exit code for an error surfaced by a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use nbcolor_core::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::SelfLoop { .. } | Error::Serde(_)) => exit::PARSE,
        Some(Error::Ineligible(_)) => exit::INELIGIBLE,
        Some(Error::Convergence { .. }) => exit::NON_CONVERGENCE,
        _ => exit::FAILURE,
    }
}
