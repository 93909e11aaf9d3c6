//! Run drivers behind the command-line interface.
//!
//! Each driver turns a validated [`RunConfig`](crate::config::RunConfig)
//! into artifacts on disk and a structured result for callers that want
//! the numbers directly:
//!
//! - [`convergence`]: manufactured-solution error ladders with observed
//!   rates and a pass/fail gate on the asymptotic slopes
//! - [`simulate`]: physical runs with point sources, receiver traces,
//!   field snapshots and an instability guard
//! - [`compare`]: pointwise difference fields between the raster
//!   snapshots of two completed runs
//!
//! Drivers are deterministic: the same config produces byte-identical
//! outputs, which the snapshot comparison relies on.

pub mod compare;
pub mod convergence;
pub mod simulate;

pub use compare::{compare_runs, SnapshotComparison};
pub use convergence::{
    degree_study, h_study, manufactured_errors, run_convergence, ConvergenceOutcome, StudySettings,
};
pub use simulate::{run_simulate, ReceiverTrace, SimulationResult};
