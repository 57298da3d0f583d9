//! Experiment orchestration: configuration, sweeps, phase matching and
//! file output.

pub mod config;
pub mod output;
pub mod phase_match;
pub mod sweep;

pub use config::RunConfig;
pub use output::{
    format_value, read_report, write_phase_match_csv, write_report, write_sweep_csv,
    write_trajectory_csv, PHASE_MATCH_COLUMNS, TRAJECTORY_COLUMNS,
};
pub use phase_match::{run_phase_match, MatchedRun, PhaseMatchRow, PhaseMatchSpec};
pub use sweep::{run_sweep, Grid, SweepParameter, SweepRow, SweepSpec};
