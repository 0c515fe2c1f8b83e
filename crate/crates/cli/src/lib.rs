//! Experiment runners that turn the analysis and the simulator into CSV
//! artifacts: SNR sweeps, power-allocation grids, the second-phase
//! equiprobable study, the event-probability table and error floors.

pub mod artifact;
pub mod error;
pub mod experiments;
pub mod grid;

pub use artifact::Artifact;
pub use error::CliError;
pub use grid::Grid;

/// Simulation budget shared by the experiments. `trials == 0` skips
/// simulation and leaves the simulated columns empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimSettings {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimSettings {
    pub fn analytic_only() -> Self {
        Self {
            trials: 0,
            seed: 0,
            workers: 1,
        }
    }
}
