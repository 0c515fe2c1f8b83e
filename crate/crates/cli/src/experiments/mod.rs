//! One runner per experiment kind. Each returns typed rows and can render
//! them as an [`Artifact`](crate::Artifact).

pub mod floors;
pub mod pa_grid;
pub mod phase2;
pub mod sweep;
pub mod table1;

use noma_drn_core::model::ScenarioConfig;
use noma_drn_core::sim::{simulate, SimConfig, SimReport};

use crate::SimSettings;

/// Simulates one grid point, or returns `None` when simulation is disabled.
pub(crate) fn simulate_point(
    scenario: &ScenarioConfig,
    snr_db: f64,
    sim: &SimSettings,
) -> Option<Result<SimReport, String>> {
    if sim.trials == 0 {
        return None;
    }
    Some(
        SimConfig::new(scenario, snr_db, sim.trials, sim.seed, sim.workers)
            .and_then(|c| simulate(&c))
            .map_err(|e| e.to_string()),
    )
}

/// First sub-interval `(snr_lo, snr_hi)` over which `curve` increases with SNR.
pub fn first_rise(curve: &[(f64, f64)]) -> Option<(f64, f64)> {
    curve
        .windows(2)
        .find(|w| w[1].1 > w[0].1)
        .map(|w| (w[0].0, w[1].0))
}

/// Joins the messages of failed steps into one error cell.
pub(crate) fn join_errors<'a>(errors: impl IntoIterator<Item = Option<&'a String>>) -> String {
    errors
        .into_iter()
        .flatten()
        .cloned()
        .collect::<Vec<_>>()
        .join("; ")
}
