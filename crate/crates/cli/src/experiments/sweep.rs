//! End-to-end BER against SNR: exact, closed-form approximation, error floor
//! and simulation, for each symbol and their average.

use noma_drn_core::analytic::{analyze, error_floor, BepBreakdown, ErrorFloor, Method};
use noma_drn_core::model::ScenarioConfig;
use noma_drn_core::sim::SimReport;

use super::{join_errors, simulate_point};
use crate::artifact::{cell, Artifact};
use crate::grid::Grid;
use crate::SimSettings;

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub snr_db: f64,
    pub exact: Result<BepBreakdown, String>,
    pub approx: Result<BepBreakdown, String>,
    pub floor: ErrorFloor,
    pub sim: Option<Result<SimReport, String>>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub scenario: ScenarioConfig,
    pub grid: Grid,
    pub sim: SimSettings,
    pub rows: Vec<SweepRow>,
}

pub fn run_snr_sweep(scenario: &ScenarioConfig, grid: &Grid, sim: &SimSettings) -> SweepResult {
    let rows = grid
        .values()
        .iter()
        .map(|&snr_db| {
            let sc = scenario.at_snr_db(snr_db);
            SweepRow {
                snr_db,
                exact: analyze(&sc, Method::ExactQuadrature).map_err(|e| e.to_string()),
                approx: analyze(&sc, Method::ClosedApprox).map_err(|e| e.to_string()),
                floor: error_floor(&sc),
                sim: simulate_point(scenario, snr_db, sim),
            }
        })
        .collect();
    SweepResult {
        scenario: scenario.clone(),
        grid: grid.clone(),
        sim: *sim,
        rows,
    }
}

pub const COLUMNS: [&str; 21] = [
    "snr_db",
    "exact_x1",
    "exact_x2",
    "exact_avg",
    "approx_x1",
    "approx_x2",
    "approx_avg",
    "floor_x1",
    "floor_x2",
    "floor_avg",
    "sim_x1",
    "sim_x1_se",
    "sim_x2",
    "sim_x2_se",
    "sim_avg",
    "sim_avg_se",
    "sim_errors",
    "sim_low_confidence",
    "p_sr1_x1",
    "p_sr2_x2",
    "error",
];

impl SweepResult {
    pub fn to_artifact(&self) -> Artifact {
        let mut a = Artifact::new("snr-sweep", COLUMNS.to_vec())
            .setting("snr_db", format!("\"{}\"", self.grid))
            .setting("trials", self.sim.trials)
            .setting("seed", self.sim.seed);
        a.scenarios.push(self.scenario.clone());
        for r in &self.rows {
            let exact = r.exact.as_ref().ok();
            let approx = r.approx.as_ref().ok();
            let sim = r.sim.as_ref().and_then(|s| s.as_ref().ok());
            let (x1, x2, avg) = (
                sim.map(|s| s.x1_e2e()),
                sim.map(|s| s.x2_e2e()),
                sim.map(|s| s.e2e_mean()),
            );
            a.push_row(vec![
                r.snr_db.to_string(),
                cell(exact.map(|b| b.p1_e2e)),
                cell(exact.map(|b| b.p2_e2e)),
                cell(exact.map(|b| b.p_e2e)),
                cell(approx.map(|b| b.p1_e2e)),
                cell(approx.map(|b| b.p2_e2e)),
                cell(approx.map(|b| b.p_e2e)),
                r.floor.x1.to_string(),
                r.floor.x2.to_string(),
                r.floor.e2e.to_string(),
                cell(x1.map(|e| e.rate)),
                cell(x1.map(|e| e.std_error)),
                cell(x2.map(|e| e.rate)),
                cell(x2.map(|e| e.std_error)),
                cell(avg.map(|e| e.rate)),
                cell(avg.map(|e| e.std_error)),
                avg.map(|e| e.errors.to_string()).unwrap_or_default(),
                avg.map(|e| e.low_confidence.to_string())
                    .unwrap_or_default(),
                cell(exact.map(|b| b.p1_sr1)),
                cell(exact.map(|b| b.p2_sr2)),
                join_errors([
                    r.exact.as_ref().err(),
                    r.approx.as_ref().err(),
                    r.sim.as_ref().and_then(|s| s.as_ref().err()),
                ]),
            ]);
        }
        a
    }
}
