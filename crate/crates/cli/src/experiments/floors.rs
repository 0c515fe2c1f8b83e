//! Exact end-to-end BER next to the high-SNR error floors.

use noma_drn_core::analytic::{analyze, error_floor, BepBreakdown, ErrorFloor, Method};
use noma_drn_core::model::ScenarioConfig;

use crate::artifact::{cell, Artifact};
use crate::grid::Grid;

pub const DEFAULT_SNR: &str = "20:60:10";

#[derive(Debug, Clone)]
pub struct FloorRow {
    pub scenario: String,
    pub snr_db: f64,
    pub exact: Result<BepBreakdown, String>,
    pub floor: ErrorFloor,
}

#[derive(Debug, Clone)]
pub struct FloorsResult {
    pub scenarios: Vec<ScenarioConfig>,
    pub grid: Grid,
    pub rows: Vec<FloorRow>,
}

pub fn run_floors(scenarios: &[ScenarioConfig], grid: &Grid) -> FloorsResult {
    let mut rows = Vec::new();
    for (i, scenario) in scenarios.iter().enumerate() {
        let name = scenario
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("scenario {}", i + 1));
        for &snr_db in grid.values() {
            let sc = scenario.at_snr_db(snr_db);
            rows.push(FloorRow {
                scenario: name.clone(),
                snr_db,
                exact: analyze(&sc, Method::ExactQuadrature).map_err(|e| e.to_string()),
                floor: error_floor(&sc),
            });
        }
    }
    FloorsResult {
        scenarios: scenarios.to_vec(),
        grid: grid.clone(),
        rows,
    }
}

impl FloorsResult {
    pub fn to_artifact(&self) -> Artifact {
        let mut a = Artifact::new(
            "floors",
            vec![
                "scenario",
                "snr_db",
                "exact_x1",
                "exact_x2",
                "exact_avg",
                "floor_x1",
                "floor_x2",
                "floor_avg",
                "error",
            ],
        )
        .setting("snr_db", format!("\"{}\"", self.grid));
        a.scenarios = self.scenarios.clone();
        for r in &self.rows {
            let e = r.exact.as_ref().ok();
            a.push_row(vec![
                r.scenario.clone(),
                r.snr_db.to_string(),
                cell(e.map(|b| b.p1_e2e)),
                cell(e.map(|b| b.p2_e2e)),
                cell(e.map(|b| b.p_e2e)),
                r.floor.x1.to_string(),
                r.floor.x2.to_string(),
                r.floor.e2e.to_string(),
                r.exact.as_ref().err().cloned().unwrap_or_default(),
            ]);
        }
        a
    }
}
