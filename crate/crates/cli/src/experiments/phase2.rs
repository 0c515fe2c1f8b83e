//! Second-phase BER against SNR with derived event probabilities, with
//! forced equal probabilities, and by simulation.

use noma_drn_core::analytic::{second_phase_exact, SymbolBep};
use noma_drn_core::model::ScenarioConfig;
use noma_drn_core::priori::{priori_second_phase, PrioriProbs};
use noma_drn_core::sim::SimReport;

use super::{first_rise, join_errors, simulate_point};
use crate::artifact::{cell, Artifact};
use crate::grid::Grid;
use crate::SimSettings;

#[derive(Debug, Clone)]
pub struct Phase2Row {
    pub snr_db: f64,
    pub priori: Result<PrioriProbs, String>,
    pub derived: Result<SymbolBep, String>,
    pub equiprobable: Result<SymbolBep, String>,
    pub sim: Option<Result<SimReport, String>>,
}

#[derive(Debug, Clone)]
pub struct Phase2Result {
    pub scenario: ScenarioConfig,
    pub grid: Grid,
    pub sim: SimSettings,
    pub rows: Vec<Phase2Row>,
}

pub fn run_phase2_study(scenario: &ScenarioConfig, grid: &Grid, sim: &SimSettings) -> Phase2Result {
    let rows = grid
        .values()
        .iter()
        .map(|&snr_db| {
            let sc = scenario.at_snr_db(snr_db);
            let priori = priori_second_phase(&sc, 0.5).map_err(|e| e.to_string());
            let derived = match &priori {
                Ok(p) => second_phase_exact(&sc, p)
                    .map(|a| a.symbols())
                    .map_err(|e| e.to_string()),
                Err(e) => Err(e.clone()),
            };
            let equiprobable = second_phase_exact(&sc, &PrioriProbs::equiprobable())
                .map(|a| a.symbols())
                .map_err(|e| e.to_string());
            Phase2Row {
                snr_db,
                priori,
                derived,
                equiprobable,
                sim: simulate_point(scenario, snr_db, sim),
            }
        })
        .collect();
    Phase2Result {
        scenario: scenario.clone(),
        grid: grid.clone(),
        sim: *sim,
        rows,
    }
}

pub const COLUMNS: [&str; 17] = [
    "snr_db",
    "p_a_2nd",
    "derived_x1",
    "derived_x2",
    "derived_avg",
    "equiprobable_x1",
    "equiprobable_x2",
    "equiprobable_avg",
    "sim_x1",
    "sim_x1_se",
    "sim_x2",
    "sim_x2_se",
    "sim_avg",
    "sim_avg_se",
    "sim_p_a_2nd",
    "sim_p_a_2nd_se",
    "error",
];

impl Phase2Result {
    /// `(snr, ber)` pairs of one analytic curve, skipping failed rows.
    pub fn curve(&self, pick: impl Fn(&Phase2Row) -> Option<f64>) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter_map(|r| pick(r).map(|v| (r.snr_db, v)))
            .collect()
    }

    /// First SNR sub-interval over which any derived-probability curve rises.
    pub fn rising_interval(&self) -> Option<(&'static str, (f64, f64))> {
        let derived =
            |f: fn(&SymbolBep) -> f64| move |r: &Phase2Row| r.derived.as_ref().ok().map(f);
        [
            ("x1", self.curve(derived(|s| s.x1))),
            ("x2", self.curve(derived(|s| s.x2))),
            ("avg", self.curve(derived(|s| s.mean()))),
        ]
        .into_iter()
        .find_map(|(name, c)| first_rise(&c).map(|iv| (name, iv)))
    }

    pub fn to_artifact(&self) -> Artifact {
        let mut a = Artifact::new("phase2-study", COLUMNS.to_vec())
            .setting("snr_db", format!("\"{}\"", self.grid))
            .setting("trials", self.sim.trials)
            .setting("seed", self.sim.seed);
        a.scenarios.push(self.scenario.clone());
        if let Some((name, (lo, hi))) = self.rising_interval() {
            a.notes.push(format!(
                "derived {name} BER rises between {lo} dB and {hi} dB"
            ));
        }
        for r in &self.rows {
            let d = r.derived.as_ref().ok();
            let e = r.equiprobable.as_ref().ok();
            let sim = r.sim.as_ref().and_then(|s| s.as_ref().ok());
            let (x1, x2, avg, pa) = (
                sim.map(|s| s.x1_r1d()),
                sim.map(|s| s.x2_r2d()),
                sim.map(|s| s.phase2_mean()),
                sim.map(|s| s.p_a_2nd()),
            );
            a.push_row(vec![
                r.snr_db.to_string(),
                cell(r.priori.as_ref().ok().map(|p| p.p_a_2nd)),
                cell(d.map(|s| s.x1)),
                cell(d.map(|s| s.x2)),
                cell(d.map(|s| s.mean())),
                cell(e.map(|s| s.x1)),
                cell(e.map(|s| s.x2)),
                cell(e.map(|s| s.mean())),
                cell(x1.map(|v| v.rate)),
                cell(x1.map(|v| v.std_error)),
                cell(x2.map(|v| v.rate)),
                cell(x2.map(|v| v.std_error)),
                cell(avg.map(|v| v.rate)),
                cell(avg.map(|v| v.std_error)),
                cell(pa.map(|v| v.rate)),
                cell(pa.map(|v| v.std_error)),
                join_errors([
                    r.priori.as_ref().err(),
                    r.derived.as_ref().err(),
                    r.equiprobable.as_ref().err(),
                    r.sim.as_ref().and_then(|s| s.as_ref().err()),
                ]),
            ]);
        }
        a
    }
}
