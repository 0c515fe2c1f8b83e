//! Second-phase same-sign event probability per scenario and SNR, analytic
//! and simulated, with the noiseless limit as a final column.

use noma_drn_core::analytic::EventPair;
use noma_drn_core::model::ScenarioConfig;
use noma_drn_core::priori::{priori_from_conditionals, priori_second_phase};
use noma_drn_core::sim::BerEstimate;

use super::{join_errors, simulate_point};
use crate::artifact::{cell, Artifact};
use crate::SimSettings;

pub const DEFAULT_SNR_DB: [f64; 4] = [0.0, 5.0, 10.0, 15.0];

#[derive(Debug, Clone)]
pub struct Table1Row {
    pub scenario: String,
    /// `f64::INFINITY` for the noiseless limit.
    pub snr_db: f64,
    pub analytic: Result<f64, String>,
    pub empirical: Option<Result<BerEstimate, String>>,
}

#[derive(Debug, Clone)]
pub struct Table1Result {
    pub scenarios: Vec<ScenarioConfig>,
    pub sim: SimSettings,
    pub rows: Vec<Table1Row>,
}

fn label(sc: &ScenarioConfig, index: usize) -> String {
    sc.name()
        .map(str::to_string)
        .unwrap_or_else(|| format!("scenario {}", index + 1))
}

/// Without relay errors the relays forward the source's symbols, so the
/// second-phase probability equals the first-phase one.
fn noiseless_limit() -> Result<f64, String> {
    let none = EventPair {
        event_a: 0.0,
        event_b: 0.0,
    };
    priori_from_conditionals(0.5, none, none)
        .map(|p| p.p_a_2nd)
        .map_err(|e| e.to_string())
}

pub fn run_table1(scenarios: &[ScenarioConfig], snr_db: &[f64], sim: &SimSettings) -> Table1Result {
    let mut rows = Vec::new();
    for (i, scenario) in scenarios.iter().enumerate() {
        for &snr in snr_db {
            let sc = scenario.at_snr_db(snr);
            rows.push(Table1Row {
                scenario: label(scenario, i),
                snr_db: snr,
                analytic: priori_second_phase(&sc, 0.5)
                    .map(|p| p.p_a_2nd)
                    .map_err(|e| e.to_string()),
                empirical: simulate_point(scenario, snr, sim)
                    .map(|r| r.map(|report| report.p_a_2nd())),
            });
        }
        rows.push(Table1Row {
            scenario: label(scenario, i),
            snr_db: f64::INFINITY,
            analytic: noiseless_limit(),
            empirical: None,
        });
    }
    Table1Result {
        scenarios: scenarios.to_vec(),
        sim: *sim,
        rows,
    }
}

impl Table1Result {
    pub fn analytic(&self, scenario_index: usize, snr_db: f64) -> Option<f64> {
        let name = label(self.scenarios.get(scenario_index)?, scenario_index);
        self.rows
            .iter()
            .find(|r| r.scenario == name && r.snr_db == snr_db)
            .and_then(|r| r.analytic.as_ref().ok().copied())
    }

    pub fn to_artifact(&self) -> Artifact {
        let mut a = Artifact::new(
            "table1",
            vec![
                "scenario",
                "snr_db",
                "p_a_2nd",
                "sim_p_a_2nd",
                "sim_se",
                "error",
            ],
        )
        .setting("trials", self.sim.trials)
        .setting("seed", self.sim.seed);
        a.scenarios = self.scenarios.clone();
        for r in &self.rows {
            let emp = r.empirical.as_ref().and_then(|e| e.as_ref().ok());
            a.push_row(vec![
                r.scenario.clone(),
                if r.snr_db.is_infinite() {
                    "inf".to_string()
                } else {
                    r.snr_db.to_string()
                },
                cell(r.analytic.as_ref().ok().copied()),
                cell(emp.map(|e| e.rate)),
                cell(emp.map(|e| e.std_error)),
                join_errors([
                    r.analytic.as_ref().err(),
                    r.empirical.as_ref().and_then(|e| e.as_ref().err()),
                ]),
            ]);
        }
        a
    }
}
