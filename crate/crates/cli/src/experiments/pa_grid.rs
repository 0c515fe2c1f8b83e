//! End-to-end analytic BER over a grid of power splits `(α1, β1)`.

use noma_drn_core::analytic::{analyze, Method};
use noma_drn_core::model::ScenarioConfig;
use rayon::prelude::*;

use crate::artifact::{cell, Artifact};
use crate::error::CliError;
use crate::grid::Grid;

pub const DEFAULT_ALPHA1: &str = "0.525:0.975:0.025";
pub const DEFAULT_BETA1: &str = "0.025:0.975:0.025";

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub snr_db: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub p_e2e: Result<f64, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaGridResult {
    pub scenario: ScenarioConfig,
    pub method: Method,
    pub alpha1: Grid,
    pub beta1: Grid,
    pub points: Vec<GridPoint>,
}

pub fn run_pa_grid(
    scenario: &ScenarioConfig,
    snr: &Grid,
    alpha1: &Grid,
    beta1: &Grid,
    method: Method,
    workers: usize,
) -> Result<PaGridResult, CliError> {
    if workers == 0 {
        return Err(CliError::invalid("workers must be at least 1"));
    }
    let cells: Vec<(f64, f64, f64)> = snr
        .values()
        .iter()
        .flat_map(|&s| {
            alpha1
                .values()
                .iter()
                .flat_map(move |&a| beta1.values().iter().map(move |&b| (s, a, b)))
        })
        .collect();
    let evaluate = |&(snr_db, a, b): &(f64, f64, f64)| GridPoint {
        snr_db,
        alpha1: a,
        beta1: b,
        p_e2e: scenario
            .with_allocation(a, b)
            .and_then(|sc| analyze(&sc.at_snr_db(snr_db), method))
            .map(|bd| bd.p_e2e)
            .map_err(|e| e.to_string()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::invalid(format!("cannot start worker pool: {e}")))?;
    let points = pool.install(|| cells.par_iter().map(evaluate).collect());
    Ok(PaGridResult {
        scenario: scenario.clone(),
        method,
        alpha1: alpha1.clone(),
        beta1: beta1.clone(),
        points,
    })
}

impl PaGridResult {
    /// Grid point with the lowest BER at each SNR, in SNR order. Ties keep
    /// the first point in grid order.
    pub fn argmin(&self) -> Vec<&GridPoint> {
        let mut best: Vec<&GridPoint> = Vec::new();
        for p in &self.points {
            let Ok(v) = p.p_e2e else { continue };
            match best.iter_mut().find(|b| b.snr_db == p.snr_db) {
                Some(b) => {
                    if v < *b.p_e2e.as_ref().unwrap() {
                        *b = p;
                    }
                }
                None => best.push(p),
            }
        }
        best
    }

    pub fn to_artifact(&self) -> Artifact {
        let mut a = Artifact::new(
            "pa-grid",
            vec!["snr_db", "alpha1", "beta1", "p_e2e", "error"],
        )
        .setting("method", format!("\"{}\"", self.method.tag()))
        .setting("alpha1", format!("\"{}\"", self.alpha1))
        .setting("beta1", format!("\"{}\"", self.beta1));
        a.scenarios.push(self.scenario.clone());
        for best in self.argmin() {
            a.notes.push(format!(
                "argmin at {} dB: alpha1 = {}, beta1 = {}, p_e2e = {}",
                best.snr_db,
                best.alpha1,
                best.beta1,
                best.p_e2e.as_ref().unwrap()
            ));
        }
        for p in &self.points {
            a.push_row(vec![
                p.snr_db.to_string(),
                p.alpha1.to_string(),
                p.beta1.to_string(),
                cell(p.p_e2e.as_ref().ok().copied()),
                p.p_e2e.as_ref().err().cloned().unwrap_or_default(),
            ]);
        }
        a
    }
}
