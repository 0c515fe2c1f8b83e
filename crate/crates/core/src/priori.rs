//! Event probabilities of the relay-to-destination phase.
//!
//! In phase 2 the destination sees the relays' decisions `x̂1`, `x̂2`
//! superposed. Event A (same sign) yields the strong constellation point and
//! event B (opposite signs) the weak one. Even with equiprobable source
//! symbols, relay errors make event A more likely than B: if the source sent
//! a same-sign pair, A survives when both relays are right or both are
//! wrong; if it sent an opposite-sign pair, A appears when exactly one relay
//! is wrong, and the weak `x2` is wrong far more often than `x1`.

use crate::analytic::{first_phase, EventPair};
use crate::error::{Error, Result};
use crate::model::ScenarioConfig;
use crate::sim::SimReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrioriProbs {
    pub p_a_1st: f64,
    pub p_b_1st: f64,
    pub p_a_2nd: f64,
    pub p_b_2nd: f64,
}

impl PrioriProbs {
    pub fn new(p_a_1st: f64, p_a_2nd: f64) -> Result<Self> {
        for (name, p) in [("p_a_1st", p_a_1st), ("p_a_2nd", p_a_2nd)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        Ok(Self {
            p_a_1st,
            p_b_1st: 1.0 - p_a_1st,
            p_a_2nd,
            p_b_2nd: 1.0 - p_a_2nd,
        })
    }

    /// Both phases equiprobable.
    pub fn equiprobable() -> Self {
        Self {
            p_a_1st: 0.5,
            p_b_1st: 0.5,
            p_a_2nd: 0.5,
            p_b_2nd: 0.5,
        }
    }
}

/// Combines per-event relay error probabilities into phase-2 event
/// probabilities.
///
/// `relay1_x1` holds R1's error probability for `x1`, `relay2_x2` R2's for
/// `x2`, each conditioned on the phase-1 event. The relays see independent
/// channels, so their errors are independent given the event.
pub fn priori_from_conditionals(
    p_a_1st: f64,
    relay1_x1: EventPair,
    relay2_x2: EventPair,
) -> Result<PrioriProbs> {
    let (e1, e2) = (relay1_x1.event_a, relay2_x2.event_a);
    let a_given_a = (1.0 - e1) * (1.0 - e2) + e1 * e2;
    let (e1, e2) = (relay1_x1.event_b, relay2_x2.event_b);
    let a_given_b = e1 * (1.0 - e2) + (1.0 - e1) * e2;
    let p_a_2nd = p_a_1st * a_given_a + (1.0 - p_a_1st) * a_given_b;
    PrioriProbs::new(p_a_1st, p_a_2nd)
}

pub fn priori_second_phase(scenario: &ScenarioConfig, p_a_1st: f64) -> Result<PrioriProbs> {
    if !(0.0..=1.0).contains(&p_a_1st) {
        return Err(Error::domain(format!(
            "p_a_1st must lie in [0, 1], got {p_a_1st}"
        )));
    }
    let phase1 = first_phase(scenario, p_a_1st);
    priori_from_conditionals(p_a_1st, phase1.x1_by_event, phase1.x2_by_event)
}

/// Event frequencies counted by the simulator.
pub fn estimate_priori_empirical(report: &SimReport) -> Result<PrioriProbs> {
    if report.trials == 0 {
        return Err(Error::domain(
            "cannot estimate event probabilities from zero trials",
        ));
    }
    let n = report.trials as f64;
    PrioriProbs::new(
        report.counts.phase1_event_a as f64 / n,
        report.counts.phase2_event_a as f64 / n,
    )
}
