//! Average bit-error probabilities (ABEPs) of both symbols over both hops.
//!
//! Phase 1 is the source-to-relay broadcast: R1 decodes `x1` with `x2` as
//! interference, R2 decodes `x1`, cancels it and decodes `x2`. Every
//! conditional error event there reduces to a fading average of
//! `Q(√(2εγ))` over one exponential SNR, which has a closed form.
//!
//! Phase 2 is the relay-to-destination multiple access: the amplitudes seen
//! by the destination are sums and differences of two Rayleigh variates, so
//! the exact ABEPs need the one-dimensional integrals of [`crate::rayleigh`].
//! Closed-form approximations and the high-SNR floors are provided as well.

use crate::error::{Error, Result};
use crate::model::ScenarioConfig;
use crate::priori::{priori_second_phase, PrioriProbs};
use crate::rayleigh::{expect_q_over_diff, expect_q_over_sum, RayleighPair};

/// `E[Q(√(2εγ))]` for `γ = |h|²/N0` with `|h|²` exponential of mean `sigma2`:
/// `½(1 - √(εσ²/(N0 + εσ²)))`.
pub fn rayleigh_avg_q(eps: f64, sigma2: f64, n0: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return Err(Error::domain(format!(
            "energy must be non-negative, got {eps}"
        )));
    }
    if !(sigma2 > 0.0) || !(n0 > 0.0) {
        return Err(Error::domain(format!(
            "variance and noise must be positive, got sigma2={sigma2}, n0={n0}"
        )));
    }
    Ok(avg_q_at(eps * sigma2 / n0))
}

/// `½(1 - √(x/(1+x)))` rearranged as `½ / ((1+x)(1+√(x/(1+x))))`.
fn avg_q_at(mean_snr: f64) -> f64 {
    if mean_snr.is_infinite() {
        return 0.0;
    }
    let root = (mean_snr / (1.0 + mean_snr)).sqrt();
    0.5 / ((1.0 + mean_snr) * (1.0 + root))
}

/// One value per superposition event: `A` (same-sign symbols) and `B`
/// (opposite signs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventPair {
    pub event_a: f64,
    pub event_b: f64,
}

impl EventPair {
    pub fn weighted(&self, p_a: f64) -> f64 {
        p_a * self.event_a + (1.0 - p_a) * self.event_b
    }
}

/// Split of the weak symbol's error probability by whether the strong symbol
/// was cancelled correctly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SicBranches {
    pub correct: f64,
    pub erroneous: f64,
}

impl SicBranches {
    pub fn total(&self) -> f64 {
        self.correct + self.erroneous
    }
}

/// Per-symbol error probabilities of one hop, with the conditional values
/// needed by the event-probability analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAbep {
    pub p_x1: f64,
    pub p_x2: f64,
    pub x1_by_event: EventPair,
    pub x2_by_event: EventPair,
    pub x2_by_sic: SicBranches,
}

impl PhaseAbep {
    pub fn symbols(&self) -> SymbolBep {
        SymbolBep {
            x1: self.p_x1,
            x2: self.p_x2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolBep {
    pub x1: f64,
    pub x2: f64,
}

impl SymbolBep {
    pub fn mean(&self) -> f64 {
        0.5 * (self.x1 + self.x2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactQuadrature,
    ClosedApprox,
    Floor,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ExactQuadrature => "exact-quadrature",
            Method::ClosedApprox => "closed-approx",
            Method::Floor => "floor",
        }
    }
}

/// Hop-level and end-to-end error probabilities of both symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BepBreakdown {
    pub p1_sr1: f64,
    pub p2_sr2: f64,
    pub p1_r1d: f64,
    pub p2_r2d: f64,
    pub p1_e2e: f64,
    pub p2_e2e: f64,
    pub p_e2e: f64,
    pub method: Method,
}

/// High-SNR limits of the end-to-end error probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorFloor {
    pub x1: f64,
    pub x2: f64,
    pub e2e: f64,
}

/// Phase-1 ABEPs with first-phase event probability `p_a_1st`.
pub fn first_phase(scenario: &ScenarioConfig, p_a_1st: f64) -> PhaseAbep {
    let lv = scenario.energy_levels();
    let n0 = scenario.n0();
    let g1 = |eps: f64| avg_q_at(eps * scenario.sigma2_sr1() / n0);
    let g2 = |eps: f64| avg_q_at(eps * scenario.sigma2_sr2() / n0);
    let p_b = 1.0 - p_a_1st;

    let x1_by_event = EventPair {
        event_a: g1(lv.eps_a),
        event_b: g1(lv.eps_b),
    };
    let (ga, gb, gc, gd, ge) = (
        g2(lv.eps_a),
        g2(lv.eps_b),
        g2(lv.eps_c),
        g2(lv.eps_d),
        g2(lv.eps_e),
    );
    let x2_by_sic = SicBranches {
        correct: p_a_1st * (gc - ga) + p_b * gc,
        erroneous: p_a_1st * gd + p_b * (gb - ge),
    };
    let x2_by_event = EventPair {
        event_a: gc - ga + gd,
        event_b: gc + gb - ge,
    };
    PhaseAbep {
        p_x1: x1_by_event.weighted(p_a_1st),
        p_x2: x2_by_sic.total(),
        x1_by_event,
        x2_by_event,
        x2_by_sic,
    }
}

/// ABEP of `x1` at R1, equiprobable symbols.
pub fn abep_x1_relay1(scenario: &ScenarioConfig) -> f64 {
    first_phase(scenario, 0.5).p_x1
}

/// ABEP of `x2` at R2 after SIC, equiprobable symbols, with its breakdown.
pub fn abep_x2_relay2(scenario: &ScenarioConfig) -> PhaseAbep {
    first_phase(scenario, 0.5)
}

/// Rayleigh pairs of the destination statistics: `(ζ_A, ζ_B)` share one pair,
/// `(ζ_D, ζ_E)` use twice the R1 amplitude.
fn destination_pairs(scenario: &ScenarioConfig) -> Result<(RayleighPair, RayleighPair)> {
    let n0 = scenario.n0();
    let rms_1 = (scenario.beta1() * scenario.p_r() * scenario.sigma2_r1d() / n0).sqrt();
    let rms_2 = (scenario.beta2() * scenario.p_r() * scenario.sigma2_r2d() / n0).sqrt();
    Ok((
        RayleighPair::from_rms(rms_1, rms_2)?,
        RayleighPair::from_rms(2.0 * rms_1, rms_2)?,
    ))
}

/// Destination error of `x2` after a correct cancellation, averaged over fading.
fn weak_symbol_alone(scenario: &ScenarioConfig) -> f64 {
    avg_q_at(scenario.beta2() * scenario.p_r() * scenario.sigma2_r2d() / scenario.n0())
}

/// Exact phase-2 ABEPs; error events at the destination are measured against
/// the relays' decisions.
pub fn second_phase_exact(scenario: &ScenarioConfig, priori: &PrioriProbs) -> Result<PhaseAbep> {
    let (pair_ab, pair_de) = destination_pairs(scenario)?;
    let i_a = expect_q_over_sum(&pair_ab)?;
    let i_b = expect_q_over_diff(&pair_ab)?;
    let i_d = expect_q_over_sum(&pair_de)?;
    let i_e = expect_q_over_diff(&pair_de)?;
    let g_c = weak_symbol_alone(scenario);
    let (p_a, p_b) = (priori.p_a_2nd, priori.p_b_2nd);

    let x1_by_event = EventPair {
        event_a: i_a,
        event_b: i_b,
    };
    let x2_by_sic = SicBranches {
        correct: p_a * (g_c - i_a) + p_b * g_c,
        erroneous: p_a * i_d + p_b * (i_b - i_e),
    };
    Ok(PhaseAbep {
        p_x1: p_a * i_a + p_b * i_b,
        p_x2: x2_by_sic.total(),
        x1_by_event,
        x2_by_event: EventPair {
            event_a: g_c - i_a + i_d,
            event_b: g_c + i_b - i_e,
        },
        x2_by_sic,
    })
}

pub fn abep_x1_dest_exact(scenario: &ScenarioConfig, priori: &PrioriProbs) -> Result<f64> {
    Ok(second_phase_exact(scenario, priori)?.p_x1)
}

pub fn abep_x2_dest_exact(scenario: &ScenarioConfig, priori: &PrioriProbs) -> Result<f64> {
    Ok(second_phase_exact(scenario, priori)?.p_x2)
}

/// `β2σ²_R2D / (k·β1σ²_R1D + β2σ²_R2D)`: probability that the R2 amplitude
/// exceeds `k`-weighted R1 amplitude, in the limit of vanishing noise.
fn interference_ratio(scenario: &ScenarioConfig, k: f64) -> f64 {
    let strong = scenario.beta1() * scenario.p_r() * scenario.sigma2_r1d();
    let weak = scenario.beta2() * scenario.p_r() * scenario.sigma2_r2d();
    weak / (k * strong + weak)
}

/// Closed-form approximation of the destination ABEP of `x1`: the same-sign
/// term is dropped and the opposite-sign integral is replaced by its
/// noiseless limit.
pub fn abep_x1_dest_approx(scenario: &ScenarioConfig, priori: &PrioriProbs) -> f64 {
    priori.p_b_2nd * interference_ratio(scenario, 1.0)
}

pub fn abep_x2_dest_approx(scenario: &ScenarioConfig, priori: &PrioriProbs) -> f64 {
    weak_symbol_alone(scenario)
        + priori.p_b_2nd * (interference_ratio(scenario, 1.0) - interference_ratio(scenario, 4.0))
}

pub fn second_phase_approx(scenario: &ScenarioConfig, priori: &PrioriProbs) -> SymbolBep {
    SymbolBep {
        x1: abep_x1_dest_approx(scenario, priori),
        x2: abep_x2_dest_approx(scenario, priori),
    }
}

/// Error after two decode-and-forward hops: wrong on exactly one of them.
pub fn combine_hops(first: f64, second: f64) -> f64 {
    first * (1.0 - second) + (1.0 - first) * second
}

pub fn e2e_abep(phase1: SymbolBep, phase2: SymbolBep, method: Method) -> BepBreakdown {
    let p1_e2e = combine_hops(phase1.x1, phase2.x1);
    let p2_e2e = combine_hops(phase1.x2, phase2.x2);
    BepBreakdown {
        p1_sr1: phase1.x1,
        p2_sr2: phase1.x2,
        p1_r1d: phase2.x1,
        p2_r2d: phase2.x2,
        p1_e2e,
        p2_e2e,
        p_e2e: 0.5 * (p1_e2e + p2_e2e),
        method,
    }
}

pub fn error_floor(scenario: &ScenarioConfig) -> ErrorFloor {
    let r1 = interference_ratio(scenario, 1.0);
    let r4 = interference_ratio(scenario, 4.0);
    ErrorFloor {
        x1: 0.5 * r1,
        x2: 0.5 * (r1 - r4),
        e2e: 0.5 * (r1 - 0.5 * r4),
    }
}

/// Full chain with the event probabilities derived from phase 1.
pub fn analyze(scenario: &ScenarioConfig, method: Method) -> Result<BepBreakdown> {
    let priori = priori_second_phase(scenario, 0.5)?;
    analyze_with(scenario, method, &priori)
}

/// Full chain with caller-supplied second-phase event probabilities.
pub fn analyze_with(
    scenario: &ScenarioConfig,
    method: Method,
    priori: &PrioriProbs,
) -> Result<BepBreakdown> {
    let phase1 = first_phase(scenario, priori.p_a_1st).symbols();
    Ok(match method {
        Method::ExactQuadrature => e2e_abep(
            phase1,
            second_phase_exact(scenario, priori)?.symbols(),
            method,
        ),
        Method::ClosedApprox => e2e_abep(phase1, second_phase_approx(scenario, priori), method),
        Method::Floor => {
            let floor = error_floor(scenario);
            let none = SymbolBep { x1: 0.0, x2: 0.0 };
            let phase2 = SymbolBep {
                x1: floor.x1,
                x2: floor.x2,
            };
            e2e_abep(none, phase2, method)
        }
    })
}
