//! Trial-level Monte Carlo simulation of the two-phase relaying protocol.
//!
//! Phase 1: the source sends `√(α1 P_S)·x1 + √(α2 P_S)·x2` over independent
//! `CN(0, σ²)` links to R1 and R2, with `CN(0, N0)` noise. Each relay applies
//! a coherent matched filter and decides on `Re(h*·y)/|h|`. R1 decides `x1`
//! directly; R2 decides `x1`, subtracts `√(α1 P_S)·x̂1·h` and decides `x2`.
//!
//! Phase 2: the destination observes the magnitude-aligned superposition
//! `√(β1 P_R)|h_R1D|·x̂1 + √(β2 P_R)|h_R2D|·x̂2 + n`, with real noise of
//! variance `N0/2`, decides `x̂1`, cancels it and decides `x̂2`.
//!
//! Trials are grouped into fixed-size blocks, and each block draws from its own
//! ChaCha stream keyed by `(seed, block index)`. Counts are summed over blocks,
//! so a report depends only on `(scenario, snr, trials, seed)` and never on
//! the number of workers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ScenarioConfig;
use crate::stats::binomial_std_error;

/// Trials per RNG stream.
pub const BLOCK_TRIALS: u64 = 1 << 16;

/// Estimates with fewer observed errors than this are flagged.
pub const MIN_RESOLVED_ERRORS: u64 = 100;

/// Amplitudes and standard deviations of one realization of the link model.
///
/// Usually derived from a scenario, but the fields are open so that test
/// harnesses can drive degenerate settings validation would reject.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub amp_x1_source: f64,
    pub amp_x2_source: f64,
    pub amp_x1_relay: f64,
    pub amp_x2_relay: f64,
    /// Per-component standard deviation of each channel coefficient (`σ_λ/√2`).
    pub std_sr1: f64,
    pub std_sr2: f64,
    pub std_r1d: f64,
    pub std_r2d: f64,
    /// Per-component noise standard deviation (`√(N0/2)`).
    pub noise_std: f64,
}

impl LinkParams {
    pub fn from_scenario(scenario: &ScenarioConfig) -> Self {
        let component = |var: f64| (0.5 * var).sqrt();
        Self {
            amp_x1_source: (scenario.alpha1() * scenario.p_s()).sqrt(),
            amp_x2_source: (scenario.alpha2() * scenario.p_s()).sqrt(),
            amp_x1_relay: (scenario.beta1() * scenario.p_r()).sqrt(),
            amp_x2_relay: (scenario.beta2() * scenario.p_r()).sqrt(),
            std_sr1: component(scenario.sigma2_sr1()),
            std_sr2: component(scenario.sigma2_sr2()),
            std_r1d: component(scenario.sigma2_r1d()),
            std_r2d: component(scenario.sigma2_r2d()),
            noise_std: component(scenario.n0()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channels {
    pub h_sr1: Complex64,
    pub h_sr2: Complex64,
    pub h_r1d: Complex64,
    pub h_r2d: Complex64,
}

/// Every symbol and decision of one protocol round; symbols are `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub x1: i8,
    pub x2: i8,
    /// R1's decision on `x1`.
    pub relay1_x1: i8,
    /// R2's first-stage decision on `x1`, used for cancellation.
    pub relay2_x1: i8,
    pub relay2_x2: i8,
    pub dest_x1: i8,
    pub dest_x2: i8,
}

fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> f64 {
    std * rng.sample::<f64, _>(StandardNormal)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> Complex64 {
    Complex64::new(gaussian(rng, std), gaussian(rng, std))
}

fn symbol<R: Rng + ?Sized>(rng: &mut R) -> i8 {
    if rng.random::<bool>() {
        1
    } else {
        -1
    }
}

/// Coherent matched-filter statistic `Re(h*·y)/|h|`.
fn matched(h: Complex64, y: Complex64) -> f64 {
    (h.conj() * y).re / h.norm()
}

pub fn draw_channels<R: Rng + ?Sized>(rng: &mut R, params: &LinkParams) -> Channels {
    Channels {
        h_sr1: complex_gaussian(rng, params.std_sr1),
        h_sr2: complex_gaussian(rng, params.std_sr2),
        h_r1d: complex_gaussian(rng, params.std_r1d),
        h_r2d: complex_gaussian(rng, params.std_r2d),
    }
}

/// One protocol round over the given channels; draws only noise.
pub fn run_trial_with<R: Rng + ?Sized>(
    rng: &mut R,
    params: &LinkParams,
    x1: i8,
    x2: i8,
    ch: &Channels,
) -> TrialOutcome {
    let superposed = params.amp_x1_source * f64::from(x1) + params.amp_x2_source * f64::from(x2);

    let y_r1 = ch.h_sr1 * superposed + complex_gaussian(rng, params.noise_std);
    let relay1_x1 = sign(matched(ch.h_sr1, y_r1));

    let y_r2 = ch.h_sr2 * superposed + complex_gaussian(rng, params.noise_std);
    let relay2_x1 = sign(matched(ch.h_sr2, y_r2));
    let residual = y_r2 - ch.h_sr2 * (params.amp_x1_source * f64::from(relay2_x1));
    let relay2_x2 = sign(matched(ch.h_sr2, residual));

    let gain_1 = params.amp_x1_relay * ch.h_r1d.norm();
    let gain_2 = params.amp_x2_relay * ch.h_r2d.norm();
    let y_d = gain_1 * f64::from(relay1_x1)
        + gain_2 * f64::from(relay2_x2)
        + gaussian(rng, params.noise_std);
    let dest_x1 = sign(y_d);
    let dest_x2 = sign(y_d - gain_1 * f64::from(dest_x1));

    TrialOutcome {
        x1,
        x2,
        relay1_x1,
        relay2_x1,
        relay2_x2,
        dest_x1,
        dest_x2,
    }
}

/// One protocol round with fresh symbols, fading and noise.
pub fn run_trial<R: Rng + ?Sized>(rng: &mut R, params: &LinkParams) -> TrialOutcome {
    let x1 = symbol(rng);
    let x2 = symbol(rng);
    let ch = draw_channels(rng, params);
    run_trial_with(rng, params, x1, x2, &ch)
}

/// Integer tallies over a batch of trials. Merging is plain addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ErrorCounts {
    pub x1_sr1: u64,
    /// R2's first-stage `x1` errors (erroneous cancellations).
    pub x1_sr2: u64,
    pub x2_sr2: u64,
    pub x1_r1d: u64,
    pub x2_r2d: u64,
    pub both_hop2: u64,
    pub x1_e2e: u64,
    pub x2_e2e: u64,
    pub both_e2e: u64,
    pub phase1_event_a: u64,
    pub phase2_event_a: u64,
}

impl ErrorCounts {
    pub fn record(&mut self, t: &TrialOutcome) {
        let tally = |hit: bool| u64::from(hit);
        self.x1_sr1 += tally(t.relay1_x1 != t.x1);
        self.x1_sr2 += tally(t.relay2_x1 != t.x1);
        self.x2_sr2 += tally(t.relay2_x2 != t.x2);
        let hop1 = t.dest_x1 != t.relay1_x1;
        let hop2 = t.dest_x2 != t.relay2_x2;
        self.x1_r1d += tally(hop1);
        self.x2_r2d += tally(hop2);
        self.both_hop2 += tally(hop1 && hop2);
        let e1 = t.dest_x1 != t.x1;
        let e2 = t.dest_x2 != t.x2;
        self.x1_e2e += tally(e1);
        self.x2_e2e += tally(e2);
        self.both_e2e += tally(e1 && e2);
        self.phase1_event_a += tally(t.x1 == t.x2);
        self.phase2_event_a += tally(t.relay1_x1 == t.relay2_x2);
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.x1_sr1 += other.x1_sr1;
        self.x1_sr2 += other.x1_sr2;
        self.x2_sr2 += other.x2_sr2;
        self.x1_r1d += other.x1_r1d;
        self.x2_r2d += other.x2_r2d;
        self.both_hop2 += other.both_hop2;
        self.x1_e2e += other.x1_e2e;
        self.x2_e2e += other.x2_e2e;
        self.both_e2e += other.both_e2e;
        self.phase1_event_a += other.phase1_event_a;
        self.phase2_event_a += other.phase2_event_a;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    scenario: ScenarioConfig,
    snr_db: f64,
    trials: u64,
    seed: u64,
    workers: usize,
}

impl SimConfig {
    /// `scenario`'s noise level is replaced by the one implied by `snr_db`.
    pub fn new(
        scenario: &ScenarioConfig,
        snr_db: f64,
        trials: u64,
        seed: u64,
        workers: usize,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::domain("trials must be at least 1"));
        }
        if workers == 0 {
            return Err(Error::domain("workers must be at least 1"));
        }
        if !snr_db.is_finite() {
            return Err(Error::domain(format!("snr must be finite, got {snr_db}")));
        }
        Ok(Self {
            scenario: scenario.at_snr_db(snr_db),
            snr_db,
            trials,
            seed,
            workers,
        })
    }

    pub fn scenario(&self) -> &ScenarioConfig {
        &self.scenario
    }
    pub fn snr_db(&self) -> f64 {
        self.snr_db
    }
    pub fn trials(&self) -> u64 {
        self.trials
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn workers(&self) -> usize {
        self.workers
    }
}

/// An empirical proportion with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerEstimate {
    pub errors: u64,
    pub trials: u64,
    pub rate: f64,
    pub std_error: f64,
    /// Fewer than [`MIN_RESOLVED_ERRORS`] events were observed.
    pub low_confidence: bool,
}

impl BerEstimate {
    fn proportion(errors: u64, trials: u64) -> Self {
        let rate = if trials == 0 {
            0.0
        } else {
            errors as f64 / trials as f64
        };
        Self {
            errors,
            trials,
            rate,
            std_error: binomial_std_error(rate, trials),
            low_confidence: errors < MIN_RESOLVED_ERRORS,
        }
    }

    /// Per-trial mean of two error indicators, with the variance of their
    /// average computed from the joint count.
    fn paired(first: u64, second: u64, both: u64, trials: u64) -> Self {
        let n = trials as f64;
        let rate = (first + second) as f64 / (2.0 * n);
        let second_moment = (first + second + 2 * both) as f64 / (4.0 * n);
        let variance = (second_moment - rate * rate).max(0.0);
        Self {
            errors: first + second,
            trials: 2 * trials,
            rate,
            std_error: (variance / n).sqrt(),
            low_confidence: first + second < MIN_RESOLVED_ERRORS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    /// Scenario with the noise level actually simulated.
    pub scenario: ScenarioConfig,
    pub snr_db: f64,
    pub trials: u64,
    pub seed: u64,
    pub counts: ErrorCounts,
}

impl SimReport {
    pub fn empty(scenario: ScenarioConfig, snr_db: f64, seed: u64) -> Self {
        Self {
            scenario,
            snr_db,
            trials: 0,
            seed,
            counts: ErrorCounts::default(),
        }
    }

    fn estimate(&self, errors: u64) -> BerEstimate {
        BerEstimate::proportion(errors, self.trials)
    }

    pub fn x1_sr1(&self) -> BerEstimate {
        self.estimate(self.counts.x1_sr1)
    }
    pub fn x2_sr2(&self) -> BerEstimate {
        self.estimate(self.counts.x2_sr2)
    }
    /// Destination `x1` errors relative to R1's decision.
    pub fn x1_r1d(&self) -> BerEstimate {
        self.estimate(self.counts.x1_r1d)
    }
    /// Destination `x2` errors relative to R2's decision.
    pub fn x2_r2d(&self) -> BerEstimate {
        self.estimate(self.counts.x2_r2d)
    }
    pub fn phase2_mean(&self) -> BerEstimate {
        BerEstimate::paired(
            self.counts.x1_r1d,
            self.counts.x2_r2d,
            self.counts.both_hop2,
            self.trials,
        )
    }
    pub fn x1_e2e(&self) -> BerEstimate {
        self.estimate(self.counts.x1_e2e)
    }
    pub fn x2_e2e(&self) -> BerEstimate {
        self.estimate(self.counts.x2_e2e)
    }
    pub fn e2e_mean(&self) -> BerEstimate {
        BerEstimate::paired(
            self.counts.x1_e2e,
            self.counts.x2_e2e,
            self.counts.both_e2e,
            self.trials,
        )
    }
    /// Fraction of trials whose relay decisions agree in sign.
    pub fn p_a_2nd(&self) -> BerEstimate {
        self.estimate(self.counts.phase2_event_a)
    }
}

fn run_block(params: &LinkParams, seed: u64, block: u64, trials: u64) -> ErrorCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut counts = ErrorCounts::default();
    for _ in 0..trials {
        counts.record(&run_trial(&mut rng, params));
    }
    counts
}

/// Runs `config.trials()` independent protocol rounds.
pub fn simulate(config: &SimConfig) -> Result<SimReport> {
    let params = LinkParams::from_scenario(&config.scenario);
    let blocks = config.trials.div_ceil(BLOCK_TRIALS);
    let block_trials = |b: u64| BLOCK_TRIALS.min(config.trials - b * BLOCK_TRIALS);
    let run = |b: u64| run_block(&params, config.seed, b, block_trials(b));

    let counts = if config.workers == 1 {
        (0..blocks)
            .map(run)
            .fold(ErrorCounts::default(), ErrorCounts::merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::domain(format!("failed to start worker pool: {e}")))?;
        pool.install(|| {
            (0..blocks)
                .into_par_iter()
                .map(run)
                .reduce(ErrorCounts::default, ErrorCounts::merge)
        })
    };
    Ok(SimReport {
        scenario: config.scenario.clone(),
        snr_db: config.snr_db,
        trials: config.trials,
        seed: config.seed,
        counts,
    })
}
