//! Scenario description, validation, unit conversion and the superposition
//! energy levels shared by the analysis and the simulator.
//!
//! A scenario is loaded from a TOML file with the layout below. Channel
//! variances are canonical; the `[distance]` section is only consulted when
//! the `[channel]` section is absent.
//!
//! ```toml
//! name = "Scenario III"
//!
//! [channel]            # variance of each CN(0, σ²) link coefficient
//! sigma2_sr1 = 1.0
//! sigma2_sr2 = 10.0
//! sigma2_r1d = 9.0
//! sigma2_r2d = 2.0
//!
//! [power]
//! alpha1 = 0.9602      # source share of x1, in (0.5, 1)
//! beta1 = 0.8011       # relay share of x1, in (0, 1)
//! p_s = 1.0            # optional, default 1
//! p_r = 1.0            # optional, default 1
//! n0 = 1.0             # optional, default 1 (experiments override it from the SNR)
//!
//! # [distance]         # σ² = mu · d^tau_pl, used when [channel] is missing
//! # mu = 1.0
//! # tau_pl = -3.0
//! # d_sr1 = 1.5
//! # d_sr2 = 0.5
//! # d_r1d = 0.5
//! # d_r2d = 1.5
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError, Violation};

/// Converts a decibel ratio to linear scale.
pub fn snr_db_to_linear(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

/// Energies of the noiseless superposed constellation points.
///
/// `a`/`b` are the same-sign and opposite-sign superpositions, `c` is the
/// weak symbol alone after a correct cancellation, and `d`/`e` are what
/// remains after cancelling a wrong strong-symbol decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevels {
    pub eps_a: f64,
    pub eps_b: f64,
    pub eps_c: f64,
    pub eps_d: f64,
    pub eps_e: f64,
}

pub fn energy_levels(alpha1: f64, p: f64) -> Result<EnergyLevels> {
    if !(alpha1 > 0.0 && alpha1 < 1.0) {
        return Err(Error::domain(format!(
            "alpha1 must lie in (0, 1), got {alpha1}"
        )));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("power must be positive, got {p}")));
    }
    let strong = (alpha1 * p).sqrt();
    let weak = ((1.0 - alpha1) * p).sqrt();
    Ok(EnergyLevels {
        eps_a: (strong + weak).powi(2),
        eps_b: (strong - weak).powi(2),
        eps_c: (1.0 - alpha1) * p,
        eps_d: (2.0 * strong + weak).powi(2),
        eps_e: (2.0 * strong - weak).powi(2),
    })
}

/// Path-loss model `σ²_λ = mu · d_λ^tau_pl`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceModel {
    pub mu: Option<f64>,
    pub tau_pl: Option<f64>,
    pub d_sr1: Option<f64>,
    pub d_sr2: Option<f64>,
    pub d_r1d: Option<f64>,
    pub d_r2d: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChannel {
    pub sigma2_sr1: Option<f64>,
    pub sigma2_sr2: Option<f64>,
    pub sigma2_r1d: Option<f64>,
    pub sigma2_r2d: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPower {
    pub alpha1: Option<f64>,
    pub beta1: Option<f64>,
    pub p_s: Option<f64>,
    pub p_r: Option<f64>,
    pub n0: Option<f64>,
}

/// Unvalidated scenario as read from a configuration file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub name: Option<String>,
    pub channel: Option<RawChannel>,
    pub power: Option<RawPower>,
    pub distance: Option<DistanceModel>,
}

impl RawScenario {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        // Serializing plain optional fields and tables cannot fail.
        toml::to_string(self).expect("scenario serializes to TOML")
    }
}

/// A validated network configuration.
///
/// Immutable once built; construct through [`validate_scenario`],
/// [`ScenarioConfig::from_toml_str`] or [`Preset::scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    name: Option<String>,
    sigma2_sr1: f64,
    sigma2_sr2: f64,
    sigma2_r1d: f64,
    sigma2_r2d: f64,
    alpha1: f64,
    beta1: f64,
    p_s: f64,
    p_r: f64,
    n0: f64,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(validate_scenario(&RawScenario::from_toml_str(text)?)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn sigma2_sr1(&self) -> f64 {
        self.sigma2_sr1
    }
    pub fn sigma2_sr2(&self) -> f64 {
        self.sigma2_sr2
    }
    pub fn sigma2_r1d(&self) -> f64 {
        self.sigma2_r1d
    }
    pub fn sigma2_r2d(&self) -> f64 {
        self.sigma2_r2d
    }
    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }
    pub fn alpha2(&self) -> f64 {
        1.0 - self.alpha1
    }
    pub fn beta1(&self) -> f64 {
        self.beta1
    }
    pub fn beta2(&self) -> f64 {
        1.0 - self.beta1
    }
    pub fn p_s(&self) -> f64 {
        self.p_s
    }
    pub fn p_r(&self) -> f64 {
        self.p_r
    }
    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Source-side transmit SNR `P_S/N0` in dB.
    pub fn snr_db(&self) -> f64 {
        10.0 * (self.p_s / self.n0).log10()
    }

    /// Same scenario with `N0` chosen so that `P_S/N0` equals `snr_db`.
    pub fn at_snr_db(&self, snr_db: f64) -> Self {
        Self {
            n0: self.p_s / snr_db_to_linear(snr_db),
            ..self.clone()
        }
    }

    /// Same scenario with a different power split; fails when the split
    /// violates the allocation constraints.
    pub fn with_allocation(&self, alpha1: f64, beta1: f64) -> Result<Self> {
        let mut raw = self.to_raw();
        let power = raw.power.get_or_insert_with(RawPower::default);
        power.alpha1 = Some(alpha1);
        power.beta1 = Some(beta1);
        Ok(validate_scenario(&raw)?)
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        Self {
            name: Some(name.into()),
            ..self.clone()
        }
    }

    pub fn energy_levels(&self) -> EnergyLevels {
        energy_levels(self.alpha1, self.p_s).expect("validated scenario has a valid source split")
    }

    /// Levels seen at the destination, using the relay split and power.
    pub fn relay_energy_levels(&self) -> EnergyLevels {
        energy_levels(self.beta1, self.p_r).expect("validated scenario has a valid relay split")
    }

    /// Canonical raw form; validating it reproduces `self`.
    pub fn to_raw(&self) -> RawScenario {
        RawScenario {
            name: self.name.clone(),
            channel: Some(RawChannel {
                sigma2_sr1: Some(self.sigma2_sr1),
                sigma2_sr2: Some(self.sigma2_sr2),
                sigma2_r1d: Some(self.sigma2_r1d),
                sigma2_r2d: Some(self.sigma2_r2d),
            }),
            power: Some(RawPower {
                alpha1: Some(self.alpha1),
                beta1: Some(self.beta1),
                p_s: Some(self.p_s),
                p_r: Some(self.p_r),
                n0: Some(self.n0),
            }),
            distance: None,
        }
    }

    pub fn to_toml_string(&self) -> String {
        self.to_raw().to_toml_string()
    }
}

fn check_positive(out: &mut Vec<Violation>, field: &str, value: f64) {
    if !(value > 0.0 && value.is_finite()) {
        out.push(Violation::new(
            field,
            format!("must be positive and finite, got {value}"),
        ));
    }
}

fn variances_from_distance(model: &DistanceModel, out: &mut Vec<Violation>) -> Option<[f64; 4]> {
    let fields = [
        ("distance.mu", model.mu),
        ("distance.tau_pl", model.tau_pl),
        ("distance.d_sr1", model.d_sr1),
        ("distance.d_sr2", model.d_sr2),
        ("distance.d_r1d", model.d_r1d),
        ("distance.d_r2d", model.d_r2d),
    ];
    let missing: Vec<&str> = fields
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(name, _)| *name)
        .collect();
    if !missing.is_empty() {
        out.push(Violation::new(
            "distance",
            format!("distance model incomplete: missing {}", missing.join(", ")),
        ));
        return None;
    }
    let [mu, tau, d_sr1, d_sr2, d_r1d, d_r2d] = fields.map(|(_, v)| v.unwrap_or_default());
    let before = out.len();
    check_positive(out, "distance.mu", mu);
    if !tau.is_finite() {
        out.push(Violation::new("distance.tau_pl", "must be finite"));
    }
    for (name, d) in &fields[2..] {
        check_positive(out, name, d.unwrap_or_default());
    }
    if !(d_sr1 > d_sr2) {
        out.push(Violation::new(
            "distance.d_sr1",
            format!("must exceed d_sr2 ({d_sr1} <= {d_sr2})"),
        ));
    }
    if !(d_r1d < d_r2d) {
        out.push(Violation::new(
            "distance.d_r1d",
            format!("must be below d_r2d ({d_r1d} >= {d_r2d})"),
        ));
    }
    (out.len() == before).then(|| [d_sr1, d_sr2, d_r1d, d_r2d].map(|d| mu * d.powf(tau)))
}

/// Checks every constraint of a raw scenario and resolves derived fields.
///
/// All violations are collected rather than stopping at the first one.
pub fn validate_scenario(raw: &RawScenario) -> Result<ScenarioConfig, ValidationError> {
    let mut violations = Vec::new();

    let variances = match (&raw.channel, &raw.distance) {
        (Some(ch), _) => {
            let fields = [
                ("channel.sigma2_sr1", ch.sigma2_sr1),
                ("channel.sigma2_sr2", ch.sigma2_sr2),
                ("channel.sigma2_r1d", ch.sigma2_r1d),
                ("channel.sigma2_r2d", ch.sigma2_r2d),
            ];
            for (name, value) in fields {
                match value {
                    None => violations.push(Violation::new(name, "missing")),
                    Some(v) => check_positive(&mut violations, name, v),
                }
            }
            Some(fields.map(|(_, v)| v.unwrap_or(f64::NAN)))
        }
        (None, Some(model)) => variances_from_distance(model, &mut violations),
        (None, None) => {
            violations.push(Violation::new(
                "channel",
                "either [channel] variances or a [distance] model is required",
            ));
            None
        }
    };

    let power = raw.power.clone().unwrap_or_default();
    let alpha1 = match power.alpha1 {
        None => {
            violations.push(Violation::new("power.alpha1", "missing"));
            f64::NAN
        }
        Some(a) => {
            if !(a > 0.5) {
                violations.push(Violation::new(
                    "power.alpha1",
                    format!("alpha1 must exceed 0.5 so that alpha1 > alpha2, got {a}"),
                ));
            } else if !(a < 1.0) {
                violations.push(Violation::new(
                    "power.alpha1",
                    format!("alpha1 must be below 1 so that alpha2 > 0, got {a}"),
                ));
            }
            a
        }
    };
    let beta1 = match power.beta1 {
        None => {
            violations.push(Violation::new("power.beta1", "missing"));
            f64::NAN
        }
        Some(b) => {
            if !(b > 0.0 && b < 1.0) {
                violations.push(Violation::new(
                    "power.beta1",
                    format!("beta1 must lie in (0, 1), got {b}"),
                ));
            }
            b
        }
    };
    let p_s = power.p_s.unwrap_or(1.0);
    let p_r = power.p_r.unwrap_or(1.0);
    let n0 = power.n0.unwrap_or(1.0);
    check_positive(&mut violations, "power.p_s", p_s);
    check_positive(&mut violations, "power.p_r", p_r);
    check_positive(&mut violations, "power.n0", n0);

    if !violations.is_empty() {
        return Err(ValidationError { violations });
    }
    let [sigma2_sr1, sigma2_sr2, sigma2_r1d, sigma2_r2d] =
        variances.expect("variances resolved when no violations were recorded");
    Ok(ScenarioConfig {
        name: raw.name.clone(),
        sigma2_sr1,
        sigma2_sr2,
        sigma2_r1d,
        sigma2_r2d,
        alpha1,
        beta1,
        p_s,
        p_r,
        n0,
    })
}

/// The four reference configurations.
///
/// I and II are the second-phase study settings, III and IV the end-to-end
/// settings with their sub-optimal power splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    I,
    II,
    III,
    IV,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::I, Preset::II, Preset::III, Preset::IV];

    pub fn label(self) -> &'static str {
        match self {
            Preset::I => "Scenario I",
            Preset::II => "Scenario II",
            Preset::III => "Scenario III",
            Preset::IV => "Scenario IV",
        }
    }

    /// `(σ²_SR1, σ²_SR2, σ²_R1D, σ²_R2D, α1, β1)`
    fn parameters(self) -> [f64; 6] {
        match self {
            Preset::I => [1.0, 2.0, 2.0, 1.0, 0.8, 0.8],
            Preset::II => [2.0, 10.0, 10.0, 2.0, 0.7, 0.7],
            Preset::III => [1.0, 10.0, 9.0, 2.0, 0.9602, 0.8011],
            Preset::IV => [2.0, 10.0, 9.0, 3.0, 0.8816, 0.6055],
        }
    }

    pub fn scenario(self) -> ScenarioConfig {
        let [sr1, sr2, r1d, r2d, alpha1, beta1] = self.parameters();
        let raw = RawScenario {
            name: Some(self.label().to_string()),
            channel: Some(RawChannel {
                sigma2_sr1: Some(sr1),
                sigma2_sr2: Some(sr2),
                sigma2_r1d: Some(r1d),
                sigma2_r2d: Some(r2d),
            }),
            power: Some(RawPower {
                alpha1: Some(alpha1),
                beta1: Some(beta1),
                ..RawPower::default()
            }),
            distance: None,
        };
        validate_scenario(&raw).expect("preset parameters are valid")
    }
}
