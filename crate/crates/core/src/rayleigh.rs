//! Sum and difference of two independent Rayleigh amplitudes.
//!
//! `X` and `Y` are Rayleigh with scale parameters `σ_X`, `σ_Y`, i.e. density
//! `x/σ² · exp(-x²/(2σ²))` and `E[X²] = 2σ²`. The destination's decision
//! statistics are `Z = X + Y` (same-sign relay outputs) and `W = X - Y`
//! (opposite-sign outputs); error probabilities there are expectations of
//! `Q(√2·Z)` and `Q(√2·W)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{Error, QuadratureError, Result};
use crate::quadrature::{integrate, integrate_to_infinity, Tolerance};
use crate::special::{erf, erfcx, q_function};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighPair {
    sigma_x: f64,
    sigma_y: f64,
}

impl RayleighPair {
    pub fn new(sigma_x: f64, sigma_y: f64) -> Result<Self> {
        for (name, s) in [("sigma_x", sigma_x), ("sigma_y", sigma_y)] {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {s}"
                )));
            }
        }
        Ok(Self { sigma_x, sigma_y })
    }

    /// Pair whose amplitudes have root-mean-square values `rms_x`, `rms_y`,
    /// e.g. `|h|·√(P/N0)` with `E|h|² = σ²_h`.
    pub fn from_rms(rms_x: f64, rms_y: f64) -> Result<Self> {
        Self::new(rms_x * FRAC_1_SQRT_2, rms_y * FRAC_1_SQRT_2)
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn sigma_y(&self) -> f64 {
        self.sigma_y
    }

    /// `(σ_X² + σ_Y²)/(σ_X²·σ_Y²)`
    pub fn tau_c(&self) -> f64 {
        let (vx, vy) = (self.sigma_x.powi(2), self.sigma_y.powi(2));
        (vx + vy) / (vx * vy)
    }

    /// The pair with `X` and `Y` exchanged; reflects `W` about zero.
    pub fn swapped(&self) -> Self {
        Self {
            sigma_x: self.sigma_y,
            sigma_y: self.sigma_x,
        }
    }
}

/// Density of `Z = X + Y`; zero for negative `z`.
pub fn pdf_sum(z: f64, pair: &RayleighPair) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let (sx, sy) = (pair.sigma_x, pair.sigma_y);
    let (vx, vy) = (sx * sx, sy * sy);
    let s = vx + vy;
    let z2 = z * z;
    let direct = (vx * (-z2 / (2.0 * vx)).exp() + vy * (-z2 / (2.0 * vy)).exp()) * z / (s * s);
    let root = (2.0 * s).sqrt();
    let cross = (PI / 2.0).sqrt() * sx * sy * (z2 - s) / s.powf(2.5)
        * (-z2 / (2.0 * s)).exp()
        * (erf(z * sy / (sx * root)) + erf(z * sx / (sy * root)));
    direct + cross
}

/// Density of `W = X - Y` over the whole real line.
///
/// The closed form is the two-branch expression written in terms of the
/// mean-square amplitudes `a = E[X²]`, `b = E[Y²]` and `τ = (a+b)/(ab)`.
/// `exp(·)·erfc(·)` products are folded into `erfcx` so that neither branch
/// overflows for large `|w|`.
pub fn pdf_diff(w: f64, pair: &RayleighPair) -> f64 {
    let a = 2.0 * pair.sigma_x.powi(2);
    let b = 2.0 * pair.sigma_y.powi(2);
    let tau = (a + b) / (a * b);
    let w2 = w * w;
    let bracket = (tau * a * a + 2.0 * w2) / (2.0 * tau * a) - w2;
    let lead = PI.sqrt() / (2.0 * tau.powf(1.5) * a);
    let scale = 4.0 / (a * b);
    if w >= 0.0 {
        let u = w / (tau.sqrt() * a);
        let linear = w / (2.0 * tau) * (1.0 - 1.0 / (tau * a));
        scale * (-w2 / a).exp() * (lead * erfcx(u) * bracket + linear)
    } else {
        let u = w * (1.0 - tau * a) / (tau.sqrt() * a);
        let linear = w / (2.0 * tau * tau * a);
        scale * (-w2 / b).exp() * (lead * erfcx(u) * bracket - linear)
    }
}

/// `P(Z ≤ z)` by integrating [`pdf_sum`].
pub fn cdf_sum(z: f64, pair: &RayleighPair) -> Result<f64, QuadratureError> {
    if z <= 0.0 {
        return Ok(0.0);
    }
    Ok(integrate(|t| pdf_sum(t, pair), 0.0, z, Tolerance::default())?.value)
}

/// `P(W ≤ w)` by integrating [`pdf_diff`].
pub fn cdf_diff(w: f64, pair: &RayleighPair) -> Result<f64, QuadratureError> {
    let tol = Tolerance::default();
    if w < 0.0 {
        let width = (2.0 * pair.sigma_y).min(w.abs().max(1e-3));
        let lower = integrate_to_infinity(|t| pdf_diff(-t, pair), -w, width, tol)?;
        Ok(lower.value)
    } else {
        let width = (2.0 * pair.sigma_x).min(w.max(1e-3));
        let upper = integrate_to_infinity(|t| pdf_diff(t, pair), w, width, tol)?;
        Ok(1.0 - upper.value)
    }
}

/// `E[Q(√2·Z)]`
pub fn expect_q_over_sum(pair: &RayleighPair) -> Result<f64, QuadratureError> {
    let width = (pair.sigma_x + pair.sigma_y).min(1.0);
    let est = integrate_to_infinity(
        |z| q_function(SQRT_2 * z) * pdf_sum(z, pair),
        0.0,
        width,
        Tolerance::default(),
    )?;
    Ok(est.value)
}

/// `E[Q(√2·W)]`, integrated over both signs of `w`.
pub fn expect_q_over_diff(pair: &RayleighPair) -> Result<f64, QuadratureError> {
    let tol = Tolerance::default();
    let negative = integrate_to_infinity(
        |t| q_function(-SQRT_2 * t) * pdf_diff(-t, pair),
        0.0,
        (2.0 * pair.sigma_y).min(1.0),
        tol,
    )?;
    let positive = integrate_to_infinity(
        |w| q_function(SQRT_2 * w) * pdf_diff(w, pair),
        0.0,
        (2.0 * pair.sigma_x).min(1.0),
        tol,
    )?;
    Ok(negative.value + positive.value)
}

/// High-SNR limit of [`expect_q_over_diff`]: `P(X < Y) = σ_Y²/(σ_X² + σ_Y²)`.
pub fn high_snr_diff_limit(pair: &RayleighPair) -> f64 {
    let (vx, vy) = (pair.sigma_x.powi(2), pair.sigma_y.powi(2));
    vy / (vx + vy)
}
