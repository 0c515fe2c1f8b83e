//! Small statistics helpers for comparing simulation against analysis.

use crate::error::QuadratureError;
use crate::quadrature::{integrate, Tolerance};

/// Standard error of a binomial proportion estimated from `trials` draws.
pub fn binomial_std_error(p: f64, trials: u64) -> f64 {
    if trials == 0 {
        return f64::INFINITY;
    }
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// True when `observed` lies within `max(k·sigma, rel·|expected|)` of `expected`.
pub fn agrees(observed: f64, expected: f64, sigma: f64, k: f64, rel: f64) -> bool {
    (observed - expected).abs() <= (k * sigma).max(rel * expected.abs())
}

/// One-sample Kolmogorov–Smirnov statistic of `sorted` against the CDF values
/// `cdf[i] = F(sorted[i])`.
pub fn ks_statistic(sorted: &[f64], cdf: &[f64]) -> f64 {
    assert_eq!(sorted.len(), cdf.len(), "one CDF value per sample");
    let n = sorted.len() as f64;
    cdf.iter()
        .enumerate()
        .map(|(i, &f)| {
            let below = i as f64 / n;
            let above = (i + 1) as f64 / n;
            (above - f).abs().max((f - below).abs())
        })
        .fold(0.0, f64::max)
}

/// CDF values at ascending `sorted` points, given `F(sorted[0])` and the
/// density. Each gap is integrated separately, so the cost is linear in the
/// number of points.
pub fn cdf_along_sorted<F: Fn(f64) -> f64>(
    sorted: &[f64],
    first: f64,
    pdf: F,
) -> Result<Vec<f64>, QuadratureError> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut running = first;
    for (i, &x) in sorted.iter().enumerate() {
        if i > 0 {
            running += integrate(&pdf, sorted[i - 1], x, Tolerance::default())?.value;
        }
        out.push(running);
    }
    Ok(out)
}
