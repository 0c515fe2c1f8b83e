//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.
//!
//! Finite intervals use global adaptive bisection with a 15-point Kronrod
//! rule and its embedded 7-point Gauss rule. Semi-infinite intervals are
//! covered by a sequence of finite segments whose width doubles each step;
//! the sequence stops once a segment contributes less than
//! [`TAIL_CUTOFF`] of the running total.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::QuadratureError;

/// Relative size below which a further tail segment is dropped.
pub const TAIL_CUTOFF: f64 = 1e-15;

const MAX_SEGMENTS: usize = 64;

// 15-point Kronrod abscissae (non-negative half) and weights. The odd-index
// abscissae are shared with the 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Error targets for one integral: stop when the estimated absolute error is
/// below `max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    /// Upper bound on the number of subintervals per finite integral.
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

impl Estimate {
    fn zero() -> Self {
        Self {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        }
    }

    fn add(&mut self, other: Estimate) {
        self.value += other.value;
        self.abs_error += other.abs_error;
        self.evaluations += other.evaluations;
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lower: f64, upper: f64) -> Segment {
    let center = 0.5 * (lower + upper);
    let half = 0.5 * (upper - lower);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lower,
        upper,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over the finite interval `[lower, upper]`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    tol: Tolerance,
) -> Result<Estimate, QuadratureError> {
    if lower == upper {
        return Ok(Estimate::zero());
    }
    if upper < lower {
        let est = integrate(f, upper, lower, tol)?;
        return Ok(Estimate {
            value: -est.value,
            ..est
        });
    }

    let first = kronrod15(&f, lower, upper);
    let mut value = first.value;
    let mut error = first.error;
    let mut evaluations = 15;
    let mut splits = 0usize;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            return Ok(Estimate {
                value,
                abs_error: error,
                evaluations,
            });
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => unreachable!("heap holds at least one segment"),
        };
        let mid = 0.5 * (worst.lower + worst.upper);
        if heap.len() + 2 > tol.max_intervals || mid <= worst.lower || mid >= worst.upper {
            return Err(QuadratureError {
                lower,
                upper,
                achieved: error,
                requested: target,
            });
        }
        let left = kronrod15(&f, worst.lower, mid);
        let right = kronrod15(&f, mid, worst.upper);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        splits += 1;
        // Re-sum periodically; the running update accumulates rounding.
        if splits.is_multiple_of(64) {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// Integrates `f` over `[lower, ∞)`.
///
/// The first segment is `[lower, lower + width]`; each following segment is
/// twice as wide as the one before it. `width` should be on the order of the
/// integrand's decay length.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    width: f64,
    tol: Tolerance,
) -> Result<Estimate, QuadratureError> {
    assert!(
        width > 0.0 && width.is_finite(),
        "segment width must be positive"
    );
    let mut total = Estimate::zero();
    let mut start = lower;
    let mut span = width;
    for segment in 0..MAX_SEGMENTS {
        let end = start + span;
        let piece = integrate(&f, start, end, tol)?;
        total.add(piece);
        let negligible = piece.value.abs() <= TAIL_CUTOFF * total.value.abs()
            || (total.value == 0.0 && piece.value == 0.0 && f(end) == 0.0);
        if segment >= 2 && negligible {
            return Ok(total);
        }
        start = end;
        span *= 2.0;
    }
    Err(QuadratureError {
        lower,
        upper: f64::INFINITY,
        achieved: total.abs_error,
        requested: tol.abs.max(tol.rel * total.value.abs()),
    })
}
