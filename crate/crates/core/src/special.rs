//! Gaussian tail functions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Gaussian tail probability `Q(x) = P(N(0,1) > x) = erfc(x/√2)/2`.
///
/// Negative arguments are evaluated through `1 - Q(|x|)`.
pub fn q_function(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 0.0 {
        0.5 * libm::erfc(x * FRAC_1_SQRT_2)
    } else {
        1.0 - 0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
    }
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `exp(x²)·erfc(x)`.
///
/// Stays finite for large positive `x`, where `erfc` underflows long before
/// `exp(x²)` overflows.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        // erfc(-x) = 2 - erfc(x)
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < 5.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // Continued fraction, evaluated bottom-up:
    // erfcx(x) = (1/√π) · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut tail = x;
    for k in (1..=60).rev() {
        tail = x + (k as f64 * 0.5) / tail;
    }
    1.0 / (PI.sqrt() * tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_at_zero_is_half() {
        assert_eq!(q_function(0.0), 0.5);
    }

    #[test]
    fn q_limits() {
        assert_eq!(q_function(f64::NEG_INFINITY), 1.0);
        assert_eq!(q_function(f64::INFINITY), 0.0);
        assert!((q_function(-40.0) - 1.0).abs() < 1e-300);
    }

    #[test]
    fn q_reflection() {
        for &x in &[0.1, 0.7, 1.3, 2.9, 5.5] {
            assert!((q_function(-x) - (1.0 - q_function(x))).abs() < 1e-15);
        }
    }

    #[test]
    fn q_at_standard_normal_quantile() {
        // 0.9 quantile of N(0,1): 1.2815515655446004
        assert!((q_function(1.2815515655446004) - 0.1).abs() < 1e-14);
        // 0.999 quantile: 3.090232306167813
        assert!((q_function(3.090232306167813) - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn erfcx_is_continuous_across_branch() {
        let below = erfcx(5.0 - 1e-12);
        let above = erfcx(5.0 + 1e-12);
        assert!((below - above).abs() / below < 1e-10, "{below} vs {above}");
    }

    #[test]
    fn erfcx_asymptote() {
        // erfcx(x) ~ 1/(x√π) (1 - 1/(2x²) + 3/(4x⁴))
        let x = 1e4_f64;
        let asym = 1.0 / (x * PI.sqrt()) * (1.0 - 0.5 / (x * x));
        assert!((erfcx(x) - asym).abs() / asym < 1e-12);
        assert_eq!(erfcx(0.0), 1.0);
    }

    #[test]
    fn erfcx_negative_argument() {
        let x = -1.5_f64;
        let direct = (x * x).exp() * libm::erfc(x);
        assert!((erfcx(x) - direct).abs() / direct < 1e-13);
    }
}
