use std::fmt;
use std::str::FromStr;

use crate::error::CliError;

/// An ascending, evenly spaced list of values written `start:stop:step`, or a
/// single value.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    start: f64,
    stop: f64,
    step: f64,
    values: Vec<f64>,
}

// Rounding applied to grid points so that 0.1-style steps do not accumulate
// representation error in artifacts.
const DECIMALS: f64 = 1e9;

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, CliError> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(CliError::invalid("grid bounds and step must be finite"));
        }
        if stop < start {
            return Err(CliError::invalid(format!(
                "grid must be ascending, got {start}:{stop}"
            )));
        }
        if step <= 0.0 {
            return Err(CliError::invalid(format!(
                "grid step must be positive, got {step}"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(CliError::invalid(format!(
                "grid has too many points ({count})"
            )));
        }
        let values = (0..count)
            .map(|i| ((start + i as f64 * step) * DECIMALS).round() / DECIMALS)
            .collect();
        Ok(Self {
            start,
            stop,
            step,
            values,
        })
    }

    pub fn single(value: f64) -> Result<Self, CliError> {
        Self::new(value, value, 1.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.step)
        }
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::invalid(format!("not a number in grid '{s}': '{t}'")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] if !v.trim().is_empty() => Grid::single(number(v)?),
            [a, b, c] => Grid::new(number(a)?, number(b)?, number(c)?),
            _ => Err(CliError::invalid(format!(
                "grid must be 'start:stop:step' or a single value, got '{s}'"
            ))),
        }
    }
}
