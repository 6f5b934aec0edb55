use serde::{Deserialize, Serialize};

use crate::error::{argument, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    /// Points crowd towards `min` with an exponential profile.
    Log,
}

/// Grid over the dimensionless time `κt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Density contrast of log spacing: the last interval is `e^4 ≈ 55` times the first.
const LOG_CONTRAST: f64 = 4.0;

impl Default for KappaGrid {
    fn default() -> Self {
        Self { min: 0.0, max: 5.0, count: 256, spacing: Spacing::Log }
    }
}

impl KappaGrid {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        let g = Self { min, max, count, spacing };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Spacing::Linear)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(argument("a kappa_t grid needs at least two points"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min < 0.0 || self.max <= self.min {
            return Err(argument(format!("invalid kappa_t range [{}, {}]", self.min, self.max)));
        }
        Ok(())
    }

    /// Sorted grid points; endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let span = self.max - self.min;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.max;
                }
                let u = i as f64 / (n - 1) as f64;
                let frac = match self.spacing {
                    Spacing::Linear => u,
                    Spacing::Log => (LOG_CONTRAST * u).exp_m1() / LOG_CONTRAST.exp_m1(),
                };
                self.min + span * frac
            })
            .collect()
    }
}

/// Evenly spaced real `|α|` values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSweep {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for AlphaSweep {
    fn default() -> Self {
        Self { min: 0.01, max: 0.99, count: 99 }
    }
}

impl AlphaSweep {
    pub fn validate(&self) -> Result<()> {
        if self.count < 1 || !(self.min > 0.0 && self.max < 1.0 && self.min <= self.max) {
            return Err(argument(format!(
                "alpha sweep {}:{}:{} must satisfy 0 < min <= max < 1, count >= 1",
                self.min, self.max, self.count
            )));
        }
        if self.count == 1 && self.min != self.max {
            return Err(argument("a single-point alpha sweep needs min == max"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i == self.count - 1 { self.max } else { self.min + step * i as f64 }).collect()
    }
}
