//! Correlation measures over a uniform κt grid.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amid::{amid, AmidConfig};
use crate::channels::{evolve_analytic, ChannelPoint, NoiseKind, StateKind};
use crate::error::{QcorrError, Result};
use crate::mid::mid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Mid,
    Amid,
    Both,
}

impl Measure {
    pub fn label(self) -> &'static str {
        match self {
            Measure::Mid => "mid",
            Measure::Amid => "amid",
            Measure::Both => "both",
        }
    }

    pub fn needs_amid(self) -> bool {
        !matches!(self, Measure::Mid)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Measure {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mid" => Ok(Measure::Mid),
            "amid" => Ok(Measure::Amid),
            "both" => Ok(Measure::Both),
            other => Err(QcorrError::InvalidParameter(format!("unknown measure '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub state: StateKind,
    pub noise: NoiseKind,
    pub measure: Measure,
    pub kt_min: f64,
    pub kt_max: f64,
    pub points: usize,
    pub amid: AmidConfig,
}

impl SweepConfig {
    /// `[0, 3]` with 61 points and default optimizer settings.
    pub fn new(state: StateKind, noise: NoiseKind, measure: Measure) -> Self {
        Self {
            state,
            noise,
            measure,
            kt_min: 0.0,
            kt_max: 3.0,
            points: 61,
            amid: AmidConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.kt_min.is_finite() || self.kt_min < 0.0 {
            return Err(QcorrError::InvalidParameter(format!(
                "kt_min must be finite and non-negative, got {}",
                self.kt_min
            )));
        }
        if !self.kt_max.is_finite() || self.kt_max <= self.kt_min {
            return Err(QcorrError::InvalidParameter(format!(
                "kt_max must be finite and exceed kt_min, got [{}, {}]",
                self.kt_min, self.kt_max
            )));
        }
        if self.points < 2 {
            return Err(QcorrError::InvalidParameter(format!(
                "a sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.measure.needs_amid() {
            self.amid.validate()?;
        }
        Ok(())
    }

    /// Uniform grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points - 1;
        let step = (self.kt_max - self.kt_min) / n as f64;
        (0..=n)
            .map(|i| if i == n { self.kt_max } else { self.kt_min + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPoint {
    pub kt: f64,
    pub mid: f64,
    pub amid: Option<f64>,
    pub mutual_information: f64,
    pub s_rho: f64,
    pub s_pi_rho: f64,
}

pub fn evaluate_point(
    state: StateKind,
    noise: NoiseKind,
    kt: f64,
    measure: Measure,
    amid_config: &AmidConfig,
) -> Result<CorrelationPoint> {
    let rho = evolve_analytic(ChannelPoint::new(state, noise, kt)?);
    let m = mid(&rho)?;
    let a = if measure.needs_amid() {
        Some(amid(&rho, amid_config)?.amid)
    } else {
        None
    };
    Ok(CorrelationPoint {
        kt,
        mid: m.mid,
        amid: a,
        mutual_information: m.mutual_information,
        s_rho: m.s_rho,
        s_pi_rho: m.s_pi_rho,
    })
}

/// One point per grid value, in grid order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<CorrelationPoint>> {
    config.validate()?;
    config
        .grid()
        .into_par_iter()
        .map(|kt| evaluate_point(config.state, config.noise, kt, config.measure, &config.amid))
        .collect()
}
