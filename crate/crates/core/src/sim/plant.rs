use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kv::{self, KeyValues};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlantMode {
    /// Joint angle equals the commanded angle at every sample.
    #[default]
    PerfectTracking,
    /// First-order lag towards the commanded angle.
    FirstOrderLag,
}

impl fmt::Display for PlantMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PerfectTracking => "perfect_tracking",
            Self::FirstOrderLag => "first_order_lag",
        })
    }
}

impl FromStr for PlantMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perfect_tracking" | "perfect" => Ok(Self::PerfectTracking),
            "first_order_lag" | "lag" => Ok(Self::FirstOrderLag),
            other => Err(Error::parse("key `plant`", format!("unknown plant `{other}`"))),
        }
    }
}

/// Kinematic stand-in for the actuated knee and ankle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantModel {
    pub mode: PlantMode,
    pub knee_tau_s: f64,
    pub ankle_tau_s: f64,
}

impl Default for PlantModel {
    fn default() -> Self {
        Self::perfect()
    }
}

impl PlantModel {
    pub const KEYS: [&'static str; 3] = ["plant", "plant_tau_knee_s", "plant_tau_ankle_s"];

    pub fn perfect() -> Self {
        Self {
            mode: PlantMode::PerfectTracking,
            knee_tau_s: 0.03,
            ankle_tau_s: 0.03,
        }
    }

    pub fn lag(tau_s: f64) -> Self {
        Self {
            mode: PlantMode::FirstOrderLag,
            knee_tau_s: tau_s,
            ankle_tau_s: tau_s,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == PlantMode::FirstOrderLag {
            for tau in [self.knee_tau_s, self.ankle_tau_s] {
                if !(tau.is_finite() && tau > 0.0) {
                    return Err(Error::invalid("plant", "lag time constants must be positive"));
                }
            }
        }
        Ok(())
    }

    pub fn apply_kv(mut self, kv: &KeyValues) -> Result<Self> {
        if let Some(m) = kv.get("plant") {
            self.mode = m.parse()?;
        }
        if let Some(v) = kv.get_f64("plant_tau_knee_s")? {
            self.knee_tau_s = v;
        }
        if let Some(v) = kv.get_f64("plant_tau_ankle_s")? {
            self.ankle_tau_s = v;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_kv_string(&self) -> String {
        kv::render(&[
            ("plant", self.mode.to_string()),
            ("plant_tau_knee_s", self.knee_tau_s.to_string()),
            ("plant_tau_ankle_s", self.ankle_tau_s.to_string()),
        ])
    }
}

/// Joint angles of the plant, in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantState {
    pub knee_deg: f64,
    pub ankle_deg: f64,
}

impl PlantModel {
    /// Advances `state` by `dt` towards the commanded angles.
    pub fn advance(&self, state: PlantState, knee_cmd: f64, ankle_cmd: f64, dt: f64) -> PlantState {
        match self.mode {
            PlantMode::PerfectTracking => PlantState {
                knee_deg: knee_cmd,
                ankle_deg: ankle_cmd,
            },
            PlantMode::FirstOrderLag => {
                let step = |q: f64, cmd: f64, tau: f64| q + (1.0 - (-dt / tau).exp()) * (cmd - q);
                PlantState {
                    knee_deg: step(state.knee_deg, knee_cmd, self.knee_tau_s),
                    ankle_deg: step(state.ankle_deg, ankle_cmd, self.ankle_tau_s),
                }
            }
        }
    }
}
