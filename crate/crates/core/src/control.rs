//! Virtual-constraint joint controller: phase → desired knee/ankle angles → PD torque.
//!
//! Shipped gains are placeholders sized for the kinematic simulator, not
//! clinical values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::filter::DerivativeFilter;
use crate::fourier::FourierConstraint;
use crate::kv::{self, KeyValues};

/// Angle unit the proportional and derivative gains are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainUnits {
    #[default]
    Deg,
    Rad,
}

impl GainUnits {
    /// Converts an angle (or rate) in degrees into the gain unit.
    pub fn from_deg(self, v: f64) -> f64 {
        match self {
            Self::Deg => v,
            Self::Rad => v.to_radians(),
        }
    }
}

impl fmt::Display for GainUnits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Deg => "deg",
            Self::Rad => "rad",
        })
    }
}

impl FromStr for GainUnits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deg" => Ok(Self::Deg),
            "rad" => Ok(Self::Rad),
            other => Err(Error::parse("key `units`", format!("`{other}` is not deg or rad"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdGains {
    pub kp: f64,
    pub kd: f64,
    /// Symmetric torque limit in N·m.
    pub tau_max: f64,
}

impl PdGains {
    pub fn new(kp: f64, kd: f64, tau_max: f64) -> Result<Self> {
        let g = Self { kp, kd, tau_max };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("kp", self.kp), ("kd", self.kd), ("tau_max", self.tau_max)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid("gains", format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }
}

/// `clamp(kp·e + kd·ė, ±tau_max)`, with `e` and `ė` already in the gain unit.
pub fn pd_torque(gains: &PdGains, e: f64, edot: f64) -> f64 {
    (gains.kp * e + gains.kd * edot).clamp(-gains.tau_max, gains.tau_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerGains {
    pub knee: PdGains,
    pub ankle: PdGains,
    pub units: GainUnits,
}

impl Default for ControllerGains {
    fn default() -> Self {
        Self {
            knee: PdGains {
                kp: 3.0,
                kd: 0.05,
                tau_max: 100.0,
            },
            ankle: PdGains {
                kp: 4.0,
                kd: 0.05,
                tau_max: 100.0,
            },
            units: GainUnits::Deg,
        }
    }
}

impl ControllerGains {
    pub const KEYS: [&'static str; 6] = [
        "knee_kp",
        "knee_kd",
        "ankle_kp",
        "ankle_kd",
        "tau_max_nm",
        "units",
    ];

    pub fn validate(&self) -> Result<()> {
        self.knee.validate()?;
        self.ankle.validate()?;
        if self.knee.tau_max != self.ankle.tau_max {
            return Err(Error::invalid("gains", "knee and ankle share one tau_max_nm"));
        }
        Ok(())
    }

    /// Applies any gain keys present in `kv`; other keys are ignored.
    pub fn apply_kv(mut self, kv: &KeyValues) -> Result<Self> {
        let set = |slot: &mut f64, key: &str| -> Result<()> {
            if let Some(v) = kv.get_f64(key)? {
                *slot = v;
            }
            Ok(())
        };
        set(&mut self.knee.kp, "knee_kp")?;
        set(&mut self.knee.kd, "knee_kd")?;
        set(&mut self.ankle.kp, "ankle_kp")?;
        set(&mut self.ankle.kd, "ankle_kd")?;
        if let Some(t) = kv.get_f64("tau_max_nm")? {
            self.knee.tau_max = t;
            self.ankle.tau_max = t;
        }
        if let Some(u) = kv.get("units") {
            self.units = u.parse()?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_kv_string(&self) -> String {
        kv::render(&[
            ("knee_kp", self.knee.kp.to_string()),
            ("knee_kd", self.knee.kd.to_string()),
            ("ankle_kp", self.ankle.kp.to_string()),
            ("ankle_kd", self.ankle.kd.to_string()),
            ("tau_max_nm", self.knee.tau_max.to_string()),
            ("units", self.units.to_string()),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCommand {
    pub q_d_deg: f64,
    /// `q_d − q`.
    pub e_deg: f64,
    /// Filtered derivative of `e`.
    pub edot_degps: f64,
    pub tau_nm: f64,
}

/// Desired `(knee, ankle)` angles at phase `s`.
pub fn desired_angles(
    knee: &FourierConstraint,
    ankle: &FourierConstraint,
    s: f64,
) -> Result<(f64, f64)> {
    Ok((knee.eval(s)?, ankle.eval(s)?))
}

/// Per-joint tracking loop. The only state is one error-derivative filter per joint.
#[derive(Debug, Clone)]
pub struct JointController {
    knee_fc: FourierConstraint,
    ankle_fc: FourierConstraint,
    gains: ControllerGains,
    knee_edot: DerivativeFilter,
    ankle_edot: DerivativeFilter,
}

impl JointController {
    /// `edot_cutoff_hz` sets the error-derivative filter; the phase engine's
    /// thigh-rate cutoff is the usual choice.
    pub fn new(
        knee_fc: FourierConstraint,
        ankle_fc: FourierConstraint,
        gains: ControllerGains,
        edot_cutoff_hz: f64,
    ) -> Result<Self> {
        gains.validate()?;
        if !(edot_cutoff_hz.is_finite() && edot_cutoff_hz > 0.0) {
            return Err(Error::invalid("controller", "derivative cutoff must be positive"));
        }
        Ok(Self {
            knee_fc,
            ankle_fc,
            gains,
            knee_edot: DerivativeFilter::new(edot_cutoff_hz),
            ankle_edot: DerivativeFilter::new(edot_cutoff_hz),
        })
    }

    pub fn gains(&self) -> &ControllerGains {
        &self.gains
    }

    pub fn constraints(&self) -> (&FourierConstraint, &FourierConstraint) {
        (&self.knee_fc, &self.ankle_fc)
    }

    /// Desired angles only, without touching the filters.
    pub fn desired(&self, s: f64) -> Result<(f64, f64)> {
        desired_angles(&self.knee_fc, &self.ankle_fc, s)
    }

    /// One control sample at time `t` from phase `s` and measured joint angles.
    pub fn step(
        &mut self,
        t: f64,
        s: f64,
        q_knee_deg: f64,
        q_ankle_deg: f64,
    ) -> Result<(JointCommand, JointCommand)> {
        let (qd_knee, qd_ankle) = self.desired(s)?;
        let units = self.gains.units;
        let joint = |qd: f64, q: f64, filter: &mut DerivativeFilter, g: &PdGains| {
            let e = qd - q;
            let edot = filter.update(t, e);
            JointCommand {
                q_d_deg: qd,
                e_deg: e,
                edot_degps: edot,
                tau_nm: pd_torque(g, units.from_deg(e), units.from_deg(edot)),
            }
        };
        let knee = joint(qd_knee, q_knee_deg, &mut self.knee_edot, &self.gains.knee);
        let ankle = joint(qd_ankle, q_ankle_deg, &mut self.ankle_edot, &self.gains.ankle);
        Ok((knee, ankle))
    }

    pub fn reset(&mut self) {
        self.knee_edot.reset();
        self.ankle_edot.reset();
    }
}
