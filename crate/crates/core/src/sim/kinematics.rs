//! Planar thigh → shank → foot chain.
//!
//! Angles in degrees: thigh flexion positive (thigh forward), knee flexion
//! positive (shank rotates back relative to the thigh), ankle dorsiflexion
//! positive. At all-zero angles the three segments hang collinear below the
//! hip. `x` is forward of the hip, `z` is height above the ground, with the
//! hip at the height of the straight leg.

use crate::error::{Error, Result};
use crate::kv::{self, KeyValues};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkLengths {
    pub thigh_m: f64,
    pub shank_m: f64,
    pub foot_m: f64,
}

impl Default for LinkLengths {
    fn default() -> Self {
        Self {
            thigh_m: 0.42,
            shank_m: 0.43,
            foot_m: 0.10,
        }
    }
}

impl LinkLengths {
    pub const KEYS: [&'static str; 3] = ["thigh_m", "shank_m", "foot_m"];

    pub fn validate(&self) -> Result<()> {
        for v in [self.thigh_m, self.shank_m, self.foot_m] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid("link lengths", "lengths must be positive"));
            }
        }
        Ok(())
    }

    pub fn total(&self) -> f64 {
        self.thigh_m + self.shank_m + self.foot_m
    }

    pub fn apply_kv(mut self, kv: &KeyValues) -> Result<Self> {
        for (key, slot) in [
            ("thigh_m", &mut self.thigh_m),
            ("shank_m", &mut self.shank_m),
            ("foot_m", &mut self.foot_m),
        ] {
            if let Some(v) = kv.get_f64(key)? {
                *slot = v;
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_kv_string(&self) -> String {
        kv::render(&[
            ("thigh_m", self.thigh_m),
            ("shank_m", self.shank_m),
            ("foot_m", self.foot_m),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainPoints {
    pub knee: (f64, f64),
    pub ankle: (f64, f64),
    pub toe: (f64, f64),
}

pub fn chain_points(links: &LinkLengths, thigh_deg: f64, knee_deg: f64, ankle_deg: f64) -> ChainPoints {
    let hip = (0.0, links.total());
    let seg = |from: (f64, f64), angle_deg: f64, len: f64| {
        let a = angle_deg.to_radians();
        (from.0 + len * a.sin(), from.1 - len * a.cos())
    };
    let shank_deg = thigh_deg - knee_deg;
    let knee = seg(hip, thigh_deg, links.thigh_m);
    let ankle = seg(knee, shank_deg, links.shank_m);
    let toe = seg(ankle, shank_deg + ankle_deg, links.foot_m);
    ChainPoints { knee, ankle, toe }
}

/// Toe `(x, z)` in metres.
pub fn toe_position(links: &LinkLengths, thigh_deg: f64, knee_deg: f64, ankle_deg: f64) -> (f64, f64) {
    chain_points(links, thigh_deg, knee_deg, ankle_deg).toe
}
