//! Piecewise-holonomic phase variable.
//!
//! The phase `s ∈ [0, 1]` is computed from the global thigh angle and the
//! binary foot-contact signal by a five-state machine:
//!
//! | state | meaning            | phase equation |
//! |-------|--------------------|----------------|
//! | S1    | stance             | stance         |
//! | S2    | pushoff onset      | stance         |
//! | S3    | pre-swing          | swing          |
//! | S4    | swing              | swing          |
//! | S5    | backward stance    | stance         |
//!
//! The stance equation is a shift and scale of the thigh angle,
//! `s = (q_h0 − q_h)/(q_h0 − q_hmin)·c`. The swing equation runs linearly from
//! the phase and thigh angle latched at the S2→S3 event, `(s_m, q_hm)`, up to
//! `s = 1` at `q_h = q_h0`, so the phase is continuous across that event.

mod contact;
mod engine;

pub use contact::{ContactDebouncer, DEFAULT_MIN_DWELL_S};
pub use engine::{
    GaitState, PhaseEngine, PhaseEngineState, SampleRejected, StepOutput, TransitionEvent,
};

use crate::error::{Error, Result};
use crate::filter::{lowpass_derivative, time_constant};
use crate::kv::{self, KeyValues};
use crate::reference::GaitLandmarks;
use crate::scalar::Scalar;

/// Swing-equation denominators smaller than this (degrees) are treated as degenerate.
pub const DEGENERATE_SPAN_DEG: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseConfig {
    pub q_h0_deg: f64,
    pub q_hmin_deg: f64,
    pub c: f64,
    pub q_po_deg: f64,
    /// S5→S1 threshold.
    pub q_h51_deg: f64,
    /// S4→S1 / S4→S5 split at touchdown.
    pub q_h41_deg: f64,
    pub vel_filter_cutoff_hz: f64,
    pub fc_on_threshold: f64,
    pub fc_off_threshold: f64,
    pub sample_rate_hz: f64,
}

impl Default for PhaseConfig {
    fn default() -> Self {
        Self {
            q_h0_deg: 20.0,
            q_hmin_deg: -11.0,
            c: 0.53,
            q_po_deg: -8.4,
            q_h51_deg: -6.0,
            q_h41_deg: 0.0,
            vel_filter_cutoff_hz: 10.0,
            fc_on_threshold: 0.6,
            fc_off_threshold: 0.4,
            sample_rate_hz: 1000.0,
        }
    }
}

impl PhaseConfig {
    pub const KEYS: [&'static str; 10] = [
        "q_h0_deg",
        "q_hmin_deg",
        "c",
        "q_po_deg",
        "q_h51_deg",
        "q_h41_deg",
        "vel_filter_cutoff_hz",
        "fc_on_threshold",
        "fc_off_threshold",
        "sample_rate_hz",
    ];

    /// Defaults with the thigh landmarks taken from a reference stride.
    pub fn from_landmarks(lm: &GaitLandmarks) -> Self {
        Self {
            q_h0_deg: lm.q_h0_deg,
            q_hmin_deg: lm.q_hmin_deg,
            c: lm.c,
            q_po_deg: lm.q_po_deg,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = self.pairs();
        if let Some((k, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::invalid("phase config", format!("{k} is not finite")));
        }
        if !(self.q_hmin_deg < self.q_po_deg
            && self.q_po_deg < self.q_h51_deg
            && self.q_h51_deg < self.q_h0_deg)
        {
            return Err(Error::invalid(
                "phase config",
                format!(
                    "need q_hmin < q_po < q_h51 < q_h0, got {} < {} < {} < {}",
                    self.q_hmin_deg, self.q_po_deg, self.q_h51_deg, self.q_h0_deg
                ),
            ));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::invalid("phase config", format!("c = {} outside (0, 1)", self.c)));
        }
        if self.fc_on_threshold <= self.fc_off_threshold {
            return Err(Error::invalid(
                "phase config",
                "fc_on_threshold must exceed fc_off_threshold",
            ));
        }
        if self.vel_filter_cutoff_hz <= 0.0 || self.sample_rate_hz <= 0.0 {
            return Err(Error::invalid(
                "phase config",
                "filter cutoff and sample rate must be positive",
            ));
        }
        Ok(())
    }

    fn pairs(&self) -> [(&'static str, f64); 10] {
        [
            ("q_h0_deg", self.q_h0_deg),
            ("q_hmin_deg", self.q_hmin_deg),
            ("c", self.c),
            ("q_po_deg", self.q_po_deg),
            ("q_h51_deg", self.q_h51_deg),
            ("q_h41_deg", self.q_h41_deg),
            ("vel_filter_cutoff_hz", self.vel_filter_cutoff_hz),
            ("fc_on_threshold", self.fc_on_threshold),
            ("fc_off_threshold", self.fc_off_threshold),
            ("sample_rate_hz", self.sample_rate_hz),
        ]
    }

    /// Applies any phase keys present in `kv` on top of `self`. Keys outside
    /// [`Self::KEYS`] are ignored here; callers decide what else is allowed.
    pub fn apply_kv(mut self, kv: &KeyValues) -> Result<Self> {
        for key in Self::KEYS {
            if let Some(v) = kv.get_f64(key)? {
                *self.field_mut(key) = v;
            }
        }
        self.validate()?;
        Ok(self)
    }

    /// Parses a config containing only phase keys; unknown keys are rejected.
    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        kv.reject_unknown(&Self::KEYS)?;
        Self::default().apply_kv(kv)
    }

    pub fn to_kv_string(&self) -> String {
        kv::render(&self.pairs())
    }

    fn field_mut(&mut self, key: &str) -> &mut f64 {
        match key {
            "q_h0_deg" => &mut self.q_h0_deg,
            "q_hmin_deg" => &mut self.q_hmin_deg,
            "c" => &mut self.c,
            "q_po_deg" => &mut self.q_po_deg,
            "q_h51_deg" => &mut self.q_h51_deg,
            "q_h41_deg" => &mut self.q_h41_deg,
            "vel_filter_cutoff_hz" => &mut self.vel_filter_cutoff_hz,
            "fc_on_threshold" => &mut self.fc_on_threshold,
            "fc_off_threshold" => &mut self.fc_off_threshold,
            "sample_rate_hz" => &mut self.sample_rate_hz,
            _ => unreachable!("unknown phase key {key}"),
        }
    }

    pub fn sample_period_s(&self) -> f64 {
        1.0 / self.sample_rate_hz
    }

    /// Contact debouncer using this config's thresholds.
    pub fn contact_debouncer(&self) -> ContactDebouncer {
        ContactDebouncer::new(
            self.fc_on_threshold,
            self.fc_off_threshold,
            DEFAULT_MIN_DWELL_S,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorSample {
    /// Seconds; strictly increasing across a stream.
    pub t: f64,
    /// Global sagittal thigh angle, flexion positive.
    pub q_h_deg: f64,
    /// Foot contact.
    pub fc: bool,
}

impl SensorSample {
    pub fn new(t: f64, q_h_deg: f64, fc: bool) -> Self {
        Self { t, q_h_deg, fc }
    }
}

pub(crate) fn stance_equation<T: Scalar>(q_h0: T, q_hmin: T, c: T, q_h: T) -> T {
    crate::scalar::clamp01((q_h0 - q_h) / (q_h0 - q_hmin) * c)
}

/// Swing equation, written as `s_m + (1 − s_m)·(q_h − q_hm)/(q_h0 − q_hm)`.
/// This is the same line as `1 + (1 − s_m)/(q_h0 − q_hm)·(q_h − q_h0)` but
/// hits both anchors exactly in floating point.
pub(crate) fn swing_equation<T: Scalar>(q_h0: T, s_m: T, q_hm: T, q_h: T) -> T {
    use crate::scalar::{abs, clamp01};
    let span = q_h0 - q_hm;
    let degenerate = abs(span) < T::from_f64(DEGENERATE_SPAN_DEG);
    let value = s_m + (T::one() - s_m) * ((q_h - q_hm) / span);
    clamp01(if degenerate { T::one() } else { value })
}

/// Stance-phase mapping (S1, S2, S5), clamped to `[0, 1]`.
pub fn stance_phase(cfg: &PhaseConfig, q_h_deg: f64) -> f64 {
    stance_equation(cfg.q_h0_deg, cfg.q_hmin_deg, cfg.c, q_h_deg)
}

/// Swing-phase mapping (S3, S4), clamped to `[0, 1]`. Returns 1 when
/// `q_hm` is within [`DEGENERATE_SPAN_DEG`] of `q_h0`.
pub fn swing_phase(cfg: &PhaseConfig, s_m: f64, q_hm_deg: f64, q_h_deg: f64) -> f64 {
    swing_equation(cfg.q_h0_deg, s_m, q_hm_deg, q_h_deg)
}

/// One update of the filtered thigh-rate estimate in deg/s.
pub fn estimate_thigh_rate(
    prev_est: f64,
    q_h_now: f64,
    q_h_prev: f64,
    dt: f64,
    cfg: &PhaseConfig,
) -> Result<f64> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::invalid("sample", format!("dt = {dt} must be positive")));
    }
    Ok(lowpass_derivative(
        prev_est,
        q_h_now,
        q_h_prev,
        dt,
        time_constant(cfg.vel_filter_cutoff_hz),
    ))
}
