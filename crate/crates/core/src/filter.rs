//! First-order low-pass filtered backward difference.
//!
//! `raw = (x_k − x_{k−1}) / dt`, `y_k = y_{k−1} + α·(raw − y_{k−1})` with
//! `α = dt / (dt + τ)` and `τ = 1 / (2π·f_c)`.

use crate::scalar::Scalar;

/// One update of the filtered derivative.
#[inline]
pub fn lowpass_derivative<T: Scalar>(prev_est: T, now: T, prev: T, dt: T, tau: T) -> T {
    let raw = (now - prev) / dt;
    let alpha = dt / (dt + tau);
    prev_est + alpha * (raw - prev_est)
}

pub fn time_constant(cutoff_hz: f64) -> f64 {
    1.0 / (2.0 * std::f64::consts::PI * cutoff_hz)
}

/// Stateful filtered differentiator for an irregularly or regularly sampled signal.
#[derive(Debug, Clone)]
pub struct DerivativeFilter {
    tau: f64,
    last: Option<(f64, f64)>,
    estimate: f64,
}

impl DerivativeFilter {
    pub fn new(cutoff_hz: f64) -> Self {
        Self {
            tau: time_constant(cutoff_hz),
            last: None,
            estimate: 0.0,
        }
    }

    /// Feeds `(t, value)` and returns the rate estimate. The first sample
    /// yields 0; samples with non-increasing `t` leave the estimate unchanged.
    pub fn update(&mut self, t: f64, value: f64) -> f64 {
        if let Some((t_prev, v_prev)) = self.last {
            let dt = t - t_prev;
            if dt <= 0.0 {
                return self.estimate;
            }
            self.estimate = lowpass_derivative(self.estimate, value, v_prev, dt, self.tau);
        }
        self.last = Some((t, value));
        self.estimate
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn reset(&mut self) {
        self.last = None;
        self.estimate = 0.0;
    }
}
