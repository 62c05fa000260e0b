//! Foot-contact conditioning: Schmitt-trigger hysteresis plus a minimum dwell.

/// Minimum time a new contact level must persist before it is accepted.
pub const DEFAULT_MIN_DWELL_S: f64 = 0.010;

/// Causal contact debouncer for a load signal.
///
/// Load at or above `on_threshold` reads as contact, at or below
/// `off_threshold` as no contact, anything in between keeps the previous
/// reading. The reported contact only changes once the reading has held the
/// new level for `min_dwell_s`. The first sample after construction or
/// [`reset`](Self::reset) is adopted immediately.
#[derive(Debug, Clone)]
pub struct ContactDebouncer {
    on_threshold: f64,
    off_threshold: f64,
    min_dwell_s: f64,
    reading: Option<bool>,
    output: bool,
    pending_since: Option<f64>,
}

impl ContactDebouncer {
    pub fn new(on_threshold: f64, off_threshold: f64, min_dwell_s: f64) -> Self {
        assert!(
            on_threshold > off_threshold,
            "hysteresis needs on_threshold > off_threshold"
        );
        Self {
            on_threshold,
            off_threshold,
            min_dwell_s,
            reading: None,
            output: false,
            pending_since: None,
        }
    }

    pub fn update(&mut self, t: f64, load: f64) -> bool {
        let reading = if load >= self.on_threshold {
            true
        } else if load <= self.off_threshold {
            false
        } else {
            self.reading.unwrap_or(false)
        };
        if self.reading.is_none() {
            self.reading = Some(reading);
            self.output = reading;
            return reading;
        }
        self.reading = Some(reading);

        if reading == self.output {
            self.pending_since = None;
        } else {
            let since = *self.pending_since.get_or_insert(t);
            if t - since >= self.min_dwell_s - 1e-12 {
                self.output = reading;
                self.pending_since = None;
            }
        }
        self.output
    }

    /// Boolean input mapped to full load / no load.
    pub fn update_bool(&mut self, t: f64, contact: bool) -> bool {
        let load = if contact { self.on_threshold } else { self.off_threshold };
        self.update(t, load)
    }

    pub fn contact(&self) -> bool {
        self.output
    }

    pub fn reset(&mut self) {
        self.reading = None;
        self.output = false;
        self.pending_since = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hysteresis_band_holds_previous_reading() {
        let mut d = ContactDebouncer::new(0.6, 0.4, 0.0);
        assert!(d.update(0.0, 0.9));
        assert!(d.update(0.001, 0.5));
        assert!(!d.update(0.002, 0.3));
        assert!(!d.update(0.003, 0.5));
    }

    #[test]
    fn short_glitches_are_suppressed() {
        let mut d = ContactDebouncer::new(0.6, 0.4, 0.010);
        let mut t = 0.0;
        assert!(d.update_bool(t, true));
        for _ in 0..5 {
            t += 0.001;
            assert!(d.update_bool(t, false));
        }
        t += 0.001;
        assert!(d.update_bool(t, true));
        // a sustained release is accepted after the dwell
        let mut released_at = None;
        for k in 0..20 {
            t += 0.001;
            if !d.update_bool(t, false) && released_at.is_none() {
                released_at = Some(k);
            }
        }
        assert_eq!(released_at, Some(10));
    }

    #[test]
    fn first_sample_is_adopted() {
        let mut d = ContactDebouncer::new(0.6, 0.4, 0.010);
        assert!(!d.update_bool(0.0, false));
        d.reset();
        assert!(d.update_bool(0.0, true));
    }
}
