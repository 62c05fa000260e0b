//! Reference gait trajectories and the landmark constants derived from them.
//!
//! A [`ReferenceGait`] is one stride of thigh, knee and ankle angles sampled
//! uniformly in normalized time `t_norm ∈ [0, 1)`, starting at touchdown.
//! Angles are in degrees. Thigh is the global sagittal thigh angle (flexion
//! positive), knee is flexion positive, ankle is dorsiflexion positive.

use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fourier::{check_sample_count, fit_fourier, FourierConstraint};
use crate::kv::{self, KeyValues};

pub const CSV_HEADER: [&str; 4] = ["t_norm", "thigh_deg", "knee_deg", "ankle_deg"];

const SPACING_TOL: f64 = 1e-9;

/// Thigh overshoot above the touchdown angle at the end of swing, before retraction.
pub const SWING_RETRACTION_DEG: f64 = 2.0;

/// Length of the low-velocity section at the bottom of the synthetic thigh
/// trajectory, as a fraction of the stride.
pub const PUSHOFF_DWELL_FRACTION: f64 = 0.08;

/// Thigh rise across the pushoff dwell, degrees.
pub const PUSHOFF_DWELL_RISE_DEG: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefSample {
    pub t_norm: f64,
    pub thigh_deg: f64,
    pub knee_deg: f64,
    pub ankle_deg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceGait {
    label: String,
    samples: Vec<RefSample>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaitLandmarks {
    /// Thigh angle at touchdown.
    pub q_h0_deg: f64,
    /// Minimum thigh angle over the stride.
    pub q_hmin_deg: f64,
    /// Phase reached at the thigh minimum (stance fraction of the phase variable).
    pub c: f64,
    /// Thigh angle at pushoff onset (maximum ankle dorsiflexion).
    pub q_po_deg: f64,
    pub t_min_thigh: f64,
    pub t_max_thigh_swing: f64,
}

impl GaitLandmarks {
    pub const KEYS: [&'static str; 6] = [
        "q_h0_deg",
        "q_hmin_deg",
        "c",
        "q_po_deg",
        "t_min_thigh",
        "t_max_thigh_swing",
    ];

    /// Reference values for normal-speed level walking.
    pub fn normal_walking() -> Self {
        Self {
            q_h0_deg: 20.0,
            q_hmin_deg: -11.0,
            c: 0.53,
            q_po_deg: -8.4,
            t_min_thigh: 0.53,
            t_max_thigh_swing: 0.87,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.q_h0_deg,
            self.q_hmin_deg,
            self.c,
            self.q_po_deg,
            self.t_min_thigh,
            self.t_max_thigh_swing,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("landmarks", "non-finite value"));
        }
        if !(self.q_hmin_deg < self.q_po_deg && self.q_po_deg < self.q_h0_deg) {
            return Err(Error::invalid(
                "landmarks",
                format!(
                    "need q_hmin < q_po < q_h0, got {} / {} / {}",
                    self.q_hmin_deg, self.q_po_deg, self.q_h0_deg
                ),
            ));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::invalid("landmarks", format!("c = {} outside (0, 1)", self.c)));
        }
        if !(0.0 < self.t_min_thigh
            && self.t_min_thigh < self.t_max_thigh_swing
            && self.t_max_thigh_swing <= 1.0)
        {
            return Err(Error::invalid(
                "landmarks",
                format!(
                    "need 0 < t_min_thigh < t_max_thigh_swing <= 1, got {} / {}",
                    self.t_min_thigh, self.t_max_thigh_swing
                ),
            ));
        }
        Ok(())
    }

    pub fn to_kv_string(&self) -> String {
        kv::render(&[
            ("q_h0_deg", self.q_h0_deg),
            ("q_hmin_deg", self.q_hmin_deg),
            ("c", self.c),
            ("q_po_deg", self.q_po_deg),
            ("t_min_thigh", self.t_min_thigh),
            ("t_max_thigh_swing", self.t_max_thigh_swing),
        ])
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        kv.reject_unknown(&Self::KEYS)?;
        let req = |k: &str| -> Result<f64> {
            kv.get_f64(k)?
                .ok_or_else(|| Error::parse(format!("key `{k}`"), "missing"))
        };
        let lm = Self {
            q_h0_deg: req("q_h0_deg")?,
            q_hmin_deg: req("q_hmin_deg")?,
            c: req("c")?,
            q_po_deg: req("q_po_deg")?,
            t_min_thigh: req("t_min_thigh")?,
            t_max_thigh_swing: req("t_max_thigh_swing")?,
        };
        lm.validate()?;
        Ok(lm)
    }
}

impl ReferenceGait {
    pub fn new(label: impl Into<String>, samples: Vec<RefSample>) -> Result<Self> {
        let n = samples.len();
        check_sample_count(n, "reference gait")?;
        if samples[0].t_norm != 0.0 {
            return Err(Error::invalid(
                "reference gait",
                format!("first sample must be at t_norm = 0, got {}", samples[0].t_norm),
            ));
        }
        for (i, s) in samples.iter().enumerate() {
            if [s.t_norm, s.thigh_deg, s.knee_deg, s.ankle_deg]
                .iter()
                .any(|v| !v.is_finite())
            {
                return Err(Error::invalid("reference gait", format!("sample {i} is not finite")));
            }
        }
        let spacing = samples[1].t_norm - samples[0].t_norm;
        for (i, w) in samples.windows(2).enumerate() {
            let dt = w[1].t_norm - w[0].t_norm;
            if dt <= 0.0 {
                return Err(Error::invalid(
                    "reference gait",
                    format!("t_norm not strictly increasing at row {}", i + 1),
                ));
            }
            if (dt - spacing).abs() > SPACING_TOL {
                return Err(Error::invalid(
                    "reference gait",
                    format!("non-uniform spacing at row {}", i + 1),
                ));
            }
        }
        // Nodes must sit at j/N so the Fourier fit spans exactly one stride.
        if (spacing * n as f64 - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(
                "reference gait",
                format!("spacing {spacing} does not cover one stride with {n} samples"),
            ));
        }
        Ok(Self {
            label: label.into(),
            samples,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[RefSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn thigh(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.thigh_deg).collect()
    }

    pub fn knee(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.knee_deg).collect()
    }

    pub fn ankle(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.ankle_deg).collect()
    }

    /// Thigh angle at normalized time `t` (wrapped into `[0, 1)`), by periodic
    /// linear interpolation between samples.
    pub fn thigh_at(&self, t: f64) -> f64 {
        self.interp(t, |s| s.thigh_deg)
    }

    pub fn knee_at(&self, t: f64) -> f64 {
        self.interp(t, |s| s.knee_deg)
    }

    fn interp(&self, t: f64, f: impl Fn(&RefSample) -> f64) -> f64 {
        let n = self.samples.len();
        let x = t.rem_euclid(1.0) * n as f64;
        let i = (x.floor() as usize).min(n - 1);
        let frac = x - i as f64;
        let a = f(&self.samples[i]);
        let b = f(&self.samples[(i + 1) % n]);
        a + (b - a) * frac
    }

    /// Resamples onto `n` uniform nodes by periodic linear interpolation.
    pub fn resample(&self, n: usize) -> Result<Self> {
        check_sample_count(n, "reference gait")?;
        let samples = (0..n)
            .map(|j| {
                let t = j as f64 / n as f64;
                RefSample {
                    t_norm: t,
                    thigh_deg: self.interp(t, |s| s.thigh_deg),
                    knee_deg: self.interp(t, |s| s.knee_deg),
                    ankle_deg: self.interp(t, |s| s.ankle_deg),
                }
            })
            .collect();
        Self::new(self.label.clone(), samples)
    }

    /// Fits knee and ankle virtual constraints.
    pub fn fit_constraints(&self) -> Result<(FourierConstraint, FourierConstraint)> {
        Ok((fit_fourier(&self.knee())?, fit_fourier(&self.ankle())?))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = CSV_HEADER.join(",");
        out.push('\n');
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.t_norm, s.thigh_deg, s.knee_deg, s.ankle_deg
            ));
        }
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
    }
}

/// Loads and validates a reference CSV (`t_norm,thigh_deg,knee_deg,ankle_deg`).
pub fn load_reference(path: &Path) -> Result<ReferenceGait> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
            _ => Error::Csv(e),
        })?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::parse(
            path.display().to_string(),
            format!("expected header `{}`", CSV_HEADER.join(",")),
        ));
    }
    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let loc = format!("{} row {}", path.display(), i + 2);
        if record.len() != 4 {
            return Err(Error::parse(&loc, format!("expected 4 fields, got {}", record.len())));
        }
        let mut v = [0.0; 4];
        for (slot, field) in v.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|_| Error::parse(&loc, format!("`{field}` is not a number")))?;
        }
        samples.push(RefSample {
            t_norm: v[0],
            thigh_deg: v[1],
            knee_deg: v[2],
            ankle_deg: v[3],
        });
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    ReferenceGait::new(label, samples)
}

/// Extracts the phase-engine landmark constants from a reference stride.
pub fn extract_landmarks(reference: &ReferenceGait) -> Result<GaitLandmarks> {
    let s = reference.samples();
    let (i_min, _) = argmin(s.iter().map(|x| x.thigh_deg));
    if i_min == 0 {
        return Err(Error::invalid(
            "reference gait",
            "non-gait-like reference: thigh minimum at touchdown (no descending segment)",
        ));
    }
    let (i_ankle_max, _) = argmax(s.iter().map(|x| x.ankle_deg));
    let swing = &s[i_min + 1..];
    if swing.is_empty() {
        return Err(Error::invalid(
            "reference gait",
            "non-gait-like reference: thigh minimum at the last sample",
        ));
    }
    let (i_swing_max, _) = argmax(swing.iter().map(|x| x.thigh_deg));
    let lm = GaitLandmarks {
        q_h0_deg: s[0].thigh_deg,
        q_hmin_deg: s[i_min].thigh_deg,
        c: s[i_min].t_norm,
        q_po_deg: s[i_ankle_max].thigh_deg,
        t_min_thigh: s[i_min].t_norm,
        t_max_thigh_swing: swing[i_swing_max].t_norm,
    };
    lm.validate().map_err(|e| match e {
        Error::Invalid { message, .. } => Error::invalid(
            "reference gait",
            format!("non-gait-like reference: {message}"),
        ),
        other => other,
    })?;
    Ok(lm)
}

/// First index of the minimum.
fn argmin(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best })
}

/// First index of the maximum.
fn argmax(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
}

/// Quintic smoothstep: zero first and second derivative at both ends.
fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * u * (10.0 + u * (-15.0 + 6.0 * u))
}

/// Fraction of an eased ramp spent accelerating (and again decelerating).
const RAMP_EASE: f64 = 0.15;

/// Constant-rate ramp from 0 to 1 with constant-acceleration blends of width
/// [`RAMP_EASE`] at both ends. Zero slope at 0 and 1.
fn eased_ramp(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    let v = 1.0 / (1.0 - RAMP_EASE);
    if u < RAMP_EASE {
        0.5 * v * u * u / RAMP_EASE
    } else if u > 1.0 - RAMP_EASE {
        1.0 - 0.5 * v * (1.0 - u) * (1.0 - u) / RAMP_EASE
    } else {
        v * (u - 0.5 * RAMP_EASE)
    }
}

/// Inverse of a non-decreasing `f: [0, 1] → [0, 1]` by bisection.
fn invert(f: fn(f64) -> f64, y: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smooth periodic curve through knots `(t, value)` with zero slope at every knot.
/// Knots must start at `t = 0`, end at `t = 1` and be strictly increasing.
fn knot_curve(knots: &[(f64, f64)], t: f64) -> f64 {
    let t = t.rem_euclid(1.0);
    let seg = knots
        .windows(2)
        .find(|w| t >= w[0].0 && t < w[1].0)
        .unwrap_or(&knots[knots.len() - 2..]);
    let (t0, v0) = seg[0];
    let (t1, v1) = seg[1];
    let u = (t - t0) / (t1 - t0);
    v0 + (v1 - v0) * 0.5 * (1.0 - (std::f64::consts::PI * u).cos())
}

/// Generates a smooth, periodic synthetic stride that hits the given landmarks.
///
/// The thigh descends from `q_h0` to `q_hmin`, dwells for a short pushoff
/// section, rises past `q_h0` to a swing maximum at `t_max_thigh_swing`, then
/// retracts to `q_h0`. The minimum, the swing maximum and the pushoff-onset
/// sample are placed on the sample grid so that [`extract_landmarks`] recovers
/// the requested angles exactly and the times to within one sample.
pub fn synthesize_reference(landmarks: &GaitLandmarks, n: usize) -> Result<ReferenceGait> {
    landmarks.validate()?;
    check_sample_count(n, "reference gait")?;
    let nf = n as f64;
    let lm = landmarks;

    let i_min = ((lm.t_min_thigh * nf).round() as usize).clamp(2, n - 2);
    let i_max = ((lm.t_max_thigh_swing * nf).round() as usize).clamp(i_min + 1, n);
    let t_min = i_min as f64 / nf;
    let t_max = i_max as f64 / nf;
    let dwell = PUSHOFF_DWELL_FRACTION.min(0.4 * (t_max - t_min));
    let t_rise = t_min + dwell;

    let range = lm.q_h0_deg - lm.q_hmin_deg;
    // No retraction when the swing maximum is the stride end.
    let retraction = if i_max == n { 0.0 } else { SWING_RETRACTION_DEG };
    let q_top = lm.q_h0_deg + retraction;
    let q_dwell_end = lm.q_hmin_deg + PUSHOFF_DWELL_RISE_DEG;

    // Descent is q_h0 - range·eased_ramp(x^p), x = t/t_min. The warp exponent p
    // puts the pushoff-onset angle exactly on a sample.
    let po_frac = (lm.q_h0_deg - lm.q_po_deg) / range;
    let x_po = invert(eased_ramp, po_frac);
    let i_po = ((x_po * t_min * nf).round() as usize).clamp(1, i_min - 1);
    let x_grid = i_po as f64 / i_min as f64;
    let warp = x_po.ln() / x_grid.ln();

    let thigh = |t: f64| -> f64 {
        if t <= t_min {
            lm.q_h0_deg - range * eased_ramp((t / t_min).powf(warp))
        } else if t <= t_rise {
            lm.q_hmin_deg + PUSHOFF_DWELL_RISE_DEG * smoothstep((t - t_min) / dwell)
        } else if t <= t_max {
            q_dwell_end + (q_top - q_dwell_end) * eased_ramp((t - t_rise) / (t_max - t_rise))
        } else {
            q_top - retraction * smoothstep((t - t_max) / (1.0 - t_max))
        }
    };

    let t_po = i_po as f64 / nf;
    let span = t_max - t_min;
    let knee_knots = [
        (0.0, 4.0),
        (0.28 * t_min, 18.0),
        (0.75 * t_min, 5.0),
        (t_min + 0.55 * span, 62.0),
        (1.0, 4.0),
    ];
    let ankle_knots = [
        (0.0, 0.0),
        (0.2 * t_po, -5.0),
        (t_po, 10.0),
        (t_min + 0.3 * span, -18.0),
        (t_min + 0.6 * span, 0.0),
        (1.0, 0.0),
    ];

    let samples = (0..n)
        .map(|j| {
            let t = j as f64 / nf;
            let thigh_deg = match j {
                0 => lm.q_h0_deg,
                j if j == i_min => lm.q_hmin_deg,
                j if j == i_po => lm.q_po_deg,
                _ => thigh(t),
            };
            RefSample {
                t_norm: t,
                thigh_deg,
                knee_deg: knot_curve(&knee_knots, t),
                ankle_deg: knot_curve(&ankle_knots, t),
            }
        })
        .collect();
    ReferenceGait::new("synthetic", samples)
}
