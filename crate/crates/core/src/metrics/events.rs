use super::{symmetry_index, Summary};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaultPeak {
    /// Sample index of the peak (nearest sample for refined peaks).
    pub index: usize,
    pub value_deg: f64,
    /// No zero-velocity crossing in the interval; `value_deg` is the interval maximum.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vaulting {
    pub peaks: Vec<VaultPeak>,
    pub summary: Summary,
}

impl Vaulting {
    pub fn n_flagged(&self) -> usize {
        self.peaks.iter().filter(|p| p.flagged).count()
    }
}

/// Contiguous `true` runs as `[start, end)`.
fn runs(mask: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &m) in mask.iter().enumerate() {
        match (m, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, mask.len()));
    }
    out
}

fn central_difference(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| match (i, n) {
            (_, 1) => 0.0,
            (0, _) => x[1] - x[0],
            (i, n) if i == n - 1 => x[i] - x[i - 1],
            (i, _) => 0.5 * (x[i + 1] - x[i - 1]),
        })
        .collect()
}

/// Peak value near sample `k` from a parabola through `k − 1, k, k + 1`,
/// or `x[k]` when a neighbour is outside `[lo, hi)` or the points are not concave.
fn refine_peak(x: &[f64], k: usize, lo: usize, hi: usize) -> f64 {
    if k == lo || k + 1 >= hi {
        return x[k];
    }
    let (a, b, c) = (x[k - 1], x[k], x[k + 1]);
    let curvature = a - 2.0 * b + c;
    if curvature >= 0.0 {
        return b;
    }
    let delta = 0.5 * (a - c) / curvature;
    b - 0.25 * (a - c) * delta
}

/// Peak global foot angle in each single-support interval, taken where the
/// angular rate crosses from positive to non-positive. `rate` defaults to a
/// central difference of `foot_angle`. Intervals without a crossing use their
/// maximum sample and are flagged.
pub fn vaulting_angle(foot_angle: &[f64], rate: Option<&[f64]>, support: &[bool]) -> Result<Vaulting> {
    if foot_angle.len() != support.len() {
        return Err(Error::invalid("vaulting input", "foot angle and support mask lengths differ"));
    }
    let derived;
    let rate = match rate {
        Some(r) if r.len() != foot_angle.len() => {
            return Err(Error::invalid("vaulting input", "rate length differs from foot angle"));
        }
        Some(r) => r,
        None => {
            derived = central_difference(foot_angle);
            &derived
        }
    };
    let intervals = runs(support);
    if intervals.is_empty() {
        return Err(Error::invalid("vaulting input", "no single-support interval"));
    }

    let peaks: Vec<VaultPeak> = intervals
        .into_iter()
        .map(|(lo, hi)| {
            let crossing = (lo + 1..hi)
                .filter(|&i| rate[i - 1] > 0.0 && rate[i] <= 0.0)
                .map(|i| {
                    let k = if foot_angle[i - 1] > foot_angle[i] { i - 1 } else { i };
                    (k, refine_peak(foot_angle, k, lo, hi))
                })
                .max_by(|a, b| a.1.total_cmp(&b.1));
            match crossing {
                Some((index, value_deg)) => VaultPeak {
                    index,
                    value_deg,
                    flagged: false,
                },
                None => {
                    let index = (lo..hi)
                        .max_by(|&a, &b| foot_angle[a].total_cmp(&foot_angle[b]))
                        .expect("non-empty run");
                    VaultPeak {
                        index,
                        value_deg: foot_angle[index],
                        flagged: true,
                    }
                }
            }
        })
        .collect();
    let values: Vec<f64> = peaks.iter().map(|p| p.value_deg).collect();
    Ok(Vaulting {
        summary: Summary::from_values(&values)?,
        peaks,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circumduction {
    /// Lateral range per stride, same unit as the input.
    pub per_stride: Vec<f64>,
    pub summary: Summary,
}

/// Medio-lateral range (max − min) of the ankle marker in each stride.
pub fn circumduction(strides: &[&[f64]]) -> Result<Circumduction> {
    if strides.is_empty() {
        return Err(Error::invalid("circumduction input", "no strides"));
    }
    let mut per_stride = Vec::with_capacity(strides.len());
    for (i, s) in strides.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::invalid(
                "circumduction input",
                format!("stride {i} has no lateral samples"),
            ));
        }
        let (lo, hi) = s
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        per_stride.push(hi - lo);
    }
    Ok(Circumduction {
        summary: Summary::from_values(&per_stride)?,
        per_stride,
    })
}

/// Prosthetic and sound circumduction plus the symmetry index of their means.
pub fn circumduction_with_symmetry(
    prosth: &[&[f64]],
    sound: &[&[f64]],
) -> Result<(Circumduction, Circumduction, f64)> {
    let p = circumduction(prosth)?;
    let s = circumduction(sound)?;
    let si = symmetry_index(p.summary.mean, s.summary.mean)?;
    Ok((p, s, si))
}

/// Midpoint index of every stance run that starts and ends inside the data.
pub fn mid_stance_indices(fc: &[bool]) -> Vec<usize> {
    runs(fc)
        .into_iter()
        .filter(|&(lo, hi)| lo > 0 && hi < fc.len())
        .map(|(lo, hi)| lo + (hi - lo - 1) / 2)
        .collect()
}

/// A mid-stance event: time and marker position along the walking direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepEvent {
    pub t: f64,
    pub x_mm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepSymmetry {
    pub prosth_lengths: Vec<f64>,
    pub sound_lengths: Vec<f64>,
    pub prosth: Summary,
    pub sound: Summary,
    pub si: f64,
}

/// Step lengths from alternating mid-stance events. Each event's step length
/// is its distance along the walking direction from the preceding event of
/// the other side, so the measure works in either walking direction.
pub fn backward_step_symmetry(prosth: &[StepEvent], sound: &[StepEvent]) -> Result<StepSymmetry> {
    if prosth.is_empty() || sound.is_empty() {
        return Err(Error::invalid("step events", "need at least one event per side"));
    }
    if prosth.len().abs_diff(sound.len()) > 1 {
        return Err(Error::invalid(
            "step events",
            format!(
                "unmatched event counts: {} prosthetic vs {} sound",
                prosth.len(),
                sound.len()
            ),
        ));
    }
    let mut merged: Vec<(StepEvent, bool)> = prosth
        .iter()
        .map(|&e| (e, true))
        .chain(sound.iter().map(|&e| (e, false)))
        .collect();
    merged.sort_by(|a, b| a.0.t.total_cmp(&b.0.t));

    let (mut prosth_lengths, mut sound_lengths) = (Vec::new(), Vec::new());
    for w in merged.windows(2) {
        let ((prev, prev_is_p), (cur, cur_is_p)) = (w[0], w[1]);
        if prev_is_p == cur_is_p {
            return Err(Error::invalid(
                "step events",
                format!("events at t = {} and t = {} are on the same side", prev.t, cur.t),
            ));
        }
        let length = (cur.x_mm - prev.x_mm).abs();
        if cur_is_p {
            prosth_lengths.push(length);
        } else {
            sound_lengths.push(length);
        }
    }
    if prosth_lengths.is_empty() || sound_lengths.is_empty() {
        return Err(Error::invalid("step events", "need at least one step per side"));
    }
    let p = Summary::from_values(&prosth_lengths)?;
    let s = Summary::from_values(&sound_lengths)?;
    Ok(StepSymmetry {
        si: symmetry_index(p.mean, s.mean)?,
        prosth: p,
        sound: s,
        prosth_lengths,
        sound_lengths,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeClearance {
    pub max_height: f64,
    pub index: usize,
    /// `max_height − obstacle`; negative means the toe hit the obstacle.
    pub clearance: f64,
}

impl ToeClearance {
    pub fn collision(&self) -> bool {
        self.clearance < 0.0
    }
}

/// Highest toe point during swing (`swing` true) relative to an obstacle height.
pub fn toe_clearance(z: &[f64], swing: &[bool], obstacle: f64) -> Result<ToeClearance> {
    if z.len() != swing.len() {
        return Err(Error::invalid("toe clearance input", "toe and swing mask lengths differ"));
    }
    let index = (0..z.len())
        .filter(|&i| swing[i])
        .max_by(|&a, &b| z[a].total_cmp(&z[b]))
        .ok_or_else(|| Error::invalid("toe clearance input", "no swing samples"))?;
    Ok(ToeClearance {
        max_height: z[index],
        index,
        clearance: z[index] - obstacle,
    })
}
