//! Gait outcome measures: correlation, symmetry, vaulting, circumduction,
//! backward step lengths and toe clearance, plus stride segmentation.
//!
//! Every mean (SD) uses the sample standard deviation (divisor `n − 1`).

mod events;
mod report;
mod strides;

pub use events::{
    backward_step_symmetry, circumduction, circumduction_with_symmetry, mid_stance_indices,
    toe_clearance, vaulting_angle, Circumduction, StepEvent, StepSymmetry, ToeClearance,
    VaultPeak, Vaulting,
};
pub use report::{render_table, MetricReport, SymmetryRow};
pub use strides::{segment_strides, SegmentOptions, Stride, StrideSet, NORMALIZED_POINTS};

use std::fmt;

use crate::error::{Error, Result};

/// `n`, mean and sample SD of a set of per-stride values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample SD; 0 when `n < 2`.
    pub sd: f64,
}

impl Summary {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::undefined("summary", "no values"));
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let sd = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Ok(Self { n, mean, sd })
    }

    /// `mean (SD)` with `decimals` digits, e.g. `16.1 (1.3)`.
    pub fn cell(&self, decimals: usize) -> String {
        format!("{:.*} ({:.*})", decimals, self.mean, decimals, self.sd)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cell(1))
    }
}

/// Pearson product-moment correlation, single pass over running co-moments.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::invalid(
            "pearson input",
            format!("length mismatch {} vs {}", x.len(), y.len()),
        ));
    }
    if x.len() < 2 {
        return Err(Error::invalid("pearson input", "need at least 2 points"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::invalid("pearson input", "non-finite value"));
    }
    let (mut mx, mut my, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        let n = (i + 1) as f64;
        let dx = a - mx;
        let dy = b - my;
        mx += dx / n;
        my += dy / n;
        sxx += dx * (a - mx);
        syy += dy * (b - my);
        sxy += dx * (b - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::undefined("pearson", "zero variance"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// `|V_P − V_S| / (½(V_P + V_S))`.
pub fn symmetry_index(v_prosth: f64, v_sound: f64) -> Result<f64> {
    if !(v_prosth.is_finite() && v_sound.is_finite()) {
        return Err(Error::invalid("symmetry input", "non-finite value"));
    }
    let mean = 0.5 * (v_prosth + v_sound);
    if mean == 0.0 {
        return Err(Error::undefined("symmetry index", "V_P + V_S is zero"));
    }
    Ok((v_prosth - v_sound).abs() / mean.abs())
}
