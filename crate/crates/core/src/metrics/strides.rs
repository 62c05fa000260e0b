use std::ops::Range;

use crate::error::{Error, Result};

/// Normalized stride grid: 0 to 100 % in 1 % steps.
pub const NORMALIZED_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentOptions {
    /// Contact runs shorter than this many samples are treated as glitches
    /// and merged into the surrounding level. 1 disables debouncing.
    pub min_run: usize,
    /// Treat sample 0 as a rising edge when it is in contact.
    pub start_is_edge: bool,
    /// Close a final stride at the end of the data when it ends in swing.
    pub close_at_end: bool,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        Self {
            min_run: 1,
            start_is_edge: false,
            close_at_end: false,
        }
    }
}

impl SegmentOptions {
    /// For simulator traces, which start at a touchdown and end in swing.
    pub fn simulated() -> Self {
        Self {
            min_run: 1,
            start_is_edge: true,
            close_at_end: true,
        }
    }

    pub fn debounced(min_run: usize) -> Self {
        Self {
            min_run,
            ..Self::default()
        }
    }
}

/// Sample indices `[start, end)` of one stride; `toe_off` is the first swing sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stride {
    pub start: usize,
    pub toe_off: usize,
    pub end: usize,
}

impl Stride {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn stance(&self) -> Range<usize> {
        self.start..self.toe_off
    }

    pub fn swing(&self) -> Range<usize> {
        self.toe_off..self.end
    }

    /// Resamples `series[start..end]` onto [`NORMALIZED_POINTS`] points by
    /// linear interpolation.
    pub fn normalize(&self, series: &[f64]) -> Vec<f64> {
        let s = &series[self.range()];
        let last = (s.len() - 1) as f64;
        (0..NORMALIZED_POINTS)
            .map(|p| {
                let x = last * p as f64 / (NORMALIZED_POINTS - 1) as f64;
                let i = (x.floor() as usize).min(s.len().saturating_sub(2));
                if s.len() == 1 {
                    return s[0];
                }
                let frac = x - i as f64;
                s[i] + (s[i + 1] - s[i]) * frac
            })
            .collect()
    }
}

/// Ordered, non-overlapping strides, each one stance then one swing interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrideSet {
    pub strides: Vec<Stride>,
    pub n_samples: usize,
}

impl StrideSet {
    pub fn len(&self) -> usize {
        self.strides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strides.is_empty()
    }

    /// One normalized curve per stride.
    pub fn normalize(&self, series: &[f64]) -> Result<Vec<Vec<f64>>> {
        if series.len() != self.n_samples {
            return Err(Error::invalid(
                "stride series",
                format!("expected {} samples, got {}", self.n_samples, series.len()),
            ));
        }
        Ok(self.strides.iter().map(|s| s.normalize(series)).collect())
    }

    /// Pointwise mean and sample SD across strides of the normalized series.
    pub fn mean_sd_curves(&self, series: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let curves = self.normalize(series)?;
        let mut mean = vec![0.0; NORMALIZED_POINTS];
        let mut sd = vec![0.0; NORMALIZED_POINTS];
        for p in 0..NORMALIZED_POINTS {
            let column: Vec<f64> = curves.iter().map(|c| c[p]).collect();
            let s = super::Summary::from_values(&column)?;
            mean[p] = s.mean;
            sd[p] = s.sd;
        }
        Ok((mean, sd))
    }
}

/// Contact level per sample after merging runs shorter than `min_run`.
fn clean_levels(fc: &[bool], min_run: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(fc.len());
    let mut level = fc[0];
    let mut i = 0;
    while i < fc.len() {
        let v = fc[i];
        let run_end = fc[i..].iter().position(|&x| x != v).map_or(fc.len(), |k| i + k);
        // The first run and any run of min_run samples sets the level.
        if i == 0 || run_end - i >= min_run {
            level = v;
        }
        out.extend(std::iter::repeat_n(level, run_end - i));
        i = run_end;
    }
    out
}

/// Splits a contact stream into strides bounded by consecutive rising edges.
/// Leading data before the first edge and trailing data after the last are
/// discarded unless `opts` says otherwise.
pub fn segment_strides(fc: &[bool], opts: SegmentOptions) -> Result<StrideSet> {
    if fc.is_empty() {
        return Err(Error::invalid("contact stream", "no complete stride: stream is empty"));
    }
    let levels = clean_levels(fc, opts.min_run.max(1));
    let mut rising: Vec<usize> = (1..levels.len())
        .filter(|&i| levels[i] && !levels[i - 1])
        .collect();
    if opts.start_is_edge && levels[0] {
        rising.insert(0, 0);
    }
    let falling_after = |from: usize, to: usize| (from + 1..to).find(|&i| !levels[i] && levels[i - 1]);

    let mut strides: Vec<Stride> = rising
        .windows(2)
        .filter_map(|w| {
            falling_after(w[0], w[1]).map(|toe_off| Stride {
                start: w[0],
                toe_off,
                end: w[1],
            })
        })
        .collect();
    if opts.close_at_end {
        if let Some(&last) = rising.last() {
            let n = levels.len();
            if !levels[n - 1] {
                if let Some(toe_off) = falling_after(last, n) {
                    strides.push(Stride {
                        start: last,
                        toe_off,
                        end: n,
                    });
                }
            }
        }
    }
    if strides.is_empty() {
        return Err(Error::invalid(
            "contact stream",
            format!(
                "no complete stride: {} rising contact edge(s) found",
                rising.len()
            ),
        ));
    }
    Ok(StrideSet {
        strides,
        n_samples: fc.len(),
    })
}
