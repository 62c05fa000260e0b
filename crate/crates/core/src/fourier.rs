//! Fourier-series virtual constraints.
//!
//! A constraint is the trigonometric interpolant of `N` equally spaced samples
//! of one joint angle over a stride, evaluated as a function of the phase
//! `s ∈ [0, 1]`:
//!
//! ```text
//! h(s) = ½ρ₀ + ½ρ_{N/2}·cos(πNs) + Σ_{k=1}^{N/2-1} [ρ_k·cos(2πks) − ψ_k·sin(2πks)]
//! ```
//!
//! Coefficients are `2/N` times the real and imaginary parts of the discrete
//! Fourier transform, so a constant signal `v` gives `ρ₀ = 2v`.

use std::f64::consts::PI;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierConstraint {
    /// `ρ_0 ..= ρ_{N/2}`.
    rho: Vec<f64>,
    /// `ψ_1 ..= ψ_{N/2-1}`.
    psi: Vec<f64>,
    n_samples: usize,
}

pub(crate) fn check_sample_count(n: usize, what: &'static str) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::invalid(
            what,
            format!("at least {MIN_SAMPLES} samples required, got {n}"),
        ));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::invalid(
            what,
            format!("sample count must be even, got {n}"),
        ));
    }
    Ok(())
}

/// Fits the interpolating constraint to `values`, taken at phases `j/N`.
///
/// Direct O(N²) summation; strides are at most a few hundred samples.
pub fn fit_fourier(values: &[f64]) -> Result<FourierConstraint> {
    let n = values.len();
    check_sample_count(n, "constraint samples")?;
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(
            "constraint samples",
            format!("sample {i} is not finite"),
        ));
    }

    let half = n / 2;
    let scale = 2.0 / n as f64;
    let mut rho = Vec::with_capacity(half + 1);
    let mut psi = Vec::with_capacity(half.saturating_sub(1));
    for k in 0..=half {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, &x) in values.iter().enumerate() {
            // Reduce k·j mod N before scaling so the angle stays in [0, 2π).
            let angle = 2.0 * PI * ((k * j) % n) as f64 / n as f64;
            re += x * angle.cos();
            im -= x * angle.sin();
        }
        rho.push(scale * re);
        if k != 0 && k != half {
            psi.push(scale * im);
        }
    }

    Ok(FourierConstraint {
        rho,
        psi,
        n_samples: n,
    })
}

impl FourierConstraint {
    /// Builds a constraint from explicit coefficients.
    pub fn from_coefficients(rho: Vec<f64>, psi: Vec<f64>) -> Result<Self> {
        if rho.len() < 2 {
            return Err(Error::invalid("constraint", "need at least ρ_0 and ρ_{N/2}"));
        }
        let n = 2 * (rho.len() - 1);
        check_sample_count(n, "constraint")?;
        if psi.len() != rho.len() - 2 {
            return Err(Error::invalid(
                "constraint",
                format!("expected {} ψ coefficients, got {}", rho.len() - 2, psi.len()),
            ));
        }
        if rho.iter().chain(&psi).any(|c| !c.is_finite()) {
            return Err(Error::invalid("constraint", "non-finite coefficient"));
        }
        Ok(Self {
            rho,
            psi,
            n_samples: n,
        })
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Harmonic frequency `Ω_k = 2πk` in rad per unit phase.
    pub fn omega(k: usize) -> f64 {
        2.0 * PI * k as f64
    }

    /// Evaluates `h(s)`. Rejects `s` outside `[0, 1]`.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::invalid("phase", format!("s = {s} outside [0, 1]")));
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: f64) -> f64 {
        let half = self.n_samples / 2;
        let mut h = 0.5 * self.rho[0] + 0.5 * self.rho[half] * (PI * self.n_samples as f64 * s).cos();
        for k in 1..half {
            let arg = Self::omega(k) * s;
            h += self.rho[k] * arg.cos() - self.psi[k - 1] * arg.sin();
        }
        h
    }

    /// Evaluates at the node phases `j/N`, `j = 0..N`.
    pub fn eval_nodes(&self) -> Vec<f64> {
        let n = self.n_samples as f64;
        (0..self.n_samples)
            .map(|j| self.eval_unchecked(j as f64 / n))
            .collect()
    }

    /// Writes `k,rho_k,psi_k` rows for `k = 0..=N/2`; `ψ_0` and `ψ_{N/2}` are 0.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("k,rho_k,psi_k\n");
        let half = self.n_samples / 2;
        for k in 0..=half {
            let psi = if k == 0 || k == half { 0.0 } else { self.psi[k - 1] };
            out.push_str(&format!("{k},{},{psi}\n", self.rho[k]));
        }
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["k", "rho_k", "psi_k"] {
            return Err(Error::parse(
                path.display().to_string(),
                "expected header `k,rho_k,psi_k`",
            ));
        }
        let mut rho = Vec::new();
        let mut psi_all = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record?;
            let loc = format!("{} row {}", path.display(), i + 2);
            let field = |idx: usize| -> Result<f64> {
                record
                    .get(idx)
                    .ok_or_else(|| Error::parse(&loc, "missing field"))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(&loc, "not a number"))
            };
            let k = field(0)?;
            if k != i as f64 {
                return Err(Error::parse(&loc, format!("expected k = {i}")));
            }
            rho.push(field(1)?);
            psi_all.push(field(2)?);
        }
        if psi_all.len() < 2 {
            return Err(Error::parse(path.display().to_string(), "too few rows"));
        }
        let psi = psi_all[1..psi_all.len() - 1].to_vec();
        Self::from_coefficients(rho, psi)
    }
}

/// Free-function form of [`FourierConstraint::eval`].
pub fn eval_constraint(fc: &FourierConstraint, s: f64) -> Result<f64> {
    fc.eval(s)
}
