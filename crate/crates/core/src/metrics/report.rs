use std::fmt::Write as _;

use super::{Circumduction, StepSymmetry, Summary, ToeClearance, Vaulting};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryRow {
    pub variable: String,
    pub prosth: f64,
    pub sound: f64,
    pub si: f64,
}

/// Collected outcome measures. Sections left `None` or empty are omitted
/// from both renderings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricReport {
    pub n_strides: Option<usize>,
    /// `(label, r)`.
    pub pearson: Vec<(String, f64)>,
    pub symmetry: Vec<SymmetryRow>,
    pub vaulting: Option<Vaulting>,
    pub circumduction: Option<Circumduction>,
    pub circumduction_sound: Option<Circumduction>,
    pub circumduction_si: Option<f64>,
    pub backward_steps: Option<StepSymmetry>,
    pub toe: Option<ToeClearance>,
    pub obstacle_height: Option<f64>,
}

/// Left-aligned first column, right-aligned others, two spaces between columns.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate().take(cols) {
            if i == 0 {
                let _ = write!(s, "{cell:<w$}", w = width[0]);
            } else {
                let _ = write!(s, "  {cell:>w$}", w = width[i]);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn summary_rows(prefix: &str, item: &str, s: &Summary, rows: &mut Vec<[String; 3]>) {
    rows.push([prefix.into(), format!("{item}_n"), s.n.to_string()]);
    rows.push([prefix.into(), format!("{item}_mean"), s.mean.to_string()]);
    rows.push([prefix.into(), format!("{item}_sd"), s.sd.to_string()]);
}

impl MetricReport {
    fn csv_rows(&self) -> Vec<[String; 3]> {
        let mut rows = Vec::new();
        if let Some(n) = self.n_strides {
            rows.push(["strides".into(), "count".into(), n.to_string()]);
        }
        for (label, r) in &self.pearson {
            rows.push(["pearson".into(), label.clone(), r.to_string()]);
        }
        for s in &self.symmetry {
            rows.push(["si".into(), format!("{}_prosth", s.variable), s.prosth.to_string()]);
            rows.push(["si".into(), format!("{}_sound", s.variable), s.sound.to_string()]);
            rows.push(["si".into(), s.variable.clone(), s.si.to_string()]);
        }
        if let Some(v) = &self.vaulting {
            summary_rows("vaulting_deg", "peak", &v.summary, &mut rows);
            rows.push(["vaulting_deg".into(), "flagged".into(), v.n_flagged().to_string()]);
        }
        if let Some(c) = &self.circumduction {
            summary_rows("circumduction_mm", "prosth", &c.summary, &mut rows);
        }
        if let Some(c) = &self.circumduction_sound {
            summary_rows("circumduction_mm", "sound", &c.summary, &mut rows);
        }
        if let Some(si) = self.circumduction_si {
            rows.push(["circumduction_mm".into(), "si".into(), si.to_string()]);
        }
        if let Some(b) = &self.backward_steps {
            summary_rows("backward_step_mm", "prosth", &b.prosth, &mut rows);
            summary_rows("backward_step_mm", "sound", &b.sound, &mut rows);
            rows.push(["backward_step_mm".into(), "si".into(), b.si.to_string()]);
        }
        if let Some(t) = &self.toe {
            rows.push(["toe_m".into(), "max_height".into(), t.max_height.to_string()]);
            rows.push(["toe_m".into(), "clearance".into(), t.clearance.to_string()]);
            rows.push(["toe_m".into(), "collision".into(), u8::from(t.collision()).to_string()]);
        }
        if let Some(h) = self.obstacle_height {
            rows.push(["toe_m".into(), "obstacle".into(), h.to_string()]);
        }
        rows
    }

    /// Long-format `section,item,value` CSV.
    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "item", "value"])?;
        for r in self.csv_rows() {
            w.write_record(&r)?;
        }
        let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Plain-text summary with `mean (SD)` cells.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.n_strides {
            let _ = writeln!(out, "Strides: {n}\n");
        }
        if !self.pearson.is_empty() {
            let rows: Vec<Vec<String>> = self
                .pearson
                .iter()
                .map(|(l, r)| vec![l.clone(), format!("{r:.3}")])
                .collect();
            out.push_str("Correlation coefficients\n");
            out.push_str(&render_table(&["joint", "r"], &rows));
            out.push('\n');
        }
        if !self.symmetry.is_empty() {
            let rows: Vec<Vec<String>> = self
                .symmetry
                .iter()
                .map(|s| {
                    vec![
                        s.variable.clone(),
                        format!("{:.1}", s.prosth),
                        format!("{:.1}", s.sound),
                        format!("{:.2}", s.si),
                    ]
                })
                .collect();
            out.push_str("Symmetry index\n");
            out.push_str(&render_table(&["variable", "prosthetic", "sound", "SI"], &rows));
            out.push('\n');
        }
        if let Some(v) = &self.vaulting {
            out.push_str("Vaulting angle (deg)\n");
            let rows = vec![vec![
                "peak".to_string(),
                v.summary.n.to_string(),
                v.summary.cell(1),
                v.n_flagged().to_string(),
            ]];
            out.push_str(&render_table(&["", "n", "mean (SD)", "flagged"], &rows));
            out.push('\n');
        }
        if let Some(c) = &self.circumduction {
            out.push_str("Circumduction (mm)\n");
            let sound = self
                .circumduction_sound
                .as_ref()
                .map_or("-".to_string(), |s| s.summary.cell(1));
            let si = self.circumduction_si.map_or("-".to_string(), |si| format!("{si:.1}"));
            let rows = vec![vec!["range".to_string(), c.summary.cell(1), sound, si]];
            out.push_str(&render_table(&["", "prosthetic", "sound", "SI"], &rows));
            out.push('\n');
        }
        if let Some(b) = &self.backward_steps {
            out.push_str("Backward step length (mm)\n");
            let rows = vec![vec![
                "step".to_string(),
                b.prosth.cell(1),
                b.sound.cell(1),
                format!("{:.2}", b.si),
            ]];
            out.push_str(&render_table(&["", "prosthetic", "sound", "SI"], &rows));
            out.push('\n');
        }
        if let Some(t) = &self.toe {
            out.push_str("Toe clearance (m)\n");
            let rows = vec![vec![
                format!("{:.3}", t.max_height),
                self.obstacle_height.map_or("-".to_string(), |h| format!("{h:.3}")),
                format!("{:.3}", t.clearance),
                if t.collision() { "yes" } else { "no" }.to_string(),
            ]];
            out.push_str(&render_table(&["max height", "obstacle", "clearance", "collision"], &rows));
        }
        out
    }
}
