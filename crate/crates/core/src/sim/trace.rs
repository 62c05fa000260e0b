use std::path::Path;

use crate::error::{Error, Result};
use crate::phase::{GaitState, TransitionEvent};

pub const TRACE_HEADER: [&str; 13] = [
    "t",
    "q_h",
    "fc",
    "state",
    "s",
    "q_knee_cmd",
    "q_ankle_cmd",
    "q_knee_plant",
    "q_ankle_plant",
    "tau_knee",
    "tau_ankle",
    "toe_x",
    "toe_z",
];

pub const PHASE_HEADER: [&str; 6] = ["t", "q_h_deg", "fc", "state", "s", "qdot_est"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRow {
    pub t: f64,
    pub q_h: f64,
    /// Debounced contact as seen by the phase engine.
    pub fc: bool,
    pub state: GaitState,
    pub s: f64,
    pub q_knee_cmd: f64,
    pub q_ankle_cmd: f64,
    pub q_knee_plant: f64,
    pub q_ankle_plant: f64,
    pub tau_knee: f64,
    pub tau_ankle: f64,
    pub toe_x: f64,
    pub toe_z: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimTrace {
    pub rows: Vec<SimRow>,
    /// Filtered thigh rate per row; only present for traces produced in-process.
    pub thigh_rate: Option<Vec<f64>>,
    /// Engine transitions in order; only present for traces produced in-process.
    pub transitions: Vec<TransitionEvent>,
}

impl SimTrace {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, f: impl Fn(&SimRow) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }

    pub fn contact(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.fc).collect()
    }

    /// `(row index, from, to)` for every change of the state column.
    pub fn state_changes(&self) -> Vec<(usize, GaitState, GaitState)> {
        self.rows
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].state != w[1].state)
            .map(|(i, w)| (i + 1, w[0].state, w[1].state))
            .collect()
    }

    pub fn occupancy(&self, state: GaitState) -> usize {
        self.rows.iter().filter(|r| r.state == state).count()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(TRACE_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.t.to_string(),
                r.q_h.to_string(),
                u8::from(r.fc).to_string(),
                r.state.label().to_string(),
                r.s.to_string(),
                r.q_knee_cmd.to_string(),
                r.q_ankle_cmd.to_string(),
                r.q_knee_plant.to_string(),
                r.q_ankle_plant.to_string(),
                r.tau_knee.to_string(),
                r.tau_ankle.to_string(),
                r.toe_x.to_string(),
                r.toe_z.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Per-sample phase log. Fails for traces read back from disk.
    pub fn write_phase_csv(&self, path: &Path) -> Result<()> {
        let rates = self
            .thigh_rate
            .as_ref()
            .ok_or_else(|| Error::invalid("trace", "no thigh-rate log attached"))?;
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(PHASE_HEADER)?;
        for (r, qdot) in self.rows.iter().zip(rates) {
            w.write_record([
                r.t.to_string(),
                r.q_h.to_string(),
                u8::from(r.fc).to_string(),
                r.state.label().to_string(),
                r.s.to_string(),
                qdot.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Reads a trace written by [`write_csv`](Self::write_csv). Columns are
    /// matched by name, so extra columns are ignored.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.clone();
        let mut idx = [0usize; 13];
        for (slot, name) in idx.iter_mut().zip(TRACE_HEADER) {
            *slot = headers.iter().position(|h| h.trim() == name).ok_or_else(|| {
                Error::parse(path.display().to_string(), format!("missing column `{name}`"))
            })?;
        }
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record?;
            let loc = format!("{} row {}", path.display(), i + 2);
            let raw = |c: usize| record.get(idx[c]).map(str::trim).unwrap_or("");
            let num = |c: usize| -> Result<f64> {
                raw(c).parse::<f64>().map_err(|_| {
                    Error::parse(&loc, format!("`{}` = `{}` is not a number", TRACE_HEADER[c], raw(c)))
                })
            };
            let fc = match raw(2) {
                "1" => true,
                "0" => false,
                other => return Err(Error::parse(&loc, format!("fc = `{other}` is not 0/1"))),
            };
            let state = GaitState::from_label(raw(3))
                .ok_or_else(|| Error::parse(&loc, format!("unknown state `{}`", raw(3))))?;
            rows.push(SimRow {
                t: num(0)?,
                q_h: num(1)?,
                fc,
                state,
                s: num(4)?,
                q_knee_cmd: num(5)?,
                q_ankle_cmd: num(6)?,
                q_knee_plant: num(7)?,
                q_ankle_plant: num(8)?,
                tau_knee: num(9)?,
                tau_ankle: num(10)?,
                toe_x: num(11)?,
                toe_z: num(12)?,
            });
        }
        Ok(Self {
            rows,
            thigh_rate: None,
            transitions: Vec::new(),
        })
    }
}
