use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kv::{self, KeyValues};
use crate::phase::PhaseConfig;
use crate::reference::ReferenceGait;

/// Default jitter amplitude when noise is switched on without an explicit value.
pub const DEFAULT_NOISE_DEG: f64 = 0.1;
/// Backward walking is replayed at reduced amplitude so the thigh stays above `q_h51`.
pub const DEFAULT_BACKWARD_AMPLITUDE: f64 = 0.75;
pub const WEIGHT_SHIFT_ANGLE_DEG: f64 = 10.0;
pub const WEIGHT_SHIFT_DROPOUT_S: f64 = 0.3;
pub const OBSTACLE_HIP_DEG: f64 = 12.0;
pub const OBSTACLE_HOLD_S: f64 = 0.25;
const CHATTER_WINDOW_S: f64 = 0.004;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    ForwardWalk,
    BackwardWalk,
    StartStop,
    WeightShift,
    Kick,
    ObstacleStep,
    Replay,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        Self::ForwardWalk,
        Self::BackwardWalk,
        Self::StartStop,
        Self::WeightShift,
        Self::Kick,
        Self::ObstacleStep,
        Self::Replay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ForwardWalk => "forward_walk",
            Self::BackwardWalk => "backward_walk",
            Self::StartStop => "start_stop",
            Self::WeightShift => "weight_shift",
            Self::Kick => "kick",
            Self::ObstacleStep => "obstacle_step",
            Self::Replay => "replay",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse("key `scenario`", format!("unknown scenario `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    /// Strides for walking scenarios; repetitions for weight_shift and kick.
    pub n_strides: usize,
    pub cadence_hz: f64,
    /// Fraction of each stride with foot contact.
    pub stance_fraction: f64,
    /// Thigh excursion scale about `q_h0`; `None` picks the per-kind default.
    pub amplitude: Option<f64>,
    /// Uniform thigh jitter half-width in degrees; `None` is noise-free.
    pub noise_deg: Option<f64>,
    pub seed: u64,
    /// Random contact flips within a few milliseconds of each contact edge.
    pub fc_chatter: bool,
    pub replay: Option<PathBuf>,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            kind: ScenarioKind::ForwardWalk,
            n_strides: 10,
            cadence_hz: 1.0,
            stance_fraction: 0.63,
            amplitude: None,
            noise_deg: None,
            seed: 0,
            fc_chatter: false,
            replay: None,
        }
    }
}

impl Scenario {
    pub const KEYS: [&'static str; 9] = [
        "scenario",
        "n_strides",
        "cadence_hz",
        "stance_fraction",
        "amplitude",
        "noise_deg",
        "seed",
        "fc_chatter",
        "replay",
    ];

    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }

    pub fn effective_amplitude(&self) -> f64 {
        self.amplitude.unwrap_or(match self.kind {
            ScenarioKind::BackwardWalk => DEFAULT_BACKWARD_AMPLITUDE,
            _ => 1.0,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_strides == 0 {
            return Err(Error::invalid("scenario", "n_strides must be at least 1"));
        }
        if !(self.cadence_hz.is_finite() && self.cadence_hz > 0.0) {
            return Err(Error::invalid("scenario", "cadence_hz must be positive"));
        }
        if !(self.stance_fraction > 0.0 && self.stance_fraction < 1.0) {
            return Err(Error::invalid("scenario", "stance_fraction must lie in (0, 1)"));
        }
        let a = self.effective_amplitude();
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid("scenario", "amplitude must be positive"));
        }
        if let Some(n) = self.noise_deg {
            if !(n.is_finite() && n >= 0.0) {
                return Err(Error::invalid("scenario", "noise_deg must be non-negative"));
            }
        }
        if self.kind == ScenarioKind::Replay && self.replay.is_none() {
            return Err(Error::invalid("scenario", "replay needs a replay file"));
        }
        Ok(())
    }

    /// Applies scenario keys present in `kv`. `noise_deg=on` selects the default amplitude.
    pub fn apply_kv(mut self, kv: &KeyValues) -> Result<Self> {
        if let Some(k) = kv.get("scenario") {
            self.kind = k.parse()?;
        }
        if let Some(v) = kv.get("n_strides") {
            self.n_strides = parse_int(v, "n_strides")? as usize;
        }
        if let Some(v) = kv.get_f64("cadence_hz")? {
            self.cadence_hz = v;
        }
        if let Some(v) = kv.get_f64("stance_fraction")? {
            self.stance_fraction = v;
        }
        if let Some(v) = kv.get_f64("amplitude")? {
            self.amplitude = Some(v);
        }
        match kv.get("noise_deg") {
            None => {}
            Some("off") => self.noise_deg = None,
            Some("on") => self.noise_deg = Some(DEFAULT_NOISE_DEG),
            Some(_) => self.noise_deg = kv.get_f64("noise_deg")?,
        }
        if let Some(v) = kv.get("seed") {
            self.seed = parse_int(v, "seed")?;
        }
        if let Some(v) = kv.get("fc_chatter") {
            self.fc_chatter = parse_bool(v, "fc_chatter")?;
        }
        if let Some(v) = kv.get("replay") {
            self.replay = Some(PathBuf::from(v));
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_kv_string(&self) -> String {
        let mut pairs = vec![
            ("scenario", self.kind.to_string()),
            ("n_strides", self.n_strides.to_string()),
            ("cadence_hz", self.cadence_hz.to_string()),
            ("stance_fraction", self.stance_fraction.to_string()),
            ("amplitude", self.effective_amplitude().to_string()),
            (
                "noise_deg",
                self.noise_deg.map_or("off".to_string(), |n| n.to_string()),
            ),
            ("seed", self.seed.to_string()),
            ("fc_chatter", u8::from(self.fc_chatter).to_string()),
        ];
        if let Some(p) = &self.replay {
            pairs.push(("replay", p.display().to_string()));
        }
        kv::render(&pairs)
    }
}

fn parse_int(v: &str, key: &str) -> Result<u64> {
    v.parse()
        .map_err(|_| Error::parse(format!("key `{key}`"), format!("`{v}` is not a non-negative integer")))
}

fn parse_bool(v: &str, key: &str) -> Result<bool> {
    match v {
        "1" | "true" | "on" => Ok(true),
        "0" | "false" | "off" => Ok(false),
        _ => Err(Error::parse(format!("key `{key}`"), format!("`{v}` is not a boolean"))),
    }
}

/// One raw sensor sample. `fc_load` is a normalized contact load; synthetic
/// scenarios use 1 for contact and 0 for none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamSample {
    pub t: f64,
    pub q_h_deg: f64,
    pub fc_load: f64,
}

impl StreamSample {
    pub fn contact(&self) -> bool {
        self.fc_load >= 0.5
    }
}

fn load(fc: bool) -> f64 {
    if fc {
        1.0
    } else {
        0.0
    }
}

fn ease(a: f64, b: f64, u: f64) -> f64 {
    a + (b - a) * 0.5 * (1.0 - (std::f64::consts::PI * u.clamp(0.0, 1.0)).cos())
}

/// Appends samples on the fixed grid `t = k·dt`.
struct StreamBuilder {
    dt: f64,
    samples: Vec<StreamSample>,
}

impl StreamBuilder {
    fn new(dt: f64) -> Self {
        Self {
            dt,
            samples: Vec::new(),
        }
    }

    fn push(&mut self, q: f64, fc: bool) {
        let t = self.samples.len() as f64 * self.dt;
        self.samples.push(StreamSample {
            t,
            q_h_deg: q,
            fc_load: load(fc),
        });
    }

    fn count(&self, duration: f64) -> usize {
        (duration / self.dt).round() as usize
    }

    fn hold(&mut self, q: f64, fc: bool, duration: f64) {
        for _ in 0..self.count(duration) {
            self.push(q, fc);
        }
    }

    /// Eased move from `a` to `b`, ending on `b` at the last sample.
    fn ramp(&mut self, a: f64, b: f64, fc: bool, duration: f64) {
        let n = self.count(duration).max(1);
        for k in 1..=n {
            self.push(ease(a, b, k as f64 / n as f64), fc);
        }
    }

    /// One stride of the reference thigh scaled about `q_h0`. When `hold_at`
    /// is set, the swing ascent pauses there for `OBSTACLE_HOLD_S`.
    fn stride(&mut self, gait: &StrideShape<'_>, amplitude: f64, hold_at: Option<f64>) {
        let n = gait.samples_per_stride;
        let mut held = hold_at.is_none();
        for j in 0..n {
            let u = j as f64 / n as f64;
            let q = gait.thigh(u, amplitude);
            let fc = u < gait.stance_fraction;
            if let (false, Some(h)) = (held, hold_at) {
                if !fc && q >= h {
                    self.hold(h, false, OBSTACLE_HOLD_S);
                    held = true;
                }
            }
            self.push(q, fc);
        }
    }
}

struct StrideShape<'a> {
    reference: &'a ReferenceGait,
    q_h0: f64,
    stance_fraction: f64,
    samples_per_stride: usize,
}

impl StrideShape<'_> {
    fn thigh(&self, u: f64, amplitude: f64) -> f64 {
        self.q_h0 - amplitude * (self.q_h0 - self.reference.thigh_at(u))
    }
}

/// Builds the raw sensor stream for a scenario, sampled at `cfg.sample_rate_hz`.
///
/// Walking scenarios replay `reference`'s thigh trajectory; contact is on for
/// the first `stance_fraction` of each stride. Output depends only on the
/// arguments.
pub fn generate_scenario(
    sc: &Scenario,
    reference: &ReferenceGait,
    cfg: &PhaseConfig,
) -> Result<Vec<StreamSample>> {
    sc.validate()?;
    cfg.validate()?;
    let dt = cfg.sample_period_s();
    let q_h0 = cfg.q_h0_deg;
    let amplitude = sc.effective_amplitude();
    let samples_per_stride = (cfg.sample_rate_hz / sc.cadence_hz).round() as usize;
    if samples_per_stride < 2 {
        return Err(Error::invalid("scenario", "cadence too high for the sample rate"));
    }
    let shape = StrideShape {
        reference,
        q_h0,
        stance_fraction: sc.stance_fraction,
        samples_per_stride,
    };
    let mut b = StreamBuilder::new(dt);

    match sc.kind {
        ScenarioKind::ForwardWalk | ScenarioKind::BackwardWalk => {
            for _ in 0..sc.n_strides {
                b.stride(&shape, amplitude, None);
            }
            if sc.kind == ScenarioKind::BackwardWalk {
                let forward: Vec<_> = b.samples.iter().map(|s| (s.q_h_deg, s.fc_load)).collect();
                for (s, (q, fc)) in b.samples.iter_mut().zip(forward.into_iter().rev()) {
                    s.q_h_deg = q;
                    s.fc_load = fc;
                }
            }
        }
        ScenarioKind::StartStop => {
            b.hold(0.0, true, 0.5);
            b.ramp(0.0, q_h0, false, 0.4);
            for k in 0..sc.n_strides {
                let a = (0.5 + 0.25 * k as f64).min(1.0) * amplitude;
                b.stride(&shape, a, None);
            }
            b.ramp(q_h0, 0.0, true, 0.6);
            b.hold(0.0, true, 1.0);
        }
        ScenarioKind::WeightShift => {
            let q = WEIGHT_SHIFT_ANGLE_DEG;
            for _ in 0..sc.n_strides {
                b.hold(q, true, 1.0);
                b.hold(q, false, WEIGHT_SHIFT_DROPOUT_S);
                b.hold(q, true, 1.0 - WEIGHT_SHIFT_DROPOUT_S);
            }
        }
        ScenarioKind::Kick => {
            for _ in 0..sc.n_strides {
                b.hold(5.0, true, 0.5);
                b.ramp(5.0, -15.0, false, 0.3);
                b.ramp(-15.0, 45.0, false, 0.15);
                b.ramp(45.0, 15.0, false, 0.25);
                b.ramp(15.0, 22.0, false, 0.2);
                b.ramp(22.0, 5.0, true, 0.4);
            }
            b.hold(5.0, true, 0.5);
        }
        ScenarioKind::ObstacleStep => {
            let mid = sc.n_strides / 2;
            for k in 0..sc.n_strides {
                let hold = (k == mid).then_some(OBSTACLE_HIP_DEG);
                b.stride(&shape, amplitude, hold);
            }
        }
        ScenarioKind::Replay => {
            let path = sc.replay.as_deref().expect("validated");
            return read_stream_csv(path);
        }
    }

    let mut samples = b.samples;
    let mut rng = ChaCha8Rng::seed_from_u64(sc.seed);
    if let Some(a) = sc.noise_deg.filter(|&a| a > 0.0) {
        for s in &mut samples {
            s.q_h_deg += rng.random_range(-a..=a);
        }
    }
    if sc.fc_chatter {
        add_chatter(&mut samples, &mut rng);
    }
    Ok(samples)
}

/// Flips contact at random on samples within `CHATTER_WINDOW_S` of a clean edge.
fn add_chatter(samples: &mut [StreamSample], rng: &mut ChaCha8Rng) {
    let clean: Vec<bool> = samples.iter().map(StreamSample::contact).collect();
    let edges: Vec<f64> = (1..clean.len())
        .filter(|&i| clean[i] != clean[i - 1])
        .map(|i| samples[i].t)
        .collect();
    let mut next_edge = 0;
    for (i, s) in samples.iter_mut().enumerate() {
        while next_edge < edges.len() && edges[next_edge] + CHATTER_WINDOW_S < s.t {
            next_edge += 1;
        }
        let near = edges
            .get(next_edge)
            .is_some_and(|&e| (e - s.t).abs() <= CHATTER_WINDOW_S);
        if near && rng.random_bool(0.3) {
            s.fc_load = load(!clean[i]);
        }
    }
}

pub const STREAM_HEADER: [&str; 3] = ["t", "q_h_deg", "fc"];

/// Reads a `t,q_h_deg,fc` stream. Columns are matched by header name; `fc` is a
/// load in `[0, 1]` or a 0/1 flag.
pub fn read_stream_csv(path: &Path) -> Result<Vec<StreamSample>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::parse(path.display().to_string(), format!("missing column `{name}`")))
    };
    let (it, iq, ifc) = (col("t")?, col("q_h_deg")?, col("fc")?);
    let mut out = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let loc = || format!("{} row {}", path.display(), row + 2);
        let field = |i: usize, name: &str| -> Result<f64> {
            let raw = record.get(i).ok_or_else(|| Error::parse(loc(), format!("missing `{name}`")))?;
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::parse(loc(), format!("`{name}` = `{raw}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::parse(loc(), format!("`{name}` is not finite")))
            }
        };
        let sample = StreamSample {
            t: field(it, "t")?,
            q_h_deg: field(iq, "q_h_deg")?,
            fc_load: field(ifc, "fc")?,
        };
        if let Some(prev) = out.last().map(|p: &StreamSample| p.t) {
            if sample.t <= prev {
                return Err(Error::parse(loc(), "time does not increase"));
            }
        }
        out.push(sample);
    }
    if out.is_empty() {
        return Err(Error::parse(path.display().to_string(), "no samples"));
    }
    Ok(out)
}

pub fn write_stream_csv(samples: &[StreamSample], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(STREAM_HEADER)?;
    for s in samples {
        w.write_record([s.t.to_string(), s.q_h_deg.to_string(), s.fc_load.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
