//! Command-line front end: `fit`, `landmarks`, `simulate`, `analyze`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error. Every command writes a
//! `manifest.txt` next to its outputs.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Arg, ArgMatches, Args, Command, FromArgMatches, Parser, Subcommand};

use crate::columns::{read_columns, read_columns_from_path};
use crate::control::ControllerGains;
use crate::error::{Error, Result};
use crate::fourier::FourierConstraint;
use crate::kv::{self, KeyValues};
use crate::metrics::{
    backward_step_symmetry, circumduction, mid_stance_indices, pearson, segment_strides,
    symmetry_index, toe_clearance, vaulting_angle, MetricReport, SegmentOptions, StepEvent,
    StrideSet, SymmetryRow, NORMALIZED_POINTS,
};
use crate::phase::PhaseConfig;
use crate::reference::{extract_landmarks, load_reference, synthesize_reference, GaitLandmarks, ReferenceGait};
use crate::sim::{generate_scenario, run_closed_loop, LinkLengths, LoopSetup, PlantModel, Scenario, SimTrace};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;

/// Samples in the synthetic reference used when no reference file is given.
pub const SYNTHETIC_SAMPLES: usize = 200;

pub const MANIFEST_FILE: &str = "manifest.txt";

const PATH_KEYS: [&str; 3] = ["reference", "knee_constraint", "ankle_constraint"];

/// Every key `simulate` accepts, in config-file order.
pub fn simulate_keys() -> impl Iterator<Item = &'static str> {
    PhaseConfig::KEYS
        .into_iter()
        .chain(ControllerGains::KEYS)
        .chain(Scenario::KEYS)
        .chain(PlantModel::KEYS)
        .chain(LinkLengths::KEYS)
        .chain(PATH_KEYS)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "phasegait", version, about = "Phase-variable knee-ankle prosthesis controller toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Fit knee and ankle Fourier constraints to a reference stride.
    Fit(FitArgs),
    /// Extract phase-engine landmarks from a reference stride.
    Landmarks(LandmarksArgs),
    /// Run a scenario through the closed loop and write the trace.
    Simulate(SimulateArgs),
    /// Compute gait metrics from traces or marker data.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Reference CSV `t_norm,thigh_deg,knee_deg,ankle_deg`; a synthetic stride when omitted.
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,
    /// Resample the reference to N samples before fitting (even, at least 8).
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    #[arg(long = "out_dir", value_name = "DIR")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct LandmarksArgs {
    #[arg(long, value_name = "FILE")]
    pub reference: PathBuf,
    #[arg(long = "out_dir", value_name = "DIR")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `key=value` config; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long = "out_dir", value_name = "DIR")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub keys: KeyFlags,
}

/// One `--key value` flag per config key.
#[derive(Debug, Clone, Default)]
pub struct KeyFlags(pub KeyValues);

impl FromArgMatches for KeyFlags {
    fn from_arg_matches(m: &ArgMatches) -> std::result::Result<Self, clap::Error> {
        let mut kv = KeyValues::default();
        for key in simulate_keys() {
            if let Some(v) = m.get_one::<String>(key) {
                kv.insert(key, v.clone());
            }
        }
        Ok(Self(kv))
    }

    fn update_from_arg_matches(&mut self, m: &ArgMatches) -> std::result::Result<(), clap::Error> {
        *self = Self::from_arg_matches(m)?;
        Ok(())
    }
}

impl Args for KeyFlags {
    fn augment_args(cmd: Command) -> Command {
        simulate_keys().fold(cmd, |c, key| {
            c.arg(
                Arg::new(key)
                    .long(key)
                    .value_name("VALUE")
                    .allow_hyphen_values(true)
                    .help_heading("Config keys"),
            )
        })
    }

    fn augment_args_for_update(cmd: Command) -> Command {
        Self::augment_args(cmd)
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Simulator trace CSV.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// CSV of `prosth_mm,sound_mm` rows, one symmetry index per row; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub steps: Option<String>,
    /// Prosthetic ankle marker CSV `t,x_mm,y_mm,z_mm` (x along the walkway, y lateral).
    #[arg(long, value_name = "FILE")]
    pub marker: Option<PathBuf>,
    /// Prosthetic contact channel CSV `t,fc`.
    #[arg(long, value_name = "FILE")]
    pub fc: Option<PathBuf>,
    #[arg(long = "sound_marker", value_name = "FILE")]
    pub sound_marker: Option<PathBuf>,
    #[arg(long = "sound_fc", value_name = "FILE")]
    pub sound_fc: Option<PathBuf>,
    /// Sound-side foot angle CSV `t,foot_angle_deg,support` (support 0/1).
    #[arg(long = "foot_angle", value_name = "FILE")]
    pub foot_angle: Option<PathBuf>,
    #[arg(long = "obstacle_m", value_name = "M", default_value_t = 0.085)]
    pub obstacle_m: f64,
    /// Contact runs shorter than this many samples are merged as glitches.
    #[arg(long = "min_run", value_name = "SAMPLES", default_value_t = 1)]
    pub min_run: usize,
    #[arg(long = "out_dir", value_name = "DIR")]
    pub out_dir: PathBuf,
}

/// Written next to every output set. Contains no timestamps, so equal runs
/// give equal manifests.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config: Option<PathBuf>,
    pub inputs: Vec<PathBuf>,
    pub output_dir: PathBuf,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Effective settings, in a fixed order.
    pub args: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str, output_dir: &Path) -> Self {
        Self {
            command: command.to_string(),
            config: None,
            inputs: Vec::new(),
            output_dir: output_dir.to_path_buf(),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            args: Vec::new(),
        }
    }

    pub fn to_kv_string(&self) -> String {
        let show = |p: &Path| p.display().to_string();
        let mut pairs = vec![
            ("command".to_string(), self.command.clone()),
            ("config".to_string(), self.config.as_deref().map_or("-".into(), show)),
            (
                "inputs".to_string(),
                self.inputs.iter().map(|p| show(p)).collect::<Vec<_>>().join(";"),
            ),
            ("output_dir".to_string(), show(&self.output_dir)),
            ("seed".to_string(), self.seed.map_or("-".into(), |s| s.to_string())),
            ("tool_version".to_string(), self.tool_version.clone()),
        ];
        pairs.extend(self.args.iter().map(|(k, v)| (format!("arg.{k}"), v.clone())));
        kv::render(&pairs)
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        let get = |k: &str| {
            kv.get(k)
                .map(str::to_string)
                .ok_or_else(|| Error::parse("manifest", format!("missing `{k}`")))
        };
        let opt_path = |v: String| (v != "-").then(|| PathBuf::from(v));
        let seed = get("seed")?;
        let mut args: Vec<(String, String)> = kv
            .keys()
            .filter_map(|k| k.strip_prefix("arg.").map(|a| (a.to_string(), kv.get(k).unwrap_or("").to_string())))
            .collect();
        args.sort();
        Ok(Self {
            command: get("command")?,
            config: opt_path(get("config")?),
            inputs: get("inputs")?
                .split(';')
                .filter(|s| !s.is_empty())
                .map(PathBuf::from)
                .collect(),
            output_dir: PathBuf::from(get("output_dir")?),
            seed: if seed == "-" {
                None
            } else {
                Some(seed.parse().map_err(|_| Error::parse("manifest", "bad seed"))?)
            },
            tool_version: get("tool_version")?,
            args,
        })
    }

    pub fn write(&self) -> Result<()> {
        write_text(&self.output_dir.join(MANIFEST_FILE), &self.to_kv_string())
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn kv_pairs(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn cmd_fit(args: &FitArgs) -> CliResult<()> {
    ensure_dir(&args.out_dir)?;
    let mut manifest = RunManifest::new("fit", &args.out_dir);
    let mut reference = match &args.reference {
        Some(p) => {
            manifest.inputs.push(p.clone());
            load_reference(p)?
        }
        None => {
            let r = synthesize_reference(&GaitLandmarks::normal_walking(), args.n.unwrap_or(SYNTHETIC_SAMPLES))?;
            r.write_csv(&args.out_dir.join("reference.csv"))?;
            r
        }
    };
    if let Some(n) = args.n {
        if n != reference.len() {
            reference = reference.resample(n)?;
        }
    }
    let (knee, ankle) = reference.fit_constraints()?;
    knee.write_csv(&args.out_dir.join("knee_constraint.csv"))?;
    ankle.write_csv(&args.out_dir.join("ankle_constraint.csv"))?;

    let node_error = |fc: &FourierConstraint, values: &[f64]| {
        fc.eval_nodes()
            .iter()
            .zip(values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let err = node_error(&knee, &reference.knee()).max(node_error(&ankle, &reference.ankle()));
    manifest.args.push(("n".into(), reference.len().to_string()));
    manifest.write()?;
    println!(
        "fitted N={} knee/ankle constraints, max node error {err:.3e} deg",
        reference.len()
    );
    Ok(())
}

pub fn cmd_landmarks(args: &LandmarksArgs) -> CliResult<()> {
    ensure_dir(&args.out_dir)?;
    let reference = load_reference(&args.reference)?;
    let lm = extract_landmarks(&reference)?;
    let text = lm.to_kv_string();
    write_text(&args.out_dir.join("landmarks.txt"), &text)?;
    let mut manifest = RunManifest::new("landmarks", &args.out_dir);
    manifest.inputs.push(args.reference.clone());
    manifest.write()?;
    print!("{text}");
    Ok(())
}

/// Fully resolved inputs of a simulation run.
#[derive(Debug, Clone)]
pub struct SimulationPlan {
    pub setup: LoopSetup,
    pub scenario: Scenario,
    pub reference: ReferenceGait,
    pub reference_path: Option<PathBuf>,
    pub knee_path: Option<PathBuf>,
    pub ankle_path: Option<PathBuf>,
}

impl SimulationPlan {
    /// Builds a plan from config keys. Phase landmarks come from the reference
    /// (synthetic normal walking when none is given) and may be overridden.
    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        let keys: Vec<&str> = simulate_keys().collect();
        kv.reject_unknown(&keys)?;
        let reference_path = kv.get("reference").map(PathBuf::from);
        let reference = match &reference_path {
            Some(p) => load_reference(p)?,
            None => synthesize_reference(&GaitLandmarks::normal_walking(), SYNTHETIC_SAMPLES)?,
        };
        let phase = PhaseConfig::from_landmarks(&extract_landmarks(&reference)?).apply_kv(kv)?;
        let knee_path = kv.get("knee_constraint").map(PathBuf::from);
        let ankle_path = kv.get("ankle_constraint").map(PathBuf::from);
        let (fit_knee, fit_ankle) = reference.fit_constraints()?;
        let knee = match &knee_path {
            Some(p) => FourierConstraint::read_csv(p)?,
            None => fit_knee,
        };
        let ankle = match &ankle_path {
            Some(p) => FourierConstraint::read_csv(p)?,
            None => fit_ankle,
        };
        Ok(Self {
            setup: LoopSetup {
                phase,
                knee,
                ankle,
                gains: ControllerGains::default().apply_kv(kv)?,
                plant: PlantModel::default().apply_kv(kv)?,
                links: LinkLengths::default().apply_kv(kv)?,
            },
            scenario: Scenario::default().apply_kv(kv)?,
            reference,
            reference_path,
            knee_path,
            ankle_path,
        })
    }

    /// Every setting as `key=value` lines; feeding this back reproduces the run.
    pub fn resolved_config(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.setup.phase.to_kv_string());
        out.push_str(&self.setup.gains.to_kv_string());
        out.push_str(&self.scenario.to_kv_string());
        out.push_str(&self.setup.plant.to_kv_string());
        out.push_str(&self.setup.links.to_kv_string());
        for (key, path) in [
            ("reference", &self.reference_path),
            ("knee_constraint", &self.knee_path),
            ("ankle_constraint", &self.ankle_path),
        ] {
            if let Some(p) = path {
                out.push_str(&format!("{key}={}\n", p.display()));
            }
        }
        out
    }

    pub fn run(&self) -> Result<SimTrace> {
        let stream = generate_scenario(&self.scenario, &self.reference, &self.setup.phase)?;
        run_closed_loop(&stream, &self.setup)
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> CliResult<SimTrace> {
    let mut kv = match &args.config {
        Some(p) => KeyValues::read(p)?,
        None => KeyValues::default(),
    };
    kv.merge(&args.keys.0);
    let plan = SimulationPlan::from_kv(&kv)?;
    ensure_dir(&args.out_dir)?;
    let trace = plan.run()?;
    trace.write_csv(&args.out_dir.join("trace.csv"))?;
    trace.write_phase_csv(&args.out_dir.join("phase.csv"))?;
    let resolved = plan.resolved_config();
    write_text(&args.out_dir.join("config.txt"), &resolved)?;

    let mut manifest = RunManifest::new("simulate", &args.out_dir);
    manifest.config = args.config.clone();
    manifest.inputs = [&plan.scenario.replay, &plan.reference_path, &plan.knee_path, &plan.ankle_path]
        .into_iter()
        .flatten()
        .cloned()
        .collect();
    manifest.seed = Some(plan.scenario.seed);
    manifest.args = kv_pairs(&resolved);
    manifest.write()?;

    let strides = segment_strides(&trace.contact(), SegmentOptions::simulated()).map_or(0, |s| s.len());
    println!(
        "{}: {} samples, {} transitions, {} strides",
        plan.scenario.kind,
        trace.len(),
        trace.transitions.len(),
        strides
    );
    Ok(trace)
}

fn read_steps(source: &str) -> Result<Vec<Vec<f64>>> {
    let names = ["prosth_mm", "sound_mm"];
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::io("<stdin>", e))?;
        read_columns(text.as_bytes(), "<stdin>", &names)
    } else {
        read_columns_from_path(Path::new(source), &names)
    }
}

fn contact_from(path: &Path, n: usize) -> Result<Vec<bool>> {
    let cols = read_columns_from_path(path, &["t", "fc"])?;
    if cols[1].len() != n {
        return Err(Error::invalid(
            "contact channel",
            format!("{} has {} rows, marker data has {n}", path.display(), cols[1].len()),
        ));
    }
    Ok(cols[1].iter().map(|&v| v >= 0.5).collect())
}

struct MarkerSide {
    t: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    fc: Vec<bool>,
}

fn load_marker_side(marker: &Path, fc: Option<&Path>) -> Result<MarkerSide> {
    let fc = fc.ok_or_else(|| {
        Error::invalid(
            "marker input",
            format!("missing FC channel for {}", marker.display()),
        )
    })?;
    let cols = read_columns_from_path(marker, &["t", "x_mm", "y_mm", "z_mm"])?;
    let contact = contact_from(fc, cols[0].len())?;
    let mut it = cols.into_iter();
    Ok(MarkerSide {
        t: it.next().unwrap_or_default(),
        x: it.next().unwrap_or_default(),
        y: it.next().unwrap_or_default(),
        fc: contact,
    })
}

fn lateral_per_stride<'a>(y: &'a [f64], strides: &StrideSet) -> Vec<&'a [f64]> {
    strides.strides.iter().map(|s| &y[s.range()]).collect()
}

fn write_curves(trace: &SimTrace, strides: &StrideSet, path: &Path) -> Result<()> {
    let series = [
        ("s", trace.column(|r| r.s)),
        ("knee_cmd", trace.column(|r| r.q_knee_cmd)),
        ("ankle_cmd", trace.column(|r| r.q_ankle_cmd)),
        ("toe_z", trace.column(|r| r.toe_z)),
    ];
    let curves = series
        .iter()
        .map(|(_, v)| strides.mean_sd_curves(v))
        .collect::<Result<Vec<_>>>()?;
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["pct".to_string()];
    for (name, _) in &series {
        header.push(format!("{name}_mean"));
        header.push(format!("{name}_sd"));
    }
    w.write_record(&header)?;
    for p in 0..NORMALIZED_POINTS {
        let mut row = vec![p.to_string()];
        for (mean, sd) in &curves {
            row.push(mean[p].to_string());
            row.push(sd[p].to_string());
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> CliResult<MetricReport> {
    if args.trace.is_none() && args.steps.is_none() && args.marker.is_none() && args.foot_angle.is_none() {
        return Err(CliError::Usage(
            "analyze needs at least one of --trace, --steps, --marker, --foot_angle".into(),
        ));
    }
    if args.min_run == 0 {
        return Err(CliError::Usage("--min_run must be at least 1".into()));
    }
    ensure_dir(&args.out_dir)?;
    let mut report = MetricReport::default();
    let mut manifest = RunManifest::new("analyze", &args.out_dir);

    if let Some(path) = &args.trace {
        manifest.inputs.push(path.clone());
        let trace = SimTrace::read_csv(path)?;
        let opts = SegmentOptions {
            min_run: args.min_run,
            ..SegmentOptions::simulated()
        };
        let strides = segment_strides(&trace.contact(), opts)?;
        report.n_strides = Some(strides.len());
        for (label, cmd, plant) in [
            ("knee", trace.column(|r| r.q_knee_cmd), trace.column(|r| r.q_knee_plant)),
            ("ankle", trace.column(|r| r.q_ankle_cmd), trace.column(|r| r.q_ankle_plant)),
        ] {
            match pearson(&cmd, &plant) {
                Ok(r) => report.pearson.push((format!("{label}_cmd_vs_plant"), r)),
                Err(Error::Undefined { message, .. }) => {
                    eprintln!("warning: {label} correlation undefined: {message}")
                }
                Err(e) => return Err(e.into()),
            }
        }
        let swing: Vec<bool> = trace.rows.iter().map(|r| !r.fc).collect();
        let z = trace.column(|r| r.toe_z);
        report.toe = Some(toe_clearance(&z, &swing, args.obstacle_m)?);
        report.obstacle_height = Some(args.obstacle_m);
        write_curves(&trace, &strides, &args.out_dir.join("curves.csv"))?;
    }

    if let Some(source) = &args.steps {
        manifest.inputs.push(PathBuf::from(source));
        let cols = read_steps(source)?;
        if cols[0].is_empty() {
            return Err(Error::invalid("steps input", "no rows").into());
        }
        for (i, (&p, &s)) in cols[0].iter().zip(&cols[1]).enumerate() {
            report.symmetry.push(SymmetryRow {
                variable: format!("step_length_{}", i + 1),
                prosth: p,
                sound: s,
                si: symmetry_index(p, s)?,
            });
        }
    }

    if let Some(marker) = &args.marker {
        manifest.inputs.push(marker.clone());
        manifest.inputs.extend(args.fc.clone());
        let side = load_marker_side(marker, args.fc.as_deref())?;
        let strides = segment_strides(&side.fc, SegmentOptions::debounced(args.min_run))?;
        report.n_strides = Some(strides.len());
        let prosth = circumduction(&lateral_per_stride(&side.y, &strides))?;
        if let Some(sound_marker) = &args.sound_marker {
            manifest.inputs.push(sound_marker.clone());
            manifest.inputs.extend(args.sound_fc.clone());
            let sound_side = load_marker_side(sound_marker, args.sound_fc.as_deref())?;
            let sound_strides = segment_strides(&sound_side.fc, SegmentOptions::debounced(args.min_run))?;
            let sound = circumduction(&lateral_per_stride(&sound_side.y, &sound_strides))?;
            report.circumduction_si = Some(symmetry_index(prosth.summary.mean, sound.summary.mean)?);
            report.circumduction_sound = Some(sound);
            let events = |s: &MarkerSide| -> Vec<StepEvent> {
                mid_stance_indices(&s.fc)
                    .into_iter()
                    .map(|i| StepEvent { t: s.t[i], x_mm: s.x[i] })
                    .collect()
            };
            report.backward_steps = Some(backward_step_symmetry(&events(&side), &events(&sound_side))?);
        }
        report.circumduction = Some(prosth);
    } else if args.fc.is_some() || args.sound_marker.is_some() {
        return Err(CliError::Usage("--fc and --sound_marker need --marker".into()));
    }

    if let Some(path) = &args.foot_angle {
        manifest.inputs.push(path.clone());
        let cols = read_columns_from_path(path, &["t", "foot_angle_deg", "support"])?;
        let support: Vec<bool> = cols[2].iter().map(|&v| v >= 0.5).collect();
        report.vaulting = Some(vaulting_angle(&cols[1], None, &support)?);
    }

    let text = report.to_text();
    write_text(&args.out_dir.join("report.csv"), &report.to_csv_string()?)?;
    write_text(&args.out_dir.join("report.txt"), &text)?;
    manifest.args = vec![
        ("obstacle_m".into(), args.obstacle_m.to_string()),
        ("min_run".into(), args.min_run.to_string()),
    ];
    manifest.write()?;
    print!("{text}");
    Ok(report)
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        CliCommand::Fit(a) => cmd_fit(a),
        CliCommand::Landmarks(a) => cmd_landmarks(a),
        CliCommand::Simulate(a) => cmd_simulate(a).map(|_| ()),
        CliCommand::Analyze(a) => cmd_analyze(a).map(|_| ()),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}
