//! Scenario streams, a kinematic plant and the closed loop through the phase
//! engine and joint controller.

mod kinematics;
mod plant;
mod scenario;
mod trace;

pub use kinematics::{chain_points, toe_position, ChainPoints, LinkLengths};
pub use plant::{PlantMode, PlantModel, PlantState};
pub use scenario::{
    generate_scenario, read_stream_csv, write_stream_csv, Scenario, ScenarioKind, StreamSample,
    DEFAULT_BACKWARD_AMPLITUDE, DEFAULT_NOISE_DEG, OBSTACLE_HIP_DEG, OBSTACLE_HOLD_S,
    STREAM_HEADER, WEIGHT_SHIFT_ANGLE_DEG, WEIGHT_SHIFT_DROPOUT_S,
};
pub use trace::{SimRow, SimTrace, PHASE_HEADER, TRACE_HEADER};

use crate::control::{ControllerGains, JointController};
use crate::error::Result;
use crate::fourier::FourierConstraint;
use crate::phase::{PhaseConfig, PhaseEngine, SensorSample};

/// Everything the closed loop needs besides the stream.
#[derive(Debug, Clone)]
pub struct LoopSetup {
    pub phase: PhaseConfig,
    pub knee: FourierConstraint,
    pub ankle: FourierConstraint,
    pub gains: ControllerGains,
    pub plant: PlantModel,
    pub links: LinkLengths,
}

/// Runs the stream through contact debouncing, the phase engine, the joint
/// controller and the plant. One output row per input sample.
///
/// Per sample: phase → desired angles → plant advance → measure → PD torque.
/// The plant starts on the desired angles of the first sample.
pub fn run_closed_loop(stream: &[StreamSample], setup: &LoopSetup) -> Result<SimTrace> {
    setup.plant.validate()?;
    setup.links.validate()?;
    let mut engine = PhaseEngine::new(setup.phase)?;
    let mut debounce = setup.phase.contact_debouncer();
    let mut controller = JointController::new(
        setup.knee.clone(),
        setup.ankle.clone(),
        setup.gains,
        setup.phase.vel_filter_cutoff_hz,
    )?;

    let mut rows = Vec::with_capacity(stream.len());
    let mut rates = Vec::with_capacity(stream.len());
    let mut transitions = Vec::new();
    let mut plant_state: Option<PlantState> = None;
    let mut t_prev = None;

    for sample in stream {
        let fc = debounce.update(sample.t, sample.fc_load);
        let out = engine.step(&SensorSample::new(sample.t, sample.q_h_deg, fc))?;
        if let Some(ev) = out.transition {
            transitions.push(ev);
        }
        let (knee_d, ankle_d) = controller.desired(out.s)?;
        let state = match (plant_state, t_prev) {
            (Some(p), Some(tp)) => setup.plant.advance(p, knee_d, ankle_d, sample.t - tp),
            _ => PlantState {
                knee_deg: knee_d,
                ankle_deg: ankle_d,
            },
        };
        plant_state = Some(state);
        t_prev = Some(sample.t);

        let (knee, ankle) = controller.step(sample.t, out.s, state.knee_deg, state.ankle_deg)?;
        let (toe_x, toe_z) = toe_position(&setup.links, sample.q_h_deg, state.knee_deg, state.ankle_deg);
        rows.push(SimRow {
            t: sample.t,
            q_h: sample.q_h_deg,
            fc,
            state: out.state,
            s: out.s,
            q_knee_cmd: knee.q_d_deg,
            q_ankle_cmd: ankle.q_d_deg,
            q_knee_plant: state.knee_deg,
            q_ankle_plant: state.ankle_deg,
            tau_knee: knee.tau_nm,
            tau_ankle: ankle.tau_nm,
            toe_x,
            toe_z,
        });
        rates.push(engine.state().qdot_h_est);
    }

    Ok(SimTrace {
        rows,
        thigh_rate: Some(rates),
        transitions,
    })
}

/// Toe `(x, z)` per row from the thigh and plant joint angles.
pub fn toe_trajectory(trace: &SimTrace, links: &LinkLengths) -> Result<Vec<(f64, f64)>> {
    links.validate()?;
    Ok(trace
        .rows
        .iter()
        .map(|r| toe_position(links, r.q_h, r.q_knee_plant, r.q_ankle_plant))
        .collect())
}
