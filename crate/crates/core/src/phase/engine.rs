use std::fmt;

use super::{stance_equation, swing_equation, PhaseConfig, SensorSample};
use crate::error::Error;
use crate::filter::{lowpass_derivative, time_constant};
use crate::scalar::{max, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaitState {
    /// Stance.
    S1,
    /// Pushoff onset.
    S2,
    /// Pre-swing.
    S3,
    /// Swing.
    S4,
    /// Backward stance.
    S5,
}

impl GaitState {
    pub const ALL: [GaitState; 5] = [Self::S1, Self::S2, Self::S3, Self::S4, Self::S5];

    pub fn label(self) -> &'static str {
        match self {
            Self::S1 => "S1",
            Self::S2 => "S2",
            Self::S3 => "S3",
            Self::S4 => "S4",
            Self::S5 => "S5",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.label() == label)
    }

    /// S3 and S4 use the swing equation; the others use the stance equation.
    pub fn uses_swing_equation(self) -> bool {
        matches!(self, Self::S3 | Self::S4)
    }
}

impl fmt::Display for GaitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEvent {
    pub t: f64,
    pub from: GaitState,
    pub to: GaitState,
    /// Phase the old state's equation gives at this sample.
    pub s_before: f64,
    /// Phase emitted after the transition.
    pub s_after: f64,
}

impl TransitionEvent {
    /// Swing-to-stance switch, where the phase wraps back towards 0.
    pub fn is_stride_reset(&self) -> bool {
        self.from == GaitState::S4 && matches!(self.to, GaitState::S1 | GaitState::S5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutput<T: Scalar = f64> {
    pub s: T,
    pub state: GaitState,
    pub transition: Option<TransitionEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleRejected {
    NonIncreasingTime,
    NonFinite,
}

impl fmt::Display for SampleRejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonIncreasingTime => f.write_str("sample time does not increase"),
            Self::NonFinite => f.write_str("sample contains a non-finite value"),
        }
    }
}

impl std::error::Error for SampleRejected {}

impl From<SampleRejected> for Error {
    fn from(e: SampleRejected) -> Self {
        Error::invalid("sample", e.to_string())
    }
}

/// Controller memory carried from one sample to the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEngineState<T: Scalar = f64> {
    pub state: GaitState,
    /// Last emitted phase.
    pub s: T,
    /// Phase latched at the last S2→S3 event (or the stance fraction `c`
    /// when swing was entered directly at `s = 0`).
    pub s_m: T,
    /// Thigh angle latched with `s_m`.
    pub q_hm_deg: T,
    /// Whether `s_m`/`q_hm_deg` have been latched since the last reset.
    pub anchored: bool,
    pub qdot_h_est: T,
    q_h_prev: T,
    t_prev: f64,
    has_prev: bool,
}

#[derive(Debug, Clone, Copy)]
struct Params<T> {
    q_h0: T,
    q_hmin: T,
    c: T,
    q_po: T,
    q_h51: T,
    q_h41: T,
    tau: T,
    nominal_dt: f64,
}

/// The phase-variable state machine.
///
/// `step` does a fixed amount of arithmetic per sample and never allocates:
/// both phase equations, the rate filter and every guard are evaluated on
/// every call and the results are selected afterwards.
#[derive(Debug, Clone)]
pub struct PhaseEngine<T: Scalar = f64> {
    cfg: PhaseConfig,
    p: Params<T>,
    st: PhaseEngineState<T>,
    last_transition: Option<TransitionEvent>,
}

impl PhaseEngine<f64> {
    pub fn new(cfg: PhaseConfig) -> crate::Result<Self> {
        Self::with_scalar(cfg)
    }
}

impl<T: Scalar> PhaseEngine<T> {
    pub fn with_scalar(cfg: PhaseConfig) -> crate::Result<Self> {
        cfg.validate()?;
        let p = Params {
            q_h0: T::from_f64(cfg.q_h0_deg),
            q_hmin: T::from_f64(cfg.q_hmin_deg),
            c: T::from_f64(cfg.c),
            q_po: T::from_f64(cfg.q_po_deg),
            q_h51: T::from_f64(cfg.q_h51_deg),
            q_h41: T::from_f64(cfg.q_h41_deg),
            tau: T::from_f64(time_constant(cfg.vel_filter_cutoff_hz)),
            nominal_dt: cfg.sample_period_s(),
        };
        let mut engine = Self {
            cfg,
            p,
            st: Self::initial_state(&p),
            last_transition: None,
        };
        engine.reset();
        Ok(engine)
    }

    fn initial_state(p: &Params<T>) -> PhaseEngineState<T> {
        PhaseEngineState {
            state: GaitState::S1,
            s: T::zero(),
            s_m: p.c,
            q_hm_deg: p.q_hmin,
            anchored: false,
            qdot_h_est: T::zero(),
            q_h_prev: T::zero(),
            t_prev: 0.0,
            has_prev: false,
        }
    }

    pub fn config(&self) -> &PhaseConfig {
        &self.cfg
    }

    pub fn state(&self) -> &PhaseEngineState<T> {
        &self.st
    }

    pub fn gait_state(&self) -> GaitState {
        self.st.state
    }

    pub fn phase(&self) -> T {
        self.st.s
    }

    pub fn last_transition(&self) -> Option<TransitionEvent> {
        self.last_transition
    }

    /// Back to S1 with `s = 0` and all memories cleared (start-up with the
    /// leg vertical).
    pub fn reset(&mut self) {
        self.st = Self::initial_state(&self.p);
        self.last_transition = None;
    }

    /// Processes one sample. Rejected samples leave the engine untouched.
    // `!(a < b)` instead of `a >= b` keeps every guard a single comparison.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn step(&mut self, sample: &SensorSample) -> Result<StepOutput<T>, SampleRejected> {
        if !sample.t.is_finite() || !sample.q_h_deg.is_finite() {
            return Err(SampleRejected::NonFinite);
        }
        if self.st.has_prev && sample.t <= self.st.t_prev {
            return Err(SampleRejected::NonIncreasingTime);
        }

        let p = self.p;
        let old = self.st;
        let q = T::from_f64(sample.q_h_deg);
        let fc = sample.fc;

        // The first sample differentiates against itself over the nominal period.
        let dt = T::from_f64(if old.has_prev {
            sample.t - old.t_prev
        } else {
            p.nominal_dt
        });
        let q_prev = if old.has_prev { old.q_h_prev } else { q };
        let rate = lowpass_derivative(old.qdot_h_est, q, q_prev, dt, p.tau);
        let rate_crossed = !(rate < T::zero()) & (old.qdot_h_est < T::zero());

        let s_stance = stance_equation(p.q_h0, p.q_hmin, p.c, q);

        // Guards, all evaluated. Non-short-circuiting `&` keeps the work fixed.
        let at_zero_phase = !(s_stance > T::zero());
        let lift_at_zero = !fc & at_zero_phase;
        let above_41 = !(q < p.q_h41);
        let touchdown_forward = fc & above_41;
        let touchdown_backward = fc & !above_41;
        let below_51 = q < p.q_h51;
        let reached_pushoff = fc & !(p.q_po < q);

        // Priority: contact loss, then contact gain, then intra-stance.
        let next = match old.state {
            GaitState::S1 if lift_at_zero => GaitState::S4,
            GaitState::S1 if reached_pushoff => GaitState::S2,
            GaitState::S2 if rate_crossed => GaitState::S3,
            GaitState::S3 if !fc => GaitState::S4,
            GaitState::S4 if touchdown_forward => GaitState::S1,
            GaitState::S4 if touchdown_backward => GaitState::S5,
            GaitState::S5 if lift_at_zero => GaitState::S4,
            GaitState::S5 if below_51 => GaitState::S1,
            unchanged => unchanged,
        };

        let latch_pushoff = old.state == GaitState::S2 && next == GaitState::S3;
        let latch_direct =
            matches!(old.state, GaitState::S1 | GaitState::S5) && next == GaitState::S4;
        let s_m = if latch_pushoff {
            s_stance
        } else if latch_direct {
            p.c
        } else {
            old.s_m
        };
        let q_hm = if latch_pushoff {
            q
        } else if latch_direct {
            p.q_hmin
        } else {
            old.q_hm_deg
        };

        let s_swing = swing_equation(p.q_h0, s_m, q_hm, q);
        let s_swing_filtered = max(s_swing, old.s);
        let in_s3 = old.state == GaitState::S3;

        let s_old_eq = if old.state.uses_swing_equation() {
            if in_s3 {
                s_swing_filtered
            } else {
                s_swing
            }
        } else {
            s_stance
        };
        let s_new = if next.uses_swing_equation() {
            if in_s3 && next == GaitState::S3 {
                s_swing_filtered
            } else {
                s_swing
            }
        } else {
            s_stance
        };

        let transition = (next != old.state).then(|| TransitionEvent {
            t: sample.t,
            from: old.state,
            to: next,
            s_before: s_old_eq.to_f64(),
            s_after: s_new.to_f64(),
        });

        self.st = PhaseEngineState {
            state: next,
            s: s_new,
            s_m,
            q_hm_deg: q_hm,
            anchored: old.anchored | latch_pushoff | latch_direct,
            qdot_h_est: rate,
            q_h_prev: q,
            t_prev: sample.t,
            has_prev: true,
        };
        if transition.is_some() {
            self.last_transition = transition;
        }
        Ok(StepOutput {
            s: s_new,
            state: next,
            transition,
        })
    }
}
