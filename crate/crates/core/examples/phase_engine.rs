//! Drive the phase engine with one stride of thigh angle and contact, and
//! print every state transition with the phase on either side of it.

use phasegait::phase::{PhaseConfig, PhaseEngine, SensorSample};
use phasegait::reference::{synthesize_reference, GaitLandmarks};

fn main() -> phasegait::Result<()> {
    let reference = synthesize_reference(&GaitLandmarks::normal_walking(), 200)?;
    let cfg = PhaseConfig::default();
    let mut engine = PhaseEngine::new(cfg)?;
    let dt = cfg.sample_period_s();

    // Two strides at 1 Hz; contact for the first 63% of each.
    for k in 0..2000 {
        let t = k as f64 * dt;
        let u = t.fract();
        let sample = SensorSample::new(t, reference.thigh_at(u), u < 0.63);
        let out = engine.step(&sample).expect("samples are finite and increasing");
        if let Some(ev) = out.transition {
            println!(
                "t={t:.3} {:?}->{:?} q_h={:6.2} s: {:.3} -> {:.3}",
                ev.from, ev.to, sample.q_h_deg, ev.s_before, ev.s_after
            );
        }
    }
    Ok(())
}
