//! Track the knee constraint with the PD controller against a measured
//! angle that lags by a constant offset, and print the resulting torques.

use phasegait::control::{ControllerGains, JointController};
use phasegait::reference::{synthesize_reference, GaitLandmarks};

fn main() -> phasegait::Result<()> {
    let reference = synthesize_reference(&GaitLandmarks::normal_walking(), 100)?;
    let (knee, ankle) = reference.fit_constraints()?;
    let mut ctl = JointController::new(knee, ankle, ControllerGains::default(), 10.0)?;

    println!("{:>5} {:>9} {:>9} {:>9}", "s", "knee_des", "e", "tau_nm");
    for k in 0..=20 {
        let s = k as f64 / 20.0;
        let (qk, qa) = ctl.desired(s)?;
        let (knee_cmd, _) = ctl.step(k as f64 * 0.05, s, qk - 2.0, qa)?;
        println!("{s:>5.2} {qk:>9.3} {:>9.3} {:>9.3}", knee_cmd.e_deg, knee_cmd.tau_nm);
    }
    Ok(())
}
