//! Extract phase landmarks from a reference stride and turn them into a
//! phase-engine configuration.

use phasegait::phase::PhaseConfig;
use phasegait::reference::{extract_landmarks, synthesize_reference, GaitLandmarks};

fn main() -> phasegait::Result<()> {
    let reference = synthesize_reference(&GaitLandmarks::normal_walking(), 200)?;
    let lm = extract_landmarks(&reference)?;
    print!("{}", lm.to_kv_string());

    let cfg = PhaseConfig::from_landmarks(&lm);
    cfg.validate()?;
    println!("\nengine config:\n{}", cfg.to_kv_string());
    Ok(())
}
