//! Run every built-in scenario through the closed loop and report state
//! occupancy. Pass a scenario name to run just that one.

use phasegait::cli::SimulationPlan;
use phasegait::kv::KeyValues;
use phasegait::phase::GaitState;
use phasegait::sim::ScenarioKind;

fn main() -> phasegait::Result<()> {
    let only = std::env::args().nth(1);
    for kind in ScenarioKind::ALL {
        if kind == ScenarioKind::Replay || only.as_deref().is_some_and(|n| n != kind.name()) {
            continue;
        }
        let plan = SimulationPlan::from_kv(&KeyValues::parse(&format!("scenario={kind}\nn_strides=4\n"))?)?;
        let trace = plan.run()?;
        let occupancy: Vec<String> = [GaitState::S1, GaitState::S2, GaitState::S3, GaitState::S4, GaitState::S5]
            .iter()
            .map(|&st| format!("{st:?}={:.2}", trace.occupancy(st) as f64 / trace.len() as f64))
            .collect();
        println!("{kind:<14} {} samples  {}", trace.len(), occupancy.join(" "));
    }
    Ok(())
}
