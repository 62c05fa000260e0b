//! Write a noisy sensor stream to CSV, read it back as a replay scenario and
//! check the closed loop reproduces the in-memory run.

use phasegait::cli::SimulationPlan;
use phasegait::kv::KeyValues;
use phasegait::sim::{generate_scenario, write_stream_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("phasegait-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let stream_path = dir.join("stream.csv");

    let live = SimulationPlan::from_kv(&KeyValues::parse(
        "scenario=forward_walk\nn_strides=3\nnoise_deg=0.2\nfc_chatter=true\nseed=9\n",
    )?)?;
    let stream = generate_scenario(&live.scenario, &live.reference, &live.setup.phase)?;
    write_stream_csv(&stream, &stream_path)?;

    let replay = SimulationPlan::from_kv(&KeyValues::parse(&format!(
        "scenario=replay\nreplay={}\n",
        stream_path.display()
    ))?)?;
    let (a, b) = (live.run()?, replay.run()?);
    let worst = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| (x.q_knee_cmd - y.q_knee_cmd).abs())
        .fold(0.0, f64::max);
    println!("{} samples replayed from {}, max knee difference {worst:.2e} deg", b.len(), stream_path.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
