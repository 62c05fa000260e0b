//! Score a simulated forward walk: stride count, command tracking, toe
//! clearance over an 85 mm obstacle, plus a step-length symmetry table.

use phasegait::cli::SimulationPlan;
use phasegait::kv::KeyValues;
use phasegait::metrics::{
    pearson, segment_strides, symmetry_index, toe_clearance, MetricReport, SegmentOptions, SymmetryRow,
};

fn main() -> phasegait::Result<()> {
    let plan = SimulationPlan::from_kv(&KeyValues::parse(
        "scenario=obstacle_step\nn_strides=5\nplant=first_order_lag\n",
    )?)?;
    let trace = plan.run()?;

    let mut report = MetricReport {
        n_strides: Some(segment_strides(&trace.contact(), SegmentOptions::simulated())?.len()),
        ..MetricReport::default()
    };
    report.pearson.push((
        "knee_cmd_vs_plant".into(),
        pearson(&trace.column(|r| r.q_knee_cmd), &trace.column(|r| r.q_knee_plant))?,
    ));
    let swing: Vec<bool> = trace.contact().iter().map(|c| !c).collect();
    report.toe = Some(toe_clearance(&trace.column(|r| r.toe_z), &swing, 0.085)?);
    report.obstacle_height = Some(0.085);
    for (variable, p, s) in [("step_length_mm", 281.0, 498.0), ("stance_time_ms", 640.0, 610.0)] {
        report.symmetry.push(SymmetryRow {
            variable: variable.into(),
            prosth: p,
            sound: s,
            si: symmetry_index(p, s)?,
        });
    }
    print!("{}", report.to_text());
    Ok(())
}
