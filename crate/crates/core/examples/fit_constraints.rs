//! Fit knee and ankle Fourier constraints to the synthetic reference stride
//! and compare the fitted curve with the data between the nodes.

use phasegait::reference::{synthesize_reference, GaitLandmarks};

fn main() -> phasegait::Result<()> {
    let reference = synthesize_reference(&GaitLandmarks::normal_walking(), 100)?;
    let (knee, ankle) = reference.fit_constraints()?;

    println!("knee: rho_0 = {:.3}, {} harmonics", knee.rho()[0], knee.psi().len() + 1);
    println!("ankle: rho_0 = {:.3}", ankle.rho()[0]);
    println!("{:>6} {:>10} {:>10}", "s", "knee_ref", "knee_fit");
    for k in 0..=10 {
        let s = k as f64 / 10.0;
        println!("{s:>6.2} {:>10.3} {:>10.3}", reference.knee_at(s), knee.eval(s)?);
    }
    Ok(())
}
