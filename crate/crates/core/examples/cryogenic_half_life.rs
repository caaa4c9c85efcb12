//! Pure-dephasing coherence half-life from room temperature down to 10 mK,
//! with a propagated check at 100 mK.

use std::f64::consts::FRAC_PI_2;

use exciton_dimer::analysis::{self, coherence_half_life_analytic};
use exciton_dimer::{
    build_model, propagate, Basis, BathParameters, DensityMatrix, DimerParameters, ModelOptions,
    Tolerances,
};

fn main() -> exciton_dimer::Result<()> {
    let dimer = DimerParameters::venus_homodimer();
    let bath = BathParameters::venus();

    let temps = analysis::log_space(0.01, 300.0, 10);
    let sweep = analysis::temperature_sweep(&bath, &temps, &dimer)?;
    println!(
        "{:>10} {:>14} {:>14}  validity",
        "T_K", "gamma_phi/fs", "half_life_fs"
    );
    for pt in &sweep.points {
        println!(
            "{:>10.4} {:>14.6e} {:>14.6e}  {}",
            pt.value,
            pt.gamma_phi,
            pt.half_life,
            pt.validity.as_str()
        );
    }

    let cold = bath.with_temperature(0.1)?;
    let options = ModelOptions {
        dephasing_basis: Basis::Energy,
        include_thermal: false,
        ..ModelOptions::default()
    };
    let model = build_model(&dimer, &cold, options)?;
    let grid: Vec<f64> = (0..=3000).map(|i| i as f64 * 2.0).collect();
    let traj = propagate(
        &model,
        &DensityMatrix::site_superposition(FRAC_PI_2),
        &grid,
        Tolerances::default(),
    )?;
    let measured = analysis::coherence_half_life_measured(&traj, Basis::Energy)?;
    println!(
        "100 mK: analytic {:.2} fs, propagated {:.2} fs",
        coherence_half_life_analytic(&cold),
        measured
    );
    Ok(())
}
