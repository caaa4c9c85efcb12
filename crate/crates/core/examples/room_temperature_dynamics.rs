//! Venus homodimer at 293 K: coherence loss in the site basis and
//! equilibration of a bright-state start.

use std::f64::consts::FRAC_PI_2;

use exciton_dimer::analysis;
use exciton_dimer::{
    build_model, propagate, Basis, BathParameters, DensityMatrix, DimerParameters, InitialState,
    ModelOptions, Tolerances,
};

fn main() -> exciton_dimer::Result<()> {
    let dimer = DimerParameters::venus_homodimer();
    let bath = BathParameters::venus();
    let model = build_model(&dimer, &bath, ModelOptions::default())?;
    let grid: Vec<f64> = (0..=200).map(|i| i as f64 * 0.5).collect();

    let superposition = DensityMatrix::site_superposition(FRAC_PI_2);
    let traj = propagate(&model, &superposition, &grid, Tolerances::default())?;
    let bright = InitialState::Bright.density_matrix(model.exciton_structure())?;
    let relax = propagate(&model, &bright, &grid, Tolerances::default())?;

    println!("{:>8} {:>10} {:>10}", "t_fs", "|rho12|", "rho_pp");
    for i in (0..grid.len()).step_by(20) {
        println!(
            "{:>8.1} {:>10.5} {:>10.5}",
            grid[i], traj.site_coherence_abs[i], relax.energy_pop_plus[i]
        );
    }

    let measured = analysis::coherence_half_life_measured(&traj, Basis::Site)?;
    let analytic = analysis::coherence_half_life_analytic(&bath);
    println!("envelope half-life {measured:.3} fs (pure dephasing alone: {analytic:.3} fs)");
    Ok(())
}
