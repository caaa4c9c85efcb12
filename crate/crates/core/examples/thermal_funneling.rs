//! Stokes-shifted dimer: an equal exciton mixture relaxes towards the
//! lower (bright) exciton and settles at the steady state.

use exciton_dimer::{
    build_model, propagate, steady_state, Basis, BathParameters, DimerParameters, InitialState,
    ModelOptions, Tolerances,
};

fn main() -> exciton_dimer::Result<()> {
    let dimer = DimerParameters::venus_stokes_shifted();
    let bath = BathParameters::venus();
    let options = ModelOptions {
        dephasing_basis: Basis::Energy,
        ..ModelOptions::default()
    };
    let model = build_model(&dimer, &bath, options)?;
    let s = model.exciton_structure();
    println!(
        "splitting {:.3} meV, mixing angle {:.4} rad, bright state {:?}",
        s.splitting, s.mixing_angle, s.bright_state_label
    );
    let (down, up) = (model.rate("downhill"), model.rate("uphill"));
    println!("gamma_down {down:.4e} /fs, gamma_up {up:.4e} /fs");

    let steady = steady_state(&model)?.in_energy_basis(s)[(0, 0)].re;
    println!("steady-state bright population {steady:.5}");

    let rho0 = InitialState::ExcitonMixture {
        bright_fraction: 0.5,
    }
    .density_matrix(s)?;
    let t_end = 20.0 / (down + up);
    let grid: Vec<f64> = (0..=10).map(|i| t_end * i as f64 / 10.0).collect();
    let traj = propagate(&model, &rho0, &grid, Tolerances::default())?;
    for (t, p) in traj.times.iter().zip(&traj.energy_pop_plus) {
        println!("{t:>9.1} fs  rho_pp = {p:.6}");
    }
    Ok(())
}
