//! Drude-Lorentz bath quantities for the Venus parameters.

use exciton_dimer::bath;
use exciton_dimer::dimer;
use exciton_dimer::units::{self, HBAR};
use exciton_dimer::{BathParameters, DimerParameters};

fn main() -> exciton_dimer::Result<()> {
    let b = BathParameters::venus();
    println!(
        "lambda = {:.4} meV ({:.1} cm^-1), tau_c = {} fs, T = {} K",
        b.lambda_reorg,
        units::wavenumber_from_mev(b.lambda_reorg),
        b.correlation_time(),
        b.temperature
    );
    println!("k_B T / (hbar gamma_c) = {:.3}", b.high_temperature_ratio());
    println!("gamma_phi = {:.6} /fs", bath::pure_dephasing_rate(&b));

    println!("{:>8} {:>12} {:>14}", "t_fs", "g(t)", "C(t) fs^-2");
    for t in [0.0, 10.0, 50.0, 100.0, 300.0, 1000.0] {
        println!(
            "{t:>8.0} {:>12.5} {:>14.6e}",
            bath::lineshape(t, &b)?,
            bath::correlation_function(t, &b)?
        );
    }

    let s = dimer::diagonalize(&DimerParameters::venus_homodimer());
    let omega = s.splitting / HBAR;
    println!("J(omega_0) = {:.4} meV", bath::spectral_density(omega, &b));
    let rates = bath::thermal_rates(&b, &s)?;
    println!(
        "gamma_down = {:.5e} /fs, gamma_up = {:.5e} /fs, P_eq = {:.4}",
        rates.gamma_down,
        rates.gamma_up,
        rates.equilibrium_lower_population()
    );
    Ok(())
}
