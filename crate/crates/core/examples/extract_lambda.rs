//! Reorganization energy needed for a given coherence lifetime T2.

use exciton_dimer::bath::{self, BathParameters};
use exciton_dimer::units;

fn main() -> exciton_dimer::Result<()> {
    let gamma_c = 0.01;
    for t2_fs in [100.0, 1000.0, 10000.0] {
        let lambda = bath::extract_lambda(t2_fs, gamma_c, 293.0)?;
        let check = bath::pure_dephasing_rate(&BathParameters::new(lambda, gamma_c, 293.0)?);
        println!(
            "T2 = {t2_fs:>7} fs -> lambda = {lambda:.6e} meV ({:.5} cm^-1), 1/gamma_phi = {:.3} fs",
            units::wavenumber_from_mev(lambda),
            1.0 / check
        );
    }
    Ok(())
}
