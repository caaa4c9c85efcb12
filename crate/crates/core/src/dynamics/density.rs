use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dimer::ExcitonStructure;
use crate::{Error, Result};

/// Thresholds a state must meet on construction.
pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-9;

/// 2×2 density matrix of the single-exciton manifold, site basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix2<Complex64>);

impl DensityMatrix {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        check_state(&m, HERMITICITY_TOL, TRACE_TOL)
            .map_err(|reason| Error::invalid("density matrix", reason))?;
        Ok(DensityMatrix(m))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix2<Complex64>) -> Self {
        DensityMatrix(m)
    }

    /// |ψ⟩⟨ψ| for a normalized amplitude vector.
    pub fn pure(psi: Vector2<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("state vector", format!("norm {norm} != 1")));
        }
        Self::new(psi * psi.adjoint())
    }

    /// (|1⟩ + e^{iφ}|2⟩)/√2.
    pub fn site_superposition(phase: f64) -> Self {
        let psi = Vector2::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::from_polar(FRAC_1_SQRT_2, phase),
        );
        DensityMatrix(psi * psi.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Matrix2::identity() * Complex64::new(0.5, 0.0))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix2<Complex64> {
        self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.0)
    }

    /// Entries in the exciton basis, ordered (+, −).
    pub fn in_energy_basis(&self, s: &ExcitonStructure) -> Matrix2<Complex64> {
        s.to_energy_basis(&self.0)
    }

    pub fn max_abs_difference(&self, other: &DensityMatrix) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn min_eigenvalue(m: &Matrix2<Complex64>) -> f64 {
    let mean = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let half_gap = 0.5 * (m[(0, 0)].re - m[(1, 1)].re);
    let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    mean - half_gap.hypot(off.norm())
}

pub(crate) fn check_state(
    m: &Matrix2<Complex64>,
    hermiticity_tol: f64,
    trace_tol: f64,
) -> std::result::Result<(), String> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err("non-finite entry".into());
    }
    let anti = (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if anti > hermiticity_tol {
        return Err(format!("not Hermitian (max |ρ - ρ†| = {anti:e})"));
    }
    let trace = m.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > trace_tol {
        return Err(format!("trace {trace} differs from 1"));
    }
    let lowest = min_eigenvalue(m);
    if lowest < -POSITIVITY_TOL {
        return Err(format!("negative eigenvalue {lowest:e}"));
    }
    Ok(())
}

/// Preparations used by the room-temperature and relaxation scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    SiteSuperposition { phase: f64 },
    Bright,
    Dark,
    ExcitonMixture { bright_fraction: f64 },
}

impl InitialState {
    pub fn density_matrix(&self, s: &ExcitonStructure) -> Result<DensityMatrix> {
        let projector = |v: Vector2<f64>| {
            let v = v.map(Complex64::from);
            v * v.transpose()
        };
        match *self {
            InitialState::SiteSuperposition { phase } => {
                if !phase.is_finite() {
                    return Err(Error::invalid("initial_state.phase_rad", "must be finite"));
                }
                Ok(DensityMatrix::site_superposition(phase))
            }
            InitialState::Bright => DensityMatrix::new(projector(s.bright_state())),
            InitialState::Dark => DensityMatrix::new(projector(s.dark_state())),
            InitialState::ExcitonMixture { bright_fraction: w } => {
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::invalid(
                        "initial_state.bright_fraction",
                        "must be in [0, 1]",
                    ));
                }
                let bright = projector(s.bright_state()) * Complex64::from(w);
                let dark = projector(s.dark_state()) * Complex64::from(1.0 - w);
                DensityMatrix::new(bright + dark)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::{diagonalize, DimerParameters};
    use approx::assert_relative_eq;

    #[test]
    fn site_superposition_with_quarter_phase() {
        let rho = DensityMatrix::site_superposition(std::f64::consts::FRAC_PI_2);
        let m = rho.matrix();
        assert_relative_eq!(m[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(m[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(m[(0, 1)].norm(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(m[(0, 1)].im, -0.5, epsilon = 1e-15);
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn exciton_preparations() {
        let s = diagonalize(&DimerParameters::venus_homodimer());
        let bright = InitialState::Bright.density_matrix(&s).unwrap();
        let e = bright.in_energy_basis(&s);
        assert_relative_eq!(e[(0, 0)].re, 1.0, epsilon = 1e-14);
        // the bright state of a homodimer is a real site superposition
        assert_relative_eq!(bright.matrix()[(0, 1)].re, 0.5, epsilon = 1e-14);

        let mix = InitialState::ExcitonMixture {
            bright_fraction: 0.5,
        }
        .density_matrix(&s)
        .unwrap();
        assert!(mix.max_abs_difference(&DensityMatrix::maximally_mixed()) < 1e-15);
        assert!(InitialState::ExcitonMixture {
            bright_fraction: 1.5
        }
        .density_matrix(&s)
        .is_err());
    }

    #[test]
    fn rejects_invalid_states() {
        let c = Complex64::from;
        assert!(DensityMatrix::new(Matrix2::new(c(0.6), c(0.0), c(0.0), c(0.6))).is_err());
        assert!(DensityMatrix::new(Matrix2::new(c(0.5), c(0.1), c(0.2), c(0.5))).is_err());
        assert!(DensityMatrix::new(Matrix2::new(c(1.1), c(0.0), c(0.0), c(-0.1))).is_err());
        assert!(DensityMatrix::new(Matrix2::new(c(0.5), c(0.6), c(0.6), c(0.5))).is_err());
        assert!(DensityMatrix::new(Matrix2::new(c(0.5), c(0.5), c(0.5), c(0.5))).is_ok());
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&InitialState::SiteSuperposition { phase: 1.0 }).unwrap();
        assert_eq!(json, r#"{"kind":"site_superposition","phase":1.0}"#);
    }
}
