//! Frenkel exciton dimer: site Hamiltonian and its exciton eigenstates.
//!
//! In the site basis {|1⟩, |2⟩} the Hamiltonian is
//!
//! ```text
//! H = ε̄·I + [ -Δ/2   J  ]
//!           [   J   Δ/2 ]
//! ```
//!
//! With the mixing angle θ = ½·atan2(2J, Δ) the eigenstates are
//! |+⟩ = (cos θ, −sin θ) with E₊ = ε̄ − ΔE/2 and |−⟩ = (sin θ, cos θ) with
//! E₋ = ε̄ + ΔE/2, where ΔE = √(Δ² + 4J²). For the homodimer with J < 0 this
//! gives |+⟩ = (|1⟩ + |2⟩)/√2, the symmetric bright state lying lower.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::units::HBAR;
use crate::{Error, Result};

/// Coupling, site-energy difference and mean site energy, all in meV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimerParameters {
    pub coupling: f64,
    pub delta: f64,
    pub epsilon_bar: f64,
}

impl DimerParameters {
    pub fn new(coupling: f64, delta: f64, epsilon_bar: f64) -> Result<Self> {
        if !coupling.is_finite() {
            return Err(Error::invalid("dimer.J_mev", "must be finite"));
        }
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::invalid("dimer.delta_mev", "must be finite and >= 0"));
        }
        if !epsilon_bar.is_finite() {
            return Err(Error::invalid("dimer.epsilon_bar_mev", "must be finite"));
        }
        Ok(DimerParameters {
            coupling,
            delta,
            epsilon_bar,
        })
    }

    /// Venus-like homodimer: J = −34 meV, Δ = 0.
    pub fn venus_homodimer() -> Self {
        DimerParameters {
            coupling: -34.0,
            delta: 0.0,
            epsilon_bar: 0.0,
        }
    }

    /// Stokes-shifted Venus-like dimer: J = −34 meV, Δ = 59.28 meV.
    pub fn venus_stokes_shifted() -> Self {
        DimerParameters {
            coupling: -34.0,
            delta: 59.28,
            epsilon_bar: 0.0,
        }
    }

    /// Site-basis Hamiltonian in meV.
    pub fn hamiltonian(&self) -> Matrix2<f64> {
        let half = 0.5 * self.delta;
        Matrix2::new(
            self.epsilon_bar - half,
            self.coupling,
            self.coupling,
            self.epsilon_bar + half,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExcitonLabel {
    Plus,
    Minus,
}

/// Diagonalized dimer. `plus` is always the lower exciton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitonStructure {
    pub splitting: f64,
    pub energy_plus: f64,
    pub energy_minus: f64,
    pub mixing_angle: f64,
    pub eigenvector_plus: Vector2<f64>,
    pub eigenvector_minus: Vector2<f64>,
    pub bright_state_label: ExcitonLabel,
}

impl ExcitonStructure {
    /// Orthogonal matrix whose columns are |+⟩ and |−⟩ in site coordinates.
    pub fn basis_matrix(&self) -> Matrix2<f64> {
        Matrix2::from_columns(&[self.eigenvector_plus, self.eigenvector_minus])
    }

    pub fn eigenvector(&self, label: ExcitonLabel) -> Vector2<f64> {
        match label {
            ExcitonLabel::Plus => self.eigenvector_plus,
            ExcitonLabel::Minus => self.eigenvector_minus,
        }
    }

    pub fn bright_state(&self) -> Vector2<f64> {
        self.eigenvector(self.bright_state_label)
    }

    pub fn dark_state(&self) -> Vector2<f64> {
        self.eigenvector(match self.bright_state_label {
            ExcitonLabel::Plus => ExcitonLabel::Minus,
            ExcitonLabel::Minus => ExcitonLabel::Plus,
        })
    }

    /// Vᵀ m V: re-express a site-basis operator in the {|+⟩, |−⟩} basis.
    pub fn to_energy_basis(&self, m: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let v = self.basis_matrix().map(Complex64::from);
        v.transpose() * m * v
    }

    /// V m Vᵀ: inverse of [`ExcitonStructure::to_energy_basis`].
    pub fn to_site_basis(&self, m: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let v = self.basis_matrix().map(Complex64::from);
        v * m * v.transpose()
    }
}

pub fn exciton_splitting(p: &DimerParameters) -> f64 {
    p.delta.hypot(2.0 * p.coupling)
}

pub fn diagonalize(p: &DimerParameters) -> ExcitonStructure {
    let splitting = exciton_splitting(p);
    let theta = 0.5 * (2.0 * p.coupling).atan2(p.delta);
    let (s, c) = theta.sin_cos();
    ExcitonStructure {
        splitting,
        energy_plus: p.epsilon_bar - 0.5 * splitting,
        energy_minus: p.epsilon_bar + 0.5 * splitting,
        mixing_angle: theta,
        eigenvector_plus: Vector2::new(c, -s),
        eigenvector_minus: Vector2::new(s, c),
        // parallel site dipoles: the symmetric combination carries the
        // oscillator strength, and it is the lower state only for J < 0
        bright_state_label: if p.coupling > 0.0 {
            ExcitonLabel::Minus
        } else {
            ExcitonLabel::Plus
        },
    }
}

/// Coherent beat period 2πħ/ΔE in fs.
pub fn beat_period(p: &DimerParameters) -> Result<f64> {
    let splitting = exciton_splitting(p);
    if splitting == 0.0 {
        return Err(Error::Degenerate {
            splitting_mev: splitting,
            context: "no coherent beating",
        });
    }
    Ok(2.0 * PI * HBAR / splitting)
}

pub fn to_energy_basis(m: &Matrix2<Complex64>, s: &ExcitonStructure) -> Matrix2<Complex64> {
    s.to_energy_basis(m)
}

pub fn to_site_basis(m: &Matrix2<Complex64>, s: &ExcitonStructure) -> Matrix2<Complex64> {
    s.to_site_basis(m)
}
