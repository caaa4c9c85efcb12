//! Open-system dynamics of a two-chromophore excitonic dimer.
//!
//! The reduced density matrix of the single-exciton manifold is propagated
//! under a Lindblad master equation whose rates are derived from a
//! Drude-Lorentz bath in its high-temperature limit:
//!
//! ```text
//! dρ/dt = -(i/ħ)[H, ρ] + γ_φ D[σ_z] ρ + γ↓ D[|+⟩⟨-|] ρ + γ↑ D[|-⟩⟨+|] ρ
//! ```
//!
//! Internal units are meV for energies, fs for times and K for
//! temperatures; every rate is in fs⁻¹.
//!
//! Module map:
//!
//! - [`units`]: physical constants and unit conversions
//! - [`dimer`]: site Hamiltonian, exciton structure, basis transforms
//! - [`bath`]: spectral density, lineshape, dephasing and transfer rates
//! - [`dynamics`]: Lindblad model assembly, propagation, steady states
//! - [`analysis`]: coherence half-lives, temperature sweeps, figure datasets
//! - [`cli`]: JSON scenario configs, CSV output and the command runner

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bath;
pub mod cli;
pub mod dimer;
pub mod dynamics;
mod error;
pub mod units;

pub use error::{Error, Result};

pub use bath::{BathParameters, RateSet};
pub use dimer::{DimerParameters, ExcitonLabel, ExcitonStructure};
pub use dynamics::{
    build_model, propagate, steady_state, Basis, DensityMatrix, InitialState, LindbladModel,
    ModelOptions, Tolerances, Trajectory,
};
