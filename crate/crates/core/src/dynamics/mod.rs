//! Lindblad generator assembly, propagation and steady states.
//!
//! The dissipator of a collapse operator L with rate γ is
//! γ(LρL† − ½{L†L, ρ}). With L = σ_z this decays coherences as e^{−2γt}.

mod density;
pub mod integrator;

use nalgebra::{Matrix2, Matrix4, OMatrix, OVector, Vector2, U4, U5};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::{self, BathParameters, RateSet};
use crate::dimer::{self, DimerParameters, ExcitonStructure};
use crate::units::HBAR;
use crate::{Error, Result};

pub use density::{DensityMatrix, InitialState, HERMITICITY_TOL, POSITIVITY_TOL, TRACE_TOL};
use integrator::Dopri5;

type C = Complex64;

/// Singular values of the Liouvillian below this fraction of the largest
/// one are counted as null directions.
const NULL_SPACE_RTOL: f64 = 1e-12;
const STEADY_STATE_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Site,
    Energy,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::Site => "site",
            Basis::Energy => "energy",
        }
    }
}

/// A collapse operator (site-basis matrix) and its rate in fs⁻¹.
#[derive(Debug, Clone, PartialEq)]
pub struct CollapseTerm {
    pub label: &'static str,
    pub operator: Matrix2<C>,
    pub rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelOptions {
    pub dephasing_basis: Basis,
    pub include_dephasing: bool,
    pub include_thermal: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            dephasing_basis: Basis::Site,
            include_dephasing: true,
            include_thermal: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LindbladModel {
    hamiltonian: Matrix2<f64>,
    collapse_terms: Vec<CollapseTerm>,
    structure: ExcitonStructure,
    /// dy/dt = M·y on the Hermitian coordinates of the site-basis ρ.
    real_generator: [[f64; 4]; 4],
}

impl LindbladModel {
    pub fn new(p: &DimerParameters, collapse_terms: Vec<CollapseTerm>) -> Result<Self> {
        for term in &collapse_terms {
            if !term.rate.is_finite() || term.rate < 0.0 {
                return Err(Error::invalid(
                    format!("rate of `{}`", term.label),
                    "must be finite and >= 0",
                ));
            }
        }
        let mut model = LindbladModel {
            hamiltonian: p.hamiltonian(),
            collapse_terms,
            structure: dimer::diagonalize(p),
            real_generator: [[0.0; 4]; 4],
        };
        // ε̄ only contributes a global phase
        let shifted = model.hamiltonian - Matrix2::identity() * p.epsilon_bar;
        for j in 0..4 {
            let mut unit = [0.0; 4];
            unit[j] = 1.0;
            let column = to_real(&model.apply(&shifted, &from_real(&unit)));
            for (i, v) in column.iter().enumerate() {
                model.real_generator[i][j] = *v;
            }
        }
        debug_assert!(model.trace_defect() < 1e-10);
        Ok(model)
    }

    pub fn hamiltonian(&self) -> &Matrix2<f64> {
        &self.hamiltonian
    }

    pub fn collapse_terms(&self) -> &[CollapseTerm] {
        &self.collapse_terms
    }

    pub fn exciton_structure(&self) -> &ExcitonStructure {
        &self.structure
    }

    /// Rate of the first collapse term with `label`, or zero if absent.
    pub fn rate(&self, label: &str) -> f64 {
        self.collapse_terms
            .iter()
            .find(|t| t.label == label)
            .map_or(0.0, |t| t.rate)
    }

    /// dρ/dt for an arbitrary 2×2 operator.
    pub fn generator(&self, rho: &Matrix2<C>) -> Matrix2<C> {
        self.apply(&self.hamiltonian, rho)
    }

    fn apply(&self, hamiltonian: &Matrix2<f64>, rho: &Matrix2<C>) -> Matrix2<C> {
        let h = hamiltonian.map(C::from);
        let mut out = (h * rho - rho * h) * C::new(0.0, -1.0 / HBAR);
        for term in &self.collapse_terms {
            if term.rate == 0.0 {
                continue;
            }
            let l = &term.operator;
            let ld = l.adjoint();
            let ldl = ld * l;
            let d = l * rho * ld - (ldl * rho + rho * ldl) * C::from(0.5);
            out += d * C::from(term.rate);
        }
        out
    }

    /// Superoperator acting on vec(ρ) = (ρ₁₁, ρ₁₂, ρ₂₁, ρ₂₂).
    pub fn liouvillian(&self) -> Matrix4<C> {
        let mut l = Matrix4::zeros();
        for k in 0..4 {
            let mut e = Matrix2::zeros();
            e[(k / 2, k % 2)] = C::from(1.0);
            let column = vectorize(&self.generator(&e));
            l.set_column(k, &column);
        }
        l
    }

    /// Largest |tr(L(X))| over a basis of Hermitian matrices X.
    pub fn trace_defect(&self) -> f64 {
        let o = C::from(0.0);
        let i = C::from(1.0);
        let basis = [
            Matrix2::new(i, o, o, o),
            Matrix2::new(o, o, o, i),
            Matrix2::new(o, i, i, o),
            Matrix2::new(o, C::new(0.0, -1.0), C::new(0.0, 1.0), o),
        ];
        basis
            .iter()
            .map(|x| self.generator(x).trace().norm())
            .fold(0.0, f64::max)
    }

    fn derivative(&self, y: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| {
            self.real_generator[i]
                .iter()
                .zip(y)
                .map(|(a, b)| a * b)
                .sum()
        })
    }
}

fn vectorize(m: &Matrix2<C>) -> OVector<C, U4> {
    OVector::<C, U4>::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

/// Hermitian coordinates (ρ₁₁, ρ₂₂, Re ρ₁₂, Im ρ₁₂); ρ₂₁ is implied.
fn to_real(m: &Matrix2<C>) -> [f64; 4] {
    [m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)].re, m[(0, 1)].im]
}

fn from_real(y: &[f64; 4]) -> Matrix2<C> {
    let c = C::new(y[2], y[3]);
    Matrix2::new(C::from(y[0]), c, c.conj(), C::from(y[1]))
}

fn outer(a: &Vector2<f64>, b: &Vector2<f64>) -> Matrix2<C> {
    (a * b.transpose()).map(C::from)
}

/// Builds the generator with dephasing (σ_z in `dephasing_basis`, rate γ_φ)
/// and thermal transfer between the excitons (|+⟩⟨−| at γ↓, |−⟩⟨+| at γ↑).
pub fn build_model(
    p: &DimerParameters,
    b: &BathParameters,
    options: ModelOptions,
) -> Result<LindbladModel> {
    let s = dimer::diagonalize(p);
    let mut terms = Vec::with_capacity(3);
    if options.include_dephasing {
        let sigma_z = match options.dephasing_basis {
            Basis::Site => Matrix2::new(1.0, 0.0, 0.0, -1.0).map(C::from),
            Basis::Energy => {
                outer(&s.eigenvector_plus, &s.eigenvector_plus)
                    - outer(&s.eigenvector_minus, &s.eigenvector_minus)
            }
        };
        terms.push(CollapseTerm {
            label: "dephasing",
            operator: sigma_z,
            rate: bath::pure_dephasing_rate(b),
        });
    }
    if options.include_thermal {
        let rates = bath::thermal_rates(b, &s)?;
        terms.push(CollapseTerm {
            label: "downhill",
            operator: outer(&s.eigenvector_plus, &s.eigenvector_minus),
            rate: rates.gamma_down,
        });
        terms.push(CollapseTerm {
            label: "uphill",
            operator: outer(&s.eigenvector_minus, &s.eigenvector_plus),
            rate: rates.gamma_up,
        });
    }
    LindbladModel::new(p, terms)
}

/// Rates a model with these options would carry; excluded channels are 0.
pub fn model_rates(
    p: &DimerParameters,
    b: &BathParameters,
    options: ModelOptions,
) -> Result<RateSet> {
    let mut rates = RateSet {
        gamma_phi: 0.0,
        gamma_down: 0.0,
        gamma_up: 0.0,
    };
    if options.include_dephasing {
        rates.gamma_phi = bath::pure_dephasing_rate(b);
    }
    if options.include_thermal {
        let thermal = bath::thermal_rates(b, &dimer::diagonalize(p))?;
        rates.gamma_down = thermal.gamma_down;
        rates.gamma_up = thermal.gamma_up;
    }
    Ok(rates)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rtol: 1e-9,
            atol: 1e-12,
        }
    }
}

/// Observables of a propagation in both bases, one entry per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub site_pop_1: Vec<f64>,
    pub site_pop_2: Vec<f64>,
    pub site_coherence_re: Vec<f64>,
    pub site_coherence_im: Vec<f64>,
    pub site_coherence_abs: Vec<f64>,
    pub energy_pop_plus: Vec<f64>,
    pub energy_pop_minus: Vec<f64>,
    pub energy_coherence_re: Vec<f64>,
    pub energy_coherence_im: Vec<f64>,
    pub energy_coherence_abs: Vec<f64>,
    /// Site-basis states.
    pub states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn from_states(times: Vec<f64>, states: Vec<DensityMatrix>, s: &ExcitonStructure) -> Self {
        let n = times.len();
        let mut traj = Trajectory {
            times,
            site_pop_1: Vec::with_capacity(n),
            site_pop_2: Vec::with_capacity(n),
            site_coherence_re: Vec::with_capacity(n),
            site_coherence_im: Vec::with_capacity(n),
            site_coherence_abs: Vec::with_capacity(n),
            energy_pop_plus: Vec::with_capacity(n),
            energy_pop_minus: Vec::with_capacity(n),
            energy_coherence_re: Vec::with_capacity(n),
            energy_coherence_im: Vec::with_capacity(n),
            energy_coherence_abs: Vec::with_capacity(n),
            states: Vec::with_capacity(n),
        };
        for rho in states {
            let m = rho.matrix();
            let e = rho.in_energy_basis(s);
            traj.site_pop_1.push(m[(0, 0)].re);
            traj.site_pop_2.push(m[(1, 1)].re);
            traj.site_coherence_re.push(m[(0, 1)].re);
            traj.site_coherence_im.push(m[(0, 1)].im);
            traj.site_coherence_abs.push(m[(0, 1)].norm());
            traj.energy_pop_plus.push(e[(0, 0)].re);
            traj.energy_pop_minus.push(e[(1, 1)].re);
            traj.energy_coherence_re.push(e[(0, 1)].re);
            traj.energy_coherence_im.push(e[(0, 1)].im);
            traj.energy_coherence_abs.push(e[(0, 1)].norm());
            traj.states.push(rho);
        }
        traj
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn coherence_abs(&self, basis: Basis) -> &[f64] {
        match basis {
            Basis::Site => &self.site_coherence_abs,
            Basis::Energy => &self.energy_coherence_abs,
        }
    }

    pub fn final_state(&self) -> Option<&DensityMatrix> {
        self.states.last()
    }
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    match t_grid.first() {
        None => return Err(Error::invalid("time grid", "must not be empty")),
        Some(&t0) if t0 != 0.0 => return Err(Error::invalid("time grid", "must start at 0")),
        _ => {}
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("time grid", "must be finite"));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("time grid", "must be strictly increasing"));
    }
    Ok(())
}

/// Integrates the master equation and reports observables exactly at the
/// requested times. Trace, Hermiticity and positivity are checked at every
/// output; a violation aborts with the offending time.
pub fn propagate(
    m: &LindbladModel,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    tolerances: Tolerances,
) -> Result<Trajectory> {
    validate_grid(t_grid)?;
    if !(tolerances.rtol > 0.0) || !(tolerances.atol > 0.0) {
        return Err(Error::invalid("solver", "rtol and atol must be > 0"));
    }
    let solver = Dopri5 {
        rtol: tolerances.rtol,
        atol: tolerances.atol,
        ..Dopri5::default()
    };
    let ys = solver
        .solve(|_, y| m.derivative(y), t_grid, to_real(rho0.matrix()))
        .map_err(|f| Error::Integration {
            time_fs: f.time,
            reason: f.reason,
        })?;

    let mut states = Vec::with_capacity(ys.len());
    for (t, y) in t_grid.iter().zip(&ys) {
        let rho = from_real(y);
        density::check_state(&rho, HERMITICITY_TOL, TRACE_TOL).map_err(|reason| {
            Error::InvariantViolation {
                time_fs: *t,
                reason,
            }
        })?;
        states.push(DensityMatrix::from_matrix_unchecked(rho));
    }
    Ok(Trajectory::from_states(
        t_grid.to_vec(),
        states,
        &m.structure,
    ))
}

/// Unique stationary state of the generator.
pub fn steady_state(m: &LindbladModel) -> Result<DensityMatrix> {
    let l = m.liouvillian();
    let svd = l.svd(false, false);
    let largest = svd.singular_values.max();
    let null_dim = svd
        .singular_values
        .iter()
        .filter(|&&s| s <= NULL_SPACE_RTOL * largest)
        .count();
    if null_dim != 1 {
        return Err(Error::NonUniqueSteadyState { null_dim });
    }

    // Solve in the energy basis with each row scaled to unit max norm: the
    // population rows carry only the thermal rates, which can sit many
    // decades below the coherent rows.
    let s = m.exciton_structure();
    let mut l_energy = Matrix4::<C>::zeros();
    for k in 0..4 {
        let mut e = Matrix2::zeros();
        e[(k / 2, k % 2)] = C::from(1.0);
        let image = s.to_energy_basis(&m.generator(&s.to_site_basis(&e)));
        l_energy.set_column(k, &vectorize(&image));
    }
    let mut system = OMatrix::<C, U5, U4>::zeros();
    for r in 0..4 {
        let scale = l_energy.row(r).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale > 0.0 {
            let row = l_energy.row(r) / C::from(scale);
            system.row_mut(r).copy_from(&row);
        }
    }
    system[(4, 0)] = C::from(1.0);
    system[(4, 3)] = C::from(1.0);
    let mut rhs = OVector::<C, U5>::zeros();
    rhs[4] = C::from(1.0);
    let v = system
        .svd(true, true)
        .solve(&rhs, 0.0)
        .map_err(|e| Error::Integration {
            time_fs: f64::INFINITY,
            reason: e.to_string(),
        })?;

    let raw = s.to_site_basis(&Matrix2::new(v[0], v[1], v[2], v[3]));
    let rho = (raw + raw.adjoint()) * C::from(0.5);
    let residual = (l * vectorize(&rho)).norm();
    if residual > STEADY_STATE_RESIDUAL {
        return Err(Error::SteadyStateResidual {
            residual,
            limit: STEADY_STATE_RESIDUAL,
        });
    }
    DensityMatrix::new(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::diagonalize;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn venus_model(options: ModelOptions) -> LindbladModel {
        build_model(
            &DimerParameters::venus_homodimer(),
            &BathParameters::venus(),
            options,
        )
        .unwrap()
    }

    fn linspace(t_max: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn venus_model_terms() {
        let m = venus_model(ModelOptions::default());
        let rates: Vec<f64> = m.collapse_terms().iter().map(|t| t.rate).collect();
        assert_eq!(rates.len(), 3);
        assert_relative_eq!(rates[0], 0.3902, max_relative = 1e-4);
        assert_relative_eq!(rates[1], 0.02093, max_relative = 1e-3);
        assert_relative_eq!(rates[2], 1.417e-3, max_relative = 1e-3);
        assert!(m.trace_defect() < 1e-14);
    }

    #[test]
    fn zero_reorganization_energy_is_dissipation_free() {
        let b = BathParameters::new(0.0, 0.01, 293.0).unwrap();
        let m = build_model(
            &DimerParameters::venus_homodimer(),
            &b,
            ModelOptions::default(),
        )
        .unwrap();
        assert!(m.collapse_terms().iter().all(|t| t.rate == 0.0));
    }

    #[test]
    fn hot_bath_equalizes_transfer_rates() {
        let b = BathParameters::new(1.0, 0.01, 1e9).unwrap();
        let m = build_model(
            &DimerParameters::venus_homodimer(),
            &b,
            ModelOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(m.rate("uphill") / m.rate("downhill"), 1.0, epsilon = 1e-5);
    }

    #[test]
    fn thermal_terms_need_a_splitting() {
        let p = DimerParameters::new(0.0, 0.0, 0.0).unwrap();
        let err = build_model(&p, &BathParameters::venus(), ModelOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
        let opts = ModelOptions {
            include_thermal: false,
            ..Default::default()
        };
        assert!(build_model(&p, &BathParameters::venus(), opts).is_ok());
    }

    #[test]
    fn liouvillian_matches_generator() {
        let m = venus_model(ModelOptions::default());
        let rho = DensityMatrix::site_superposition(0.3);
        let direct = vectorize(&m.generator(rho.matrix()));
        let via_super = m.liouvillian() * vectorize(rho.matrix());
        assert!((direct - via_super).norm() < 1e-15);
    }

    #[test]
    fn identity_evolution_without_hamiltonian_or_dissipation() {
        let p = DimerParameters::new(0.0, 0.0, 0.0).unwrap();
        let m = LindbladModel::new(&p, vec![]).unwrap();
        let rho0 = DensityMatrix::site_superposition(1.1);
        let traj = propagate(&m, &rho0, &linspace(100.0, 11), Tolerances::default()).unwrap();
        for rho in &traj.states {
            assert!(rho.max_abs_difference(&rho0) < 1e-15);
        }
    }

    #[test]
    fn pure_dephasing_closed_form() {
        let p = DimerParameters::new(0.0, 20.0, 0.0).unwrap();
        let opts = ModelOptions {
            include_thermal: false,
            ..Default::default()
        };
        let m = build_model(&p, &BathParameters::venus(), opts).unwrap();
        let gamma = m.rate("dephasing");
        let traj = propagate(
            &m,
            &DensityMatrix::site_superposition(FRAC_PI_2),
            &linspace(10.0, 101),
            Tolerances::default(),
        )
        .unwrap();
        for (i, t) in traj.times.iter().enumerate() {
            let expected = 0.5 * (-2.0 * gamma * t).exp();
            assert_relative_eq!(traj.site_coherence_abs[i], expected, max_relative = 1e-6);
            assert_relative_eq!(traj.site_pop_1[i], 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn thermal_relaxation_closed_form() {
        let opts = ModelOptions {
            include_dephasing: false,
            ..Default::default()
        };
        let m = venus_model(opts);
        let s = diagonalize(&DimerParameters::venus_homodimer());
        let rho0 = InitialState::Dark.density_matrix(&s).unwrap();
        let (down, up) = (m.rate("downhill"), m.rate("uphill"));
        let p_eq = down / (down + up);
        let traj = propagate(&m, &rho0, &linspace(300.0, 61), Tolerances::default()).unwrap();
        for (i, t) in traj.times.iter().enumerate().skip(1) {
            let expected = p_eq * (1.0 - (-(down + up) * t).exp());
            assert_relative_eq!(traj.energy_pop_plus[i], expected, max_relative = 1e-6);
        }
    }

    #[test]
    fn grid_validation() {
        let m = venus_model(ModelOptions::default());
        let rho0 = DensityMatrix::maximally_mixed();
        let tol = Tolerances::default();
        assert!(propagate(&m, &rho0, &[], tol).is_err());
        assert!(propagate(&m, &rho0, &[1.0, 2.0], tol).is_err());
        assert!(propagate(&m, &rho0, &[0.0, 2.0, 2.0], tol).is_err());
        let single = propagate(&m, &rho0, &[0.0], tol).unwrap();
        assert_eq!(single.len(), 1);
        assert!(propagate(
            &m,
            &rho0,
            &[0.0, 1.0],
            Tolerances {
                rtol: 0.0,
                atol: 1e-12
            }
        )
        .is_err());
    }

    #[test]
    fn boltzmann_steady_state() {
        let opts = ModelOptions {
            dephasing_basis: Basis::Energy,
            ..Default::default()
        };
        let p = DimerParameters::venus_stokes_shifted();
        let m = build_model(&p, &BathParameters::venus(), opts).unwrap();
        let rho = steady_state(&m).unwrap();
        let e = rho.in_energy_basis(m.exciton_structure());
        assert_relative_eq!(e[(0, 0)].re, 0.972_692_462_453_270_4, epsilon = 1e-9);
        assert!(e[(0, 1)].norm() < 1e-12);

        let homo = venus_model(ModelOptions {
            include_dephasing: false,
            ..Default::default()
        });
        let e = steady_state(&homo)
            .unwrap()
            .in_energy_basis(homo.exciton_structure());
        assert_relative_eq!(e[(0, 0)].re, 0.936_624_122_567_563_7, epsilon = 1e-9);
    }

    #[test]
    fn steady_state_with_slow_transfer() {
        // γ↓ ≈ 4e-6 fs⁻¹ against a 0.14 fs⁻¹ beat frequency
        let p = DimerParameters::new(-2.04, 93.3, 0.0).unwrap();
        let b = BathParameters::from_wavenumber(36.0, 100.0, 0.24).unwrap();
        let m = build_model(
            &p,
            &b,
            ModelOptions {
                include_dephasing: false,
                ..Default::default()
            },
        )
        .unwrap();
        let (down, up) = (m.rate("downhill"), m.rate("uphill"));
        let e = steady_state(&m)
            .unwrap()
            .in_energy_basis(m.exciton_structure());
        assert!((e[(0, 0)].re - down / (down + up)).abs() < 1e-12);
        assert!(e[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn site_dephasing_alone_drives_to_maximally_mixed() {
        let m = venus_model(ModelOptions {
            include_thermal: false,
            ..Default::default()
        });
        let rho = steady_state(&m).unwrap();
        assert!(rho.max_abs_difference(&DensityMatrix::maximally_mixed()) < 1e-12);
    }

    #[test]
    fn degenerate_stationary_states_are_reported() {
        let p = DimerParameters::venus_homodimer();
        let m = LindbladModel::new(&p, vec![]).unwrap();
        assert!(matches!(
            steady_state(&m),
            Err(Error::NonUniqueSteadyState { null_dim: 2 })
        ));
        let energy_only = venus_model(ModelOptions {
            dephasing_basis: Basis::Energy,
            include_thermal: false,
            ..Default::default()
        });
        assert!(matches!(
            steady_state(&energy_only),
            Err(Error::NonUniqueSteadyState { null_dim: 2 })
        ));
    }

    #[test]
    fn basis_series_are_consistent() {
        let m = venus_model(ModelOptions::default());
        let s = *m.exciton_structure();
        let traj = propagate(
            &m,
            &DensityMatrix::site_superposition(FRAC_PI_2),
            &linspace(50.0, 26),
            Tolerances::default(),
        )
        .unwrap();
        for (i, rho) in traj.states.iter().enumerate() {
            let back = s.to_site_basis(&rho.in_energy_basis(&s));
            assert!((back - rho.matrix()).norm() < 1e-10);
            assert!((traj.site_pop_1[i] + traj.site_pop_2[i] - 1.0).abs() < 1e-8);
            assert!((traj.energy_pop_plus[i] + traj.energy_pop_minus[i] - 1.0).abs() < 1e-8);
            assert!(traj.site_coherence_abs[i] <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn negative_rates_rejected() {
        let term = CollapseTerm {
            label: "bad",
            operator: Matrix2::identity(),
            rate: -1.0,
        };
        assert!(LindbladModel::new(&DimerParameters::venus_homodimer(), vec![term]).is_err());
    }
}
