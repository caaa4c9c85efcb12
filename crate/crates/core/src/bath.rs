//! Drude-Lorentz bath in the high-temperature (no Matsubara) limit.
//!
//! All closed forms here share the prefactor 2λk_BT/ħ² (fs⁻²), the
//! zero-time value of the energy-gap frequency correlation function.

use serde::{Deserialize, Serialize};

use crate::dimer::ExcitonStructure;
use crate::units::{self, HBAR};
use crate::{Error, Result};

/// Below this value of k_BT/(ħγ_c) the high-temperature expansion is
/// treated as a heuristic extrapolation.
pub const HIGH_TEMPERATURE_THRESHOLD: f64 = 3.0;

/// Reorganization energy λ (meV), cutoff γ_c (fs⁻¹) and temperature T (K).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParameters {
    pub lambda_reorg: f64,
    pub gamma_c: f64,
    pub temperature: f64,
}

impl BathParameters {
    pub fn new(lambda_reorg: f64, gamma_c: f64, temperature: f64) -> Result<Self> {
        if !lambda_reorg.is_finite() || lambda_reorg < 0.0 {
            return Err(Error::invalid("bath.lambda", "must be finite and >= 0"));
        }
        if !gamma_c.is_finite() || gamma_c <= 0.0 {
            return Err(Error::invalid("bath.tau_c_ps", "must be finite and > 0"));
        }
        if !temperature.is_finite() || temperature <= 0.0 {
            return Err(Error::invalid("bath.temperature_K", "must be > 0"));
        }
        Ok(BathParameters {
            lambda_reorg,
            gamma_c,
            temperature,
        })
    }

    /// λ given in cm⁻¹ and the correlation time τ_c = 1/γ_c in fs.
    pub fn from_wavenumber(lambda_cm1: f64, tau_c_fs: f64, temperature: f64) -> Result<Self> {
        if !(tau_c_fs > 0.0) {
            return Err(Error::invalid("bath.tau_c_ps", "must be > 0"));
        }
        Self::new(
            units::mev_from_wavenumber(lambda_cm1),
            1.0 / tau_c_fs,
            temperature,
        )
    }

    /// λ = 270 cm⁻¹, τ_c = 0.1 ps, T = 293 K.
    pub fn venus() -> Self {
        Self::from_wavenumber(270.0, 100.0, 293.0).expect("valid defaults")
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self::new(self.lambda_reorg, self.gamma_c, temperature)
    }

    pub fn correlation_time(&self) -> f64 {
        1.0 / self.gamma_c
    }

    pub fn thermal_energy(&self) -> f64 {
        units::K_BOLTZMANN * self.temperature
    }

    /// k_BT / (ħγ_c); the model assumes this is large.
    pub fn high_temperature_ratio(&self) -> f64 {
        self.thermal_energy() / (HBAR * self.gamma_c)
    }

    pub fn is_high_temperature(&self) -> bool {
        self.high_temperature_ratio() >= HIGH_TEMPERATURE_THRESHOLD
    }

    /// C_ω(0) = 2λk_BT/ħ² in fs⁻².
    fn correlation_amplitude(&self) -> f64 {
        2.0 * self.lambda_reorg * self.thermal_energy() / (HBAR * HBAR)
    }
}

/// Pure-dephasing rate and the two thermal transfer rates, all in fs⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSet {
    pub gamma_phi: f64,
    /// Downhill transfer, dark (upper) → bright (lower).
    pub gamma_down: f64,
    /// Uphill transfer, bright (lower) → dark (upper).
    pub gamma_up: f64,
}

impl RateSet {
    /// Equilibrium population of the lower exciton, γ↓/(γ↓ + γ↑).
    pub fn equilibrium_lower_population(&self) -> f64 {
        self.gamma_down / (self.gamma_down + self.gamma_up)
    }
}

/// J(ω) = 2λωγ_c/(ω² + γ_c²) in meV, for ω in fs⁻¹.
pub fn spectral_density(omega: f64, b: &BathParameters) -> f64 {
    2.0 * b.lambda_reorg * omega * b.gamma_c / (omega * omega + b.gamma_c * b.gamma_c)
}

/// Motional-narrowing dephasing rate γ_φ = 2λk_BT/(ħ²γ_c).
pub fn pure_dephasing_rate(b: &BathParameters) -> f64 {
    b.correlation_amplitude() / b.gamma_c
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("t", format!("must be >= 0 fs (got {t})")))
    }
}

/// g(t) = (2λk_BT/ħ²)[t/γ_c − (1 − e^{−γ_c t})/γ_c²].
pub fn lineshape(t: f64, b: &BathParameters) -> Result<f64> {
    check_time(t)?;
    let gc = b.gamma_c;
    // (1 - e^{-x})/x via exp_m1 keeps the short-time t² behaviour accurate
    let x = gc * t;
    let bracket = (x + (-x).exp_m1()) / (gc * gc);
    Ok(b.correlation_amplitude() * bracket)
}

/// C_ω(t) = (2λk_BT/ħ²)·e^{−γ_c t} in fs⁻².
pub fn correlation_function(t: f64, b: &BathParameters) -> Result<f64> {
    check_time(t)?;
    Ok(b.correlation_amplitude() * (-b.gamma_c * t).exp())
}

/// Secular golden-rule transfer rates between the excitons.
///
/// γ↓ = sin²(2θ)·J(ω₀)[coth(βħω₀/2) + 1]/ħ with ω₀ = ΔE/ħ, and
/// γ↑ = γ↓·e^{−βΔE} so detailed balance holds by construction.
pub fn thermal_rates(b: &BathParameters, s: &ExcitonStructure) -> Result<RateSet> {
    if !(s.splitting > 0.0) {
        return Err(Error::Degenerate {
            splitting_mev: s.splitting,
            context: "secular transfer rates are undefined",
        });
    }
    let omega0 = units::angular_frequency(s.splitting);
    let beta_gap = s.splitting / b.thermal_energy();
    let mixing = (2.0 * s.mixing_angle).sin().powi(2);
    // coth(x/2) + 1 = 2/(1 - e^{-x})
    let occupation_factor = -2.0 / (-beta_gap).exp_m1();
    let gamma_down = mixing * spectral_density(omega0, b) * occupation_factor / HBAR;
    Ok(RateSet {
        gamma_phi: pure_dephasing_rate(b),
        gamma_down,
        gamma_up: gamma_down * (-beta_gap).exp(),
    })
}

/// Inverts the dephasing-rate relation for λ (meV) given a coherence time
/// T₂ (fs), with γ_φ = 1/T₂. Only meaningful for a single Debye mode.
pub fn extract_lambda(coherence_time: f64, gamma_c: f64, temperature: f64) -> Result<f64> {
    if !(coherence_time > 0.0) || !coherence_time.is_finite() {
        return Err(Error::invalid("t2_fs", "must be > 0"));
    }
    if !(gamma_c > 0.0) {
        return Err(Error::invalid("tau_c_ps", "must be > 0"));
    }
    if !(temperature > 0.0) {
        return Err(Error::invalid("temperature_K", "must be > 0"));
    }
    let gamma_phi = 1.0 / coherence_time;
    Ok(gamma_phi * HBAR * HBAR * gamma_c / (2.0 * units::K_BOLTZMANN * temperature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::{diagonalize, DimerParameters};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Reference values below come from an independent 30-digit evaluation
    // (adaptive quadrature for the lineshape and correlation integrals).
    const GAMMA_PHI_VENUS: f64 = 0.390_183_655_356_546;
    const LINESHAPE_AT_TAU_C: f64 = 14.354_054_508_679_68;
    const LINESHAPE_AT_TEN_TAU_C: f64 = 351.167_061_251_946_2;
    const GAMMA_DOWN_VENUS: f64 = 0.020_924_671_373_951_22;
    const GAMMA_UP_VENUS: f64 = 1.415_850_154_141_083e-3;

    /// g(t) = ∫₀ᵗ (t − s) C(s) ds by composite Simpson.
    fn lineshape_by_quadrature(t: f64, b: &BathParameters) -> f64 {
        let n = 20_000;
        let h = t / n as f64;
        let f = |s: f64| (t - s) * correlation_function(s, b).unwrap();
        let mut acc = f(0.0) + f(t);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn spectral_density_examples() {
        let b = BathParameters::venus();
        assert_relative_eq!(
            spectral_density(b.gamma_c, &b),
            b.lambda_reorg,
            max_relative = 1e-15
        );
        assert_relative_eq!(b.lambda_reorg, 33.476, max_relative = 1e-4);
        assert_eq!(spectral_density(0.0, &b), 0.0);
        assert_relative_eq!(spectral_density(0.10331, &b), 6.421, max_relative = 1e-4);
    }

    #[test]
    fn dephasing_rate_examples() {
        let b = BathParameters::venus();
        assert_relative_eq!(
            pure_dephasing_rate(&b),
            GAMMA_PHI_VENUS,
            max_relative = 1e-12
        );
        let half_t = b.with_temperature(146.5).unwrap();
        assert_relative_eq!(
            pure_dephasing_rate(&half_t),
            0.5 * GAMMA_PHI_VENUS,
            max_relative = 1e-14
        );
        let cold = b.with_temperature(0.1).unwrap();
        assert_relative_eq!(pure_dephasing_rate(&cold), 1.3317e-4, max_relative = 1e-4);
    }

    #[test]
    fn lineshape_examples() {
        let b = BathParameters::venus();
        assert_eq!(lineshape(0.0, &b).unwrap(), 0.0);
        let g_tau = lineshape(100.0, &b).unwrap();
        assert_relative_eq!(g_tau, LINESHAPE_AT_TAU_C, max_relative = 1e-12);
        assert_relative_eq!(
            g_tau,
            lineshape_by_quadrature(100.0, &b),
            max_relative = 1e-9
        );
        let g_long = lineshape(1000.0, &b).unwrap();
        assert_relative_eq!(g_long, LINESHAPE_AT_TEN_TAU_C, max_relative = 1e-12);
        assert_relative_eq!(
            g_long,
            lineshape_by_quadrature(1000.0, &b),
            max_relative = 1e-9
        );
        assert!((g_long / (GAMMA_PHI_VENUS * 1000.0) - 1.0).abs() < 0.1);
        assert!(lineshape(-1.0, &b).is_err());
    }

    #[test]
    fn lineshape_short_time_is_quadratic() {
        let b = BathParameters::venus();
        let t = 0.01;
        let quadratic = b.lambda_reorg * b.thermal_energy() * t * t / (HBAR * HBAR);
        assert_relative_eq!(lineshape(t, &b).unwrap(), quadratic, max_relative = 1e-4);
    }

    #[test]
    fn lineshape_curvature_is_correlation_function() {
        let b = BathParameters::venus();
        let h = 0.1;
        let mut t = h;
        while t <= 500.0 {
            let g = |x: f64| lineshape(x, &b).unwrap();
            let second = (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h);
            let c = correlation_function(t, &b).unwrap();
            assert!((second / c - 1.0).abs() < 1e-6, "t = {t}: {second} vs {c}");
            t += 7.3;
        }
    }

    #[test]
    fn lineshape_long_time_slope_is_dephasing_rate() {
        let b = BathParameters::venus();
        let tau = b.correlation_time();
        for (t1, t2) in [(10.0 * tau, 11.0 * tau), (12.0 * tau, 30.0 * tau)] {
            let slope = (lineshape(t2, &b).unwrap() - lineshape(t1, &b).unwrap()) / (t2 - t1);
            assert!((slope / pure_dephasing_rate(&b) - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn correlation_function_examples() {
        let b = BathParameters::venus();
        let c0 = correlation_function(0.0, &b).unwrap();
        assert_relative_eq!(c0, GAMMA_PHI_VENUS * b.gamma_c, max_relative = 1e-12);
        assert_relative_eq!(
            correlation_function(100.0, &b).unwrap(),
            c0 / std::f64::consts::E,
            max_relative = 1e-14
        );
        // the integral of C_ω over [0, ∞) is the long-time slope of g, i.e. γ_φ
        let (n, t_max) = (200_000, 5000.0);
        let h = t_max / n as f64;
        let integral: f64 = (0..n)
            .map(|i| {
                let a = correlation_function(i as f64 * h, &b).unwrap();
                let z = correlation_function((i + 1) as f64 * h, &b).unwrap();
                0.5 * (a + z) * h
            })
            .sum();
        assert_relative_eq!(integral, pure_dephasing_rate(&b), max_relative = 1e-6);
    }

    #[test]
    fn venus_thermal_rates() {
        let b = BathParameters::venus();
        let s = diagonalize(&DimerParameters::venus_homodimer());
        let rates = thermal_rates(&b, &s).unwrap();
        assert_relative_eq!(rates.gamma_down, GAMMA_DOWN_VENUS, max_relative = 1e-10);
        assert_relative_eq!(rates.gamma_up, GAMMA_UP_VENUS, max_relative = 1e-10);

        // Bose-Einstein route: coth(x/2) + 1 = 2(n̄ + 1)
        let omega0 = s.splitting / HBAR;
        let n_bar = 1.0 / ((s.splitting / b.thermal_energy()).exp() - 1.0);
        let golden_rule = 2.0 * spectral_density(omega0, &b) * (n_bar + 1.0) / HBAR;
        assert_relative_eq!(rates.gamma_down, golden_rule, max_relative = 1e-12);
    }

    #[test]
    fn uphill_rate_freezes_out() {
        let s = diagonalize(&DimerParameters::venus_homodimer());
        let cold = BathParameters::venus().with_temperature(1.0).unwrap();
        let rates = thermal_rates(&cold, &s).unwrap();
        assert!(rates.gamma_down > 0.0);
        assert!(rates.gamma_up < 1e-300);
    }

    #[test]
    fn degenerate_excitons_rejected() {
        let s = diagonalize(&DimerParameters::new(0.0, 0.0, 0.0).unwrap());
        assert!(matches!(
            thermal_rates(&BathParameters::venus(), &s),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn lambda_extraction() {
        let lambda = extract_lambda(1000.0, 0.01, 293.0).unwrap();
        assert_relative_eq!(lambda, 0.085_794_812_541_315_19, max_relative = 1e-12);
        assert_relative_eq!(
            units::wavenumber_from_mev(lambda),
            0.692,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            extract_lambda(500.0, 0.01, 293.0).unwrap(),
            2.0 * lambda,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            units::wavenumber_from_mev(extract_lambda(1000.0, 0.005, 293.0).unwrap()),
            0.345_990_915,
            max_relative = 1e-8
        );
        assert!(extract_lambda(0.0, 0.01, 293.0).is_err());
        assert!(extract_lambda(-5.0, 0.01, 293.0).is_err());
    }

    #[test]
    fn high_temperature_diagnostic() {
        let b = BathParameters::venus();
        assert_relative_eq!(b.high_temperature_ratio(), 3.836, max_relative = 1e-3);
        assert!(b.is_high_temperature());
        assert!(!b.with_temperature(0.1).unwrap().is_high_temperature());
    }

    #[test]
    fn parameter_validation() {
        assert!(BathParameters::new(-1.0, 0.01, 293.0).is_err());
        assert!(BathParameters::new(1.0, 0.0, 293.0).is_err());
        let err = BathParameters::new(1.0, 0.01, -4.0).unwrap_err();
        assert_eq!(err.to_string(), "bath.temperature_K must be > 0");
    }

    proptest! {
        #[test]
        fn detailed_balance_and_positivity(
            log_lambda in 0.0f64..6.3, log_t in -4.6f64..6.0,
            j in -100.0f64..-1.0, delta in 0.0f64..100.0, omega in 0.0f64..10.0,
        ) {
            let b = BathParameters::from_wavenumber(log_lambda.exp(), 100.0, log_t.exp()).unwrap();
            let s = diagonalize(&DimerParameters::new(j, delta, 0.0).unwrap());
            let r = thermal_rates(&b, &s).unwrap();
            prop_assert!(r.gamma_phi >= 0.0 && r.gamma_down >= 0.0 && r.gamma_up >= 0.0);
            let boltzmann = (-s.splitting / b.thermal_energy()).exp();
            if r.gamma_up >= f64::MIN_POSITIVE {
                prop_assert!((r.gamma_up / r.gamma_down / boltzmann - 1.0).abs() < 1e-10);
            } else {
                // subnormal or zero: only the bound is meaningful
                prop_assert!(r.gamma_up <= r.gamma_down * boltzmann + 1e-300);
            }
            prop_assert!(spectral_density(omega, &b) >= 0.0);
            prop_assert!(spectral_density(omega, &b) <= b.lambda_reorg * (1.0 + 1e-14));
        }

        #[test]
        fn extraction_inverts_dephasing_rate(t2 in 1.0f64..1e6, tau in 1.0f64..1e3, temp in 1e-3f64..1e3) {
            let lambda = extract_lambda(t2, 1.0 / tau, temp).unwrap();
            let b = BathParameters::new(lambda, 1.0 / tau, temp).unwrap();
            prop_assert!((pure_dephasing_rate(&b) * t2 - 1.0).abs() < 1e-10);
        }
    }
}
