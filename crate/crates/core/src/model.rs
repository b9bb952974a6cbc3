//! Governing equations of the membrane interferometer.
//!
//! Three quantities drive everything else in this crate:
//!
//! * [`sx_thermal`] — the one-sided thermal displacement PSD of the
//!   membrane's vibrational mode (fluctuation-dissipation theorem),
//!   `S_x(Ω) = 4 k_B T γ_m / m_eff / ((ω_m² - Ω²)² + γ_m² Ω²)`,
//!   in m²·s/rad with variance `(1/2π)·∫ S_x dΩ`.
//! * [`s_out`] — the shot-noise-normalized PSD of the amplitude quadrature
//!   at the signal port, including the squeezed vacuum floor, the
//!   arm-phase-offset carrier term, the displacement signal transfer and
//!   the detection-loss vacuum contribution.
//! * [`s_x_effective`] — the dark-port output normalized to membrane
//!   motion: thermal PSD plus a quantum-noise floor suppressed by the
//!   squeeze factor `e^{-2r}`.
//!
//! All inputs are validated at type construction; the operations
//! themselves only have to reject non-finite frequencies.

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Phases with |Δ| below this count as the dark-port condition.
pub const DARK_PORT_TOL: f64 = 1e-6;

/// Smallest accepted mechanical linewidth, rad/s. Keeps the thermal
/// Lorentzian non-singular.
pub const MIN_GAMMA: f64 = 1e-6;

/// Mechanical oscillator parameters and membrane optics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneMechanics {
    omega_m: f64,
    gamma_m: f64,
    m_eff: f64,
    r_m: f64,
    t_m: f64,
}

impl MembraneMechanics {
    /// `omega_m`, `gamma_m` in rad/s, `m_eff` in kg, `r_m`/`t_m` power
    /// fractions. Requires `omega_m > 0`, `gamma_m >= 1e-6`, `m_eff > 0`,
    /// `0 <= r_m, t_m <= 1` and `r_m + t_m <= 1` (equality means a
    /// lossless membrane; a deficit is an absorbing one).
    pub fn new(omega_m: f64, gamma_m: f64, m_eff: f64, r_m: f64, t_m: f64) -> Result<Self> {
        if !(omega_m.is_finite() && omega_m > 0.0) {
            return Err(Error::invalid("membrane.omega_m must be finite and > 0"));
        }
        if !(gamma_m.is_finite() && gamma_m >= MIN_GAMMA) {
            return Err(Error::invalid(format!(
                "membrane.gamma_m must be finite and >= {MIN_GAMMA:e} rad/s"
            )));
        }
        if !(m_eff.is_finite() && m_eff > 0.0) {
            return Err(Error::invalid("membrane.m_eff must be finite and > 0"));
        }
        if !(r_m.is_finite() && (0.0..=1.0).contains(&r_m)) {
            return Err(Error::invalid("membrane.r_m must be in [0,1]"));
        }
        if !(t_m.is_finite() && (0.0..=1.0).contains(&t_m)) {
            return Err(Error::invalid("membrane.t_m must be in [0,1]"));
        }
        if r_m + t_m > 1.0 {
            return Err(Error::invalid("membrane.r_m + t_m must be <= 1"));
        }
        Ok(Self {
            omega_m,
            gamma_m,
            m_eff,
            r_m,
            t_m,
        })
    }

    /// Angular resonance frequency, rad/s.
    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    /// Mechanical linewidth (energy decay rate), rad/s.
    pub fn gamma_m(&self) -> f64 {
        self.gamma_m
    }

    /// Effective modal mass, kg.
    pub fn m_eff(&self) -> f64 {
        self.m_eff
    }

    /// Membrane power reflectivity.
    pub fn r_m(&self) -> f64 {
        self.r_m
    }

    /// Membrane power transmissivity.
    pub fn t_m(&self) -> f64 {
        self.t_m
    }

    /// Quality factor Q = ω_m / γ_m.
    pub fn q_factor(&self) -> f64 {
        self.omega_m / self.gamma_m
    }
}

/// Optical configuration of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    p_in: f64,
    lambda0: f64,
    delta: f64,
    eta: f64,
}

impl InterferometerConfig {
    /// `p_in` in W, `lambda0` in m, `delta` in rad, `eta` a fraction.
    /// `delta` is folded into the canonical range [-π/2, π/2]; the output
    /// spectrum is π-periodic in Δ, so no information is lost.
    pub fn new(p_in: f64, lambda0: f64, delta: f64, eta: f64) -> Result<Self> {
        if !(p_in.is_finite() && p_in >= 0.0) {
            return Err(Error::invalid("interferometer.p_in must be finite and >= 0"));
        }
        if !(lambda0.is_finite() && lambda0 > 0.0) {
            return Err(Error::invalid(
                "interferometer.lambda0 must be finite and > 0",
            ));
        }
        if !delta.is_finite() {
            return Err(Error::invalid("interferometer.delta must be finite"));
        }
        if !(eta.is_finite() && (0.0..=1.0).contains(&eta)) {
            return Err(Error::invalid("interferometer.eta must be in [0,1]"));
        }
        let delta = delta - std::f64::consts::PI * (delta / std::f64::consts::PI).round();
        Ok(Self {
            p_in,
            lambda0,
            delta,
            eta,
        })
    }

    /// Input light power, W.
    pub fn p_in(&self) -> f64 {
        self.p_in
    }

    /// Laser wavelength, m.
    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    /// Relative arm phase Δ in the canonical range [-π/2, π/2].
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Total detection efficiency.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// True when Δ is within the dark-port tolerance of zero.
    pub fn is_dark_port(&self) -> bool {
        self.delta.abs() <= DARK_PORT_TOL
    }
}

/// Which quadrature the homodyne detector reads relative to the squeezing
/// ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadoutQuadrature {
    /// Reading the squeezed quadrature: variance factor e^{-2r}.
    Squeezed,
    /// Reading the anti-squeezed quadrature: variance factor e^{+2r}.
    Antisqueezed,
}

/// Squeezed vacuum injected at the signal port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeState {
    r: f64,
    orientation: ReadoutQuadrature,
}

impl SqueezeState {
    /// Squeeze parameter `r >= 0`; `r = 0` is plain vacuum.
    pub fn new(r: f64, orientation: ReadoutQuadrature) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::invalid("squeezing.r must be finite and >= 0"));
        }
        Ok(Self { r, orientation })
    }

    /// Plain vacuum (r = 0).
    pub fn vacuum() -> Self {
        Self {
            r: 0.0,
            orientation: ReadoutQuadrature::Squeezed,
        }
    }

    /// State whose squeezed-quadrature variance sits `db` decibels below
    /// shot noise: e^{-2r} = 10^{-db/10}.
    pub fn from_db(db: f64) -> Result<Self> {
        if !(db.is_finite() && db >= 0.0) {
            return Err(Error::invalid("squeezing.db must be finite and >= 0"));
        }
        Self::new(db * std::f64::consts::LN_10 / 20.0, ReadoutQuadrature::Squeezed)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn orientation(&self) -> ReadoutQuadrature {
        self.orientation
    }

    /// Variance factor of the quadrature actually read out: e^{-2r} for the
    /// squeezed orientation, e^{+2r} for the anti-squeezed one. Equals 1 for
    /// vacuum regardless of orientation.
    pub fn variance_factor(&self) -> f64 {
        match self.orientation {
            ReadoutQuadrature::Squeezed => (-2.0 * self.r).exp(),
            ReadoutQuadrature::Antisqueezed => (2.0 * self.r).exp(),
        }
    }
}

/// Thermal bath the membrane couples to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnvironment {
    temperature: f64,
}

impl ThermalEnvironment {
    /// Bath temperature in K, strictly positive.
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::invalid(
                "environment.temperature must be finite and > 0",
            ));
        }
        Ok(Self { temperature })
    }

    /// Bath temperature, K.
    pub fn temperature(&self) -> f64 {
        self.temperature
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::domain(format!(
            "frequency must be finite and >= 0 rad/s, got {omega}"
        )));
    }
    Ok(())
}

/// Thermal displacement PSD of the membrane mode at angular frequency
/// `omega`, in m²·s/rad:
///
/// `S_x(Ω) = 4 k_B T γ_m / m_eff / ((ω_m² - Ω²)² + γ_m² Ω²)`
pub fn sx_thermal(omega: f64, mech: &MembraneMechanics, env: &ThermalEnvironment) -> Result<f64> {
    check_omega(omega)?;
    let om2 = mech.omega_m * mech.omega_m;
    let w2 = omega * omega;
    let det = om2 - w2;
    let denom = det * det + mech.gamma_m * mech.gamma_m * w2;
    Ok(4.0 * BOLTZMANN * env.temperature * mech.gamma_m / (mech.m_eff * denom))
}

/// Multiplicative coefficient converting `S_x(Ω)` into shot-noise-normalized
/// output units: `16π r_m P_in η cos²Δ / (ħ λ₀ c)`. Zero when `P_in = 0`
/// (and zero up to floating-point rounding of cos²Δ at Δ = ±π/2).
pub fn signal_transfer(config: &InterferometerConfig, mech: &MembraneMechanics) -> f64 {
    let cos_d = config.delta.cos();
    16.0 * std::f64::consts::PI * mech.r_m * config.p_in * config.eta * cos_d * cos_d
        / (HBAR * config.lambda0 * SPEED_OF_LIGHT)
}

/// Vacuum-only part of [`s_out`]: everything except the displacement signal.
/// This is the noise floor of the normalized output spectrum.
pub fn vacuum_output_floor(
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
) -> f64 {
    let v = sqz.variance_factor();
    let sin_2d = (2.0 * config.delta).sin();
    v * config.eta / 2.0 * (1.0 + mech.t_m + mech.r_m * (4.0 * config.delta).cos())
        + mech.r_m * config.eta * sin_2d * sin_2d
        + 1.0
        - config.eta
}

/// Shot-noise-normalized PSD of the detected amplitude quadrature:
///
/// `S_out(Ω) = (e^{-2r} η / 2)(1 + t_m + r_m cos 4Δ) + r_m η sin² 2Δ
///            + S_x(Ω) · 16π r_m P_in η cos²Δ / (ħ λ₀ c) + 1 - η`
///
/// Normalized so that plain vacuum at a lossless dark port with a lossless
/// membrane gives exactly 1.
pub fn s_out(
    omega: f64,
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
    env: &ThermalEnvironment,
) -> Result<f64> {
    let sx = sx_thermal(omega, mech, env)?;
    Ok(vacuum_output_floor(config, mech, sqz) + sx * signal_transfer(config, mech))
}

/// Quantum-noise floor of the displacement-referred spectrum, m²·s/rad:
/// `e^{-2r} · ħ λ₀ c / (16π r_m P_in)`. Requires `P_in > 0` and `r_m > 0`.
pub fn displacement_shot_floor(
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
) -> Result<f64> {
    if config.p_in <= 0.0 {
        return Err(Error::Precondition(
            "displacement-referred spectrum requires p_in > 0".into(),
        ));
    }
    if mech.r_m <= 0.0 {
        return Err(Error::Precondition(
            "displacement-referred spectrum requires r_m > 0".into(),
        ));
    }
    Ok(sqz.variance_factor() * HBAR * config.lambda0 * SPEED_OF_LIGHT
        / (16.0 * std::f64::consts::PI * mech.r_m * config.p_in))
}

/// Dark-port output normalized to membrane motion, m²·s/rad:
///
/// `S̃_x(Ω) = S_x(Ω) + e^{-2r} ħ λ₀ c / (16π r_m P_in)`
///
/// Only valid at the dark port: requires |Δ| ≤ [`DARK_PORT_TOL`] and
/// `P_in > 0`. For η = 1 and a lossless membrane this equals
/// `s_out / signal_transfer` identically.
pub fn s_x_effective(
    omega: f64,
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
    env: &ThermalEnvironment,
) -> Result<f64> {
    if !config.is_dark_port() {
        return Err(Error::Precondition(format!(
            "displacement normalization requires |delta| <= {DARK_PORT_TOL:e} rad, got {}",
            config.delta
        )));
    }
    let floor = displacement_shot_floor(config, mech, sqz)?;
    Ok(sx_thermal(omega, mech, env)? + floor)
}

/// Equipartition displacement variance `k_B T / (m_eff ω_m²)`, m².
/// Analytically equal to `(1/2π)·∫₀^∞ S_x(Ω) dΩ`.
pub fn equipartition_variance(mech: &MembraneMechanics, env: &ThermalEnvironment) -> f64 {
    BOLTZMANN * env.temperature / (mech.m_eff * mech.omega_m * mech.omega_m)
}

/// Quality factor ω_m / γ_m.
pub fn q_factor(mech: &MembraneMechanics) -> f64 {
    mech.q_factor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn paper_like_mech() -> MembraneMechanics {
        // f_m = 400 kHz, Q = 1e5, m_eff = 100 ng, r_m 19% / t_m 81%
        let omega_m = 2.0 * PI * 400e3;
        MembraneMechanics::new(omega_m, omega_m / 1e5, 1e-10, 0.19, 0.81).unwrap()
    }

    fn room() -> ThermalEnvironment {
        ThermalEnvironment::new(293.0).unwrap()
    }

    #[test]
    fn thermal_psd_at_resonance() {
        // Independent high-precision evaluation of 4 kB T/(m_eff γ ω²)
        // at T=293 K, ω_m=2π·400 kHz, Q=1e5, m_eff=100 ng.
        let mech = paper_like_mech();
        let got = sx_thermal(mech.omega_m(), &mech, &room()).unwrap();
        let expected = 1.019_274_866_230_710_6e-24;
        assert!(
            ((got - expected) / expected).abs() < 1e-12,
            "got {got:e}, expected {expected:e}"
        );
    }

    #[test]
    fn thermal_psd_peak_identity() {
        // S_x(ω_m) = 4 kB T Q / (m_eff ω_m³)
        let mech = paper_like_mech();
        let env = room();
        let got = sx_thermal(mech.omega_m(), &mech, &env).unwrap();
        let closed = 4.0 * crate::constants::BOLTZMANN * env.temperature() * mech.q_factor()
            / (mech.m_eff() * mech.omega_m().powi(3));
        assert!(((got - closed) / closed).abs() < 1e-12);
    }

    #[test]
    fn thermal_psd_linear_in_temperature() {
        let mech = paper_like_mech();
        let cold = ThermalEnvironment::new(20.0).unwrap();
        for omega in [0.0, 1e5, mech.omega_m(), 3e7] {
            let hot_val = sx_thermal(omega, &mech, &room()).unwrap();
            let cold_val = sx_thermal(omega, &mech, &cold).unwrap();
            assert!((cold_val / hot_val - 20.0 / 293.0).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_psd_decays_beyond_resonance() {
        let mech = paper_like_mech();
        let env = room();
        let mut prev = sx_thermal(2.0 * mech.omega_m(), &mech, &env).unwrap();
        for k in 3..40 {
            let next = sx_thermal(k as f64 * mech.omega_m(), &mech, &env).unwrap();
            assert!(next < prev && next > 0.0);
            prev = next;
        }
    }

    #[test]
    fn thermal_psd_rejects_non_finite() {
        let mech = paper_like_mech();
        assert!(matches!(
            sx_thermal(f64::NAN, &mech, &room()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sx_thermal(f64::INFINITY, &mech, &room()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sx_thermal(-1.0, &mech, &room()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transfer_coefficient_value() {
        // 16π · 0.19 · 1 mW / (ħ · 1550 nm · c), independent arithmetic.
        let config = InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap();
        let mech = paper_like_mech();
        let got = signal_transfer(&config, &mech);
        let expected = 1.948_923_958_007_998_5e29;
        assert!(((got - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn transfer_vanishes_at_bright_fringe() {
        let mech = paper_like_mech();
        let dark = InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap();
        let bright = InterferometerConfig::new(1e-3, 1.55e-6, PI / 2.0, 1.0).unwrap();
        // cos(π/2) is not exactly zero in floating point; compare against
        // the dark-port value instead of asserting literal zero.
        assert!(signal_transfer(&bright, &mech) < 1e-25 * signal_transfer(&dark, &mech));
    }

    #[test]
    fn transfer_zero_without_input_power() {
        let mech = paper_like_mech();
        let off = InterferometerConfig::new(0.0, 1.55e-6, 0.0, 1.0).unwrap();
        assert_eq!(signal_transfer(&off, &mech), 0.0);
    }

    #[test]
    fn transfer_linear_in_power() {
        let mech = paper_like_mech();
        let one = InterferometerConfig::new(1e-3, 1.55e-6, 0.1, 0.9).unwrap();
        let two = InterferometerConfig::new(2e-3, 1.55e-6, 0.1, 0.9).unwrap();
        let a = signal_transfer(&one, &mech);
        let b = signal_transfer(&two, &mech);
        assert!((b / a - 2.0).abs() < 1e-15);
    }

    #[test]
    fn output_is_shot_noise_normalized() {
        // Vacuum, lossless detection, dark port, lossless membrane, no
        // carrier: S_out = 1 exactly. Uses dyadic r_m/t_m so the float sum
        // 1 + t_m + r_m is exact.
        let env = room();
        for (r_m, t_m) in [(0.25, 0.75), (0.5, 0.5), (0.1875, 0.8125)] {
            let mech = MembraneMechanics::new(2.0 * PI * 400e3, 2.0 * PI * 4.0, 1e-10, r_m, t_m)
                .unwrap();
            let config = InterferometerConfig::new(0.0, 1.55e-6, 0.0, 1.0).unwrap();
            let sqz = SqueezeState::vacuum();
            for omega in [0.0, 1e6, 2.0 * PI * 400e3] {
                assert_eq!(s_out(omega, &config, &mech, &sqz, &env).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn output_floor_at_4p8_db() {
        // e^{-2r} = 10^{-0.48}: ideal-detection squeezed floor.
        let mech =
            MembraneMechanics::new(2.0 * PI * 400e3, 2.0 * PI * 4.0, 1e-10, 0.25, 0.75).unwrap();
        let config = InterferometerConfig::new(0.0, 1.55e-6, 0.0, 1.0).unwrap();
        let sqz = SqueezeState::from_db(4.8).unwrap();
        let got = s_out(1e6, &config, &mech, &sqz, &room()).unwrap();
        let expected = 0.331_131_121_482_591_09;
        assert!(((got - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn output_at_quarter_wave_offset() {
        // Δ = π/4: cos 4Δ = -1, sin² 2Δ = 1; hand evaluation gives exactly 1.
        let mech = paper_like_mech(); // r_m 0.19, t_m 0.81
        let config = InterferometerConfig::new(0.0, 1.55e-6, PI / 4.0, 1.0).unwrap();
        let got = s_out(1e6, &config, &mech, &SqueezeState::vacuum(), &room()).unwrap();
        assert!((got - 1.0).abs() < 1e-14);
    }

    #[test]
    fn displacement_floor_value() {
        // ħ λ₀ c / (16π r_m P_in) for r_m=0.19, P_in=1 mW, λ₀=1550 nm.
        let mech = paper_like_mech();
        let config = InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap();
        let got = displacement_shot_floor(&config, &mech, &SqueezeState::vacuum()).unwrap();
        let expected = 5.131_036_518_336_524_8e-30;
        assert!(((got - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn displacement_floor_suppressed_by_squeezing() {
        let mech = paper_like_mech();
        let config = InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap();
        let plain = displacement_shot_floor(&config, &mech, &SqueezeState::vacuum()).unwrap();
        let sqz = displacement_shot_floor(&config, &mech, &SqueezeState::from_db(4.8).unwrap())
            .unwrap();
        assert!((sqz / plain - 0.331_131_121_482_591_09).abs() < 1e-13);
    }

    #[test]
    fn effective_spectrum_reaches_floor_off_resonance() {
        let mech = paper_like_mech();
        let config = InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap();
        let sqz = SqueezeState::vacuum();
        let env = room();
        let floor = displacement_shot_floor(&config, &mech, &sqz).unwrap();
        // |Ω - ω_m| >> γ √Q: thermal wing is far below the shot floor.
        let far = 10.0 * mech.omega_m();
        let val = s_x_effective(far, &config, &mech, &sqz, &env).unwrap();
        assert!((val / floor - 1.0).abs() < 1e-6);
    }

    #[test]
    fn effective_spectrum_requires_dark_port() {
        let mech = paper_like_mech();
        let env = room();
        let sqz = SqueezeState::vacuum();
        let off = InterferometerConfig::new(1e-3, 1.55e-6, 1e-3, 1.0).unwrap();
        assert!(matches!(
            s_x_effective(1e6, &off, &mech, &sqz, &env),
            Err(Error::Precondition(_))
        ));
        let dark_enough = InterferometerConfig::new(1e-3, 1.55e-6, 1e-7, 1.0).unwrap();
        assert!(s_x_effective(1e6, &dark_enough, &mech, &sqz, &env).is_ok());
        let no_power = InterferometerConfig::new(0.0, 1.55e-6, 0.0, 1.0).unwrap();
        assert!(matches!(
            s_x_effective(1e6, &no_power, &mech, &sqz, &env),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equipartition_value() {
        // k_B · 293 / (1e-10 · (2π·4e5)²), independent arithmetic.
        let got = equipartition_variance(&paper_like_mech(), &room());
        let expected = 6.404_292_863_478_239_1e-24;
        assert!(((got - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn equipartition_linear_in_temperature() {
        let mech = paper_like_mech();
        let t1 = equipartition_variance(&mech, &ThermalEnvironment::new(100.0).unwrap());
        let t2 = equipartition_variance(&mech, &ThermalEnvironment::new(200.0).unwrap());
        assert!((t2 / t1 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn quality_factor_values() {
        let om = 2.0 * PI * 400e3;
        let q5 = MembraneMechanics::new(om, 2.0 * PI * 4.0, 1e-10, 0.19, 0.81).unwrap();
        assert!((q5.q_factor() - 1e5).abs() / 1e5 < 1e-12);
        let q1 = MembraneMechanics::new(om, om, 1e-10, 0.19, 0.81).unwrap();
        assert_eq!(q1.q_factor(), 1.0);
        let half = MembraneMechanics::new(om, 2.0 * PI * 8.0, 1e-10, 0.19, 0.81).unwrap();
        assert!((half.q_factor() - 5e4).abs() / 5e4 < 1e-12);
    }

    #[test]
    fn delta_is_canonicalized() {
        let c = InterferometerConfig::new(1e-3, 1.55e-6, PI, 1.0).unwrap();
        assert!(c.delta().abs() < 1e-12);
        let c = InterferometerConfig::new(1e-3, 1.55e-6, 0.75 * PI, 1.0).unwrap();
        assert!((c.delta() + 0.25 * PI).abs() < 1e-12);
        let c = InterferometerConfig::new(1e-3, 1.55e-6, -0.3, 1.0).unwrap();
        assert!((c.delta() + 0.3).abs() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        let om = 2.0 * PI * 400e3;
        assert!(MembraneMechanics::new(0.0, 1.0, 1e-10, 0.19, 0.81).is_err());
        assert!(MembraneMechanics::new(om, 0.0, 1e-10, 0.19, 0.81).is_err());
        assert!(MembraneMechanics::new(om, 1e-9, 1e-10, 0.19, 0.81).is_err());
        assert!(MembraneMechanics::new(om, 1.0, 0.0, 0.19, 0.81).is_err());
        assert!(MembraneMechanics::new(om, 1.0, 1e-10, 0.6, 0.6).is_err());
        assert!(MembraneMechanics::new(om, 1.0, 1e-10, -0.1, 0.5).is_err());
        assert!(InterferometerConfig::new(-1.0, 1.55e-6, 0.0, 1.0).is_err());
        assert!(InterferometerConfig::new(1e-3, 0.0, 0.0, 1.0).is_err());
        assert!(InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.2).is_err());
        assert!(InterferometerConfig::new(1e-3, 1.55e-6, f64::NAN, 1.0).is_err());
        assert!(SqueezeState::new(-0.1, ReadoutQuadrature::Squeezed).is_err());
        assert!(ThermalEnvironment::new(0.0).is_err());
        assert!(ThermalEnvironment::new(-5.0).is_err());
    }

    #[test]
    fn anti_squeezed_readout_amplifies() {
        let sqz = SqueezeState::new(1.0, ReadoutQuadrature::Antisqueezed).unwrap();
        assert!((sqz.variance_factor() - (2.0f64).exp()).abs() < 1e-15);
        let vac = SqueezeState::new(0.0, ReadoutQuadrature::Antisqueezed).unwrap();
        assert_eq!(vac.variance_factor(), 1.0);
    }
}
