//! Conversion of fitted spectrum parameters into physical quantities.

use crate::constants::BOLTZMANN;
use crate::error::{Error, Result};
use crate::fit::FitResult;
use crate::loss::factor_to_db;
use crate::model::{signal_transfer, InterferometerConfig, MembraneMechanics};
use crate::spectrum::{SpectrumUnit, ANGULAR_TO_HZ};

/// Reference mass for the scale-free temperature form, 100 ng.
pub const REFERENCE_MASS_KG: f64 = 1e-10;

/// Optical parameters needed to refer fitted amplitudes and floors back to
/// physics: the interferometer configuration plus the membrane optics.
#[derive(Debug, Clone, Copy)]
pub struct ExtractContext {
    pub config: InterferometerConfig,
    pub mech: MembraneMechanics,
}

/// Physical quantities extracted from a converged fit.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicsReport {
    /// Q = f_m / gamma_hz.
    pub q_factor: f64,
    /// Bath temperature, K; requires the effective mass.
    pub temperature_k: Option<f64>,
    /// Scale-free alternative when the mass is unknown:
    /// `T · (100 ng / m_eff)`.
    pub temperature_k_at_100ng: Option<f64>,
    /// Squeeze level inferred from the fitted noise floor, dB below shot
    /// noise; requires optical parameters.
    pub inferred_squeezing_db: Option<f64>,
    pub notes: Vec<String>,
}

/// Derive Q, bath temperature and the floor-implied squeeze level from a
/// converged [`FitResult`].
///
/// The fitted amplitude maps onto the thermal-spectrum numerator
/// `4 k_B T γ_m / m_eff` with the fitted linewidth divided out, so
/// `T = A·m_eff/(4 k_B)` once `A` is expressed in angular-frequency PSD
/// units (displacement records carry a 2π Hz-referral factor, and
/// shot-normalized records carry the signal transfer coefficient).
pub fn extract_physics(
    result: &FitResult,
    unit: SpectrumUnit,
    ctx: Option<&ExtractContext>,
    m_eff: Option<f64>,
) -> Result<PhysicsReport> {
    if !result.converged {
        return Err(Error::Precondition(
            "physics extraction requires a converged fit".into(),
        ));
    }
    if let Some(m) = m_eff {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::invalid("m_eff must be finite and > 0"));
        }
    }
    let p = &result.params;
    let mut notes = Vec::new();
    let q_factor = p.f_m / p.gamma_hz;

    // Amplitude in angular-frequency PSD units, i.e. the 4 k_B T / m_eff
    // numerator of the thermal spectrum.
    let amplitude_angular = match unit {
        SpectrumUnit::Displacement => Some(p.amplitude / ANGULAR_TO_HZ),
        SpectrumUnit::ShotNormalized => {
            let ctx = ctx.ok_or_else(|| {
                Error::UnitMismatch(
                    "shot-normalized spectrum requires optical transfer parameters \
                     to extract physics"
                        .into(),
                )
            })?;
            let transfer = signal_transfer(&ctx.config, &ctx.mech);
            if transfer <= 0.0 {
                notes.push(
                    "no signal transfer (p_in = 0 or bright fringe); temperature not available"
                        .into(),
                );
                None
            } else {
                Some(p.amplitude / transfer)
            }
        }
    };

    let (temperature_k, temperature_k_at_100ng) = match (amplitude_angular, m_eff) {
        (Some(a), Some(m)) => (Some(a * m / (4.0 * BOLTZMANN)), None),
        (Some(a), None) => {
            notes.push(
                "m_eff not supplied; temperature reported as T·(100 ng / m_eff)".into(),
            );
            (None, Some(a * REFERENCE_MASS_KG / (4.0 * BOLTZMANN)))
        }
        (None, _) => (None, None),
    };

    let inferred_squeezing_db = match (unit, ctx) {
        (_, None) => {
            notes.push(
                "no optical configuration supplied; floor not converted to a squeeze level"
                    .into(),
            );
            None
        }
        (SpectrumUnit::Displacement, Some(ctx)) => {
            match crate::model::displacement_shot_floor(
                &ctx.config,
                &ctx.mech,
                &crate::model::SqueezeState::vacuum(),
            ) {
                Ok(vacuum_floor) => {
                    let factor = p.floor / (ANGULAR_TO_HZ * vacuum_floor);
                    Some(factor_to_db(factor))
                }
                Err(_) => {
                    notes.push(
                        "vacuum shot floor undefined (p_in = 0 or r_m = 0); \
                         squeeze level not available"
                            .into(),
                    );
                    None
                }
            }
        }
        (SpectrumUnit::ShotNormalized, Some(ctx)) => {
            let eta = ctx.config.eta();
            let delta = ctx.config.delta();
            let sin_2d = (2.0 * delta).sin();
            let carrier = ctx.mech.r_m() * eta * sin_2d * sin_2d;
            let weight = eta / 2.0 * (1.0 + ctx.mech.t_m() + ctx.mech.r_m() * (4.0 * delta).cos());
            let factor = (p.floor - carrier - (1.0 - eta)) / weight;
            if !(factor.is_finite() && factor > 0.0) {
                notes.push(
                    "fitted floor is below the loss-implied vacuum level; \
                     squeeze level not available"
                        .into(),
                );
                None
            } else {
                Some(factor_to_db(factor))
            }
        }
    };
    if inferred_squeezing_db.is_some() {
        notes.push(
            "floor inversion attributes the full suppression to squeezing; \
             technical and phase noise are not modeled"
                .into(),
        );
    }

    Ok(PhysicsReport {
        q_factor,
        temperature_k,
        temperature_k_at_100ng,
        inferred_squeezing_db,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_spectrum, FitOptions, FitParams, FitResult};
    use crate::model::{SqueezeState, ThermalEnvironment};
    use crate::spectrum::FrequencyGrid;
    use crate::synth::synth_spectrum;
    use std::f64::consts::PI;

    fn ctx() -> ExtractContext {
        ExtractContext {
            config: InterferometerConfig::new(1e-3, 1.55e-6, 0.0, 1.0).unwrap(),
            mech: MembraneMechanics::new(2.0 * PI * 400e3, 2.0 * PI * 4.0, 1e-10, 0.19, 0.81)
                .unwrap(),
        }
    }

    fn converged_result(params: FitParams) -> FitResult {
        FitResult {
            params,
            covariance: [[0.0; 4]; 4],
            chi2_per_dof: 1.0,
            iterations: 1,
            converged: true,
        }
    }

    #[test]
    fn q_from_fitted_parameters() {
        let params = FitParams::new(1.0, 400e3, 4.0, 1e-30).unwrap();
        let report =
            extract_physics(&converged_result(params), SpectrumUnit::Displacement, None, None)
                .unwrap();
        assert!((report.q_factor - 1e5).abs() / 1e5 < 1e-12);
    }

    #[test]
    fn temperature_from_known_mass() {
        // Amplitude constructed from T = 293 K, m_eff = 100 ng in
        // displacement (Hz-referred) units must invert back exactly.
        let amplitude = ANGULAR_TO_HZ * 4.0 * BOLTZMANN * 293.0 / 1e-10;
        let params = FitParams::new(amplitude, 400e3, 4.0, 1e-30).unwrap();
        let report = extract_physics(
            &converged_result(params),
            SpectrumUnit::Displacement,
            None,
            Some(1e-10),
        )
        .unwrap();
        let t = report.temperature_k.unwrap();
        assert!((t - 293.0).abs() / 293.0 < 1e-12);
        assert!(report.temperature_k_at_100ng.is_none());
    }

    #[test]
    fn scale_free_temperature_without_mass() {
        let amplitude = ANGULAR_TO_HZ * 4.0 * BOLTZMANN * 293.0 / 1e-10;
        let params = FitParams::new(amplitude, 400e3, 4.0, 1e-30).unwrap();
        let report = extract_physics(
            &converged_result(params),
            SpectrumUnit::Displacement,
            None,
            None,
        )
        .unwrap();
        assert!(report.temperature_k.is_none());
        let t100 = report.temperature_k_at_100ng.unwrap();
        assert!((t100 - 293.0).abs() / 293.0 < 1e-12); // fixture mass is 100 ng
        assert!(report.notes.iter().any(|n| n.contains("100 ng")));
    }

    #[test]
    fn squeeze_level_from_floor() {
        // Floor at 0.331 × the vacuum shot floor reports as ~4.8 dB.
        let ctx = ctx();
        let vacuum_floor = ANGULAR_TO_HZ
            * crate::model::displacement_shot_floor(
                &ctx.config,
                &ctx.mech,
                &SqueezeState::vacuum(),
            )
            .unwrap();
        let params =
            FitParams::new(1.0, 400e3, 4.0, 0.331_131_121_482_591_09 * vacuum_floor).unwrap();
        let report = extract_physics(
            &converged_result(params),
            SpectrumUnit::Displacement,
            Some(&ctx),
            None,
        )
        .unwrap();
        let db = report.inferred_squeezing_db.unwrap();
        assert!((db - 4.8).abs() < 1e-9);
    }

    #[test]
    fn shot_normalized_requires_context() {
        let params = FitParams::new(1.0, 400e3, 4.0, 0.5).unwrap();
        assert!(matches!(
            extract_physics(&converged_result(params), SpectrumUnit::ShotNormalized, None, None),
            Err(Error::UnitMismatch(_))
        ));
    }

    #[test]
    fn shot_normalized_with_context() {
        let ctx = ctx();
        let transfer = signal_transfer(&ctx.config, &ctx.mech);
        let amplitude = transfer * 4.0 * BOLTZMANN * 20.0 / 1e-10;
        // floor for vacuum at eta=1, lossless-dark-port formula value
        let floor = 0.5 * (1.0 + 0.81 + 0.19);
        let params = FitParams::new(amplitude, 400e3, 4.0, floor).unwrap();
        let report = extract_physics(
            &converged_result(params),
            SpectrumUnit::ShotNormalized,
            Some(&ctx),
            Some(1e-10),
        )
        .unwrap();
        assert!((report.temperature_k.unwrap() - 20.0).abs() / 20.0 < 1e-12);
        assert!(report.inferred_squeezing_db.unwrap().abs() < 1e-9);
    }

    #[test]
    fn rejects_unconverged_fit() {
        let params = FitParams::new(1.0, 400e3, 4.0, 0.5).unwrap();
        let mut result = converged_result(params);
        result.converged = false;
        assert!(matches!(
            extract_physics(&result, SpectrumUnit::Displacement, None, None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn synthesis_round_trip_recovers_cold_temperature() {
        // T = 20 K fixture at K = 100: recovered within 10%.
        let ctx = ctx();
        let env = ThermalEnvironment::new(20.0).unwrap();
        let grid = FrequencyGrid::new(398e3, 402e3, 16001).unwrap();
        let rec = synth_spectrum(
            &grid,
            &ctx.config,
            &ctx.mech,
            &SqueezeState::vacuum(),
            &env,
            100,
            77,
            SpectrumUnit::Displacement,
        )
        .unwrap();
        let fit = fit_spectrum(&rec, &FitOptions::default()).unwrap();
        let report = extract_physics(
            &fit,
            SpectrumUnit::Displacement,
            Some(&ctx),
            Some(ctx.mech.m_eff()),
        )
        .unwrap();
        let t = report.temperature_k.unwrap();
        assert!((t - 20.0).abs() / 20.0 < 0.1, "recovered T = {t}");
        // vacuum synthesis: inferred squeezing consistent with 0 dB
        assert!(report.inferred_squeezing_db.unwrap().abs() < 0.2);
    }
}
