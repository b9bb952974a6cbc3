//! Synthetic spectra: deterministic model curves and periodogram-faithful
//! noisy realizations.
//!
//! A synthetic bin emulates the average of K exponentially distributed
//! periodogram bins: it is Gamma-distributed with shape K and mean equal
//! to the model value. Bins are independent; randomness is addressed by
//! bin index (see [`crate::rng`]), so generation order does not matter.

use crate::error::{Error, Result};
use crate::model::{
    s_out, s_x_effective, InterferometerConfig, MembraneMechanics, SqueezeState,
    ThermalEnvironment,
};
use crate::rng::{BinRng, ALGORITHM_ID};
use crate::spectrum::{FrequencyGrid, RecordMeta, SpectrumRecord, SpectrumUnit, ANGULAR_TO_HZ};

fn model_value(
    f_hz: f64,
    unit: SpectrumUnit,
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
    env: &ThermalEnvironment,
) -> Result<f64> {
    let omega = ANGULAR_TO_HZ * f_hz;
    match unit {
        SpectrumUnit::Displacement => {
            Ok(ANGULAR_TO_HZ * s_x_effective(omega, config, mech, sqz, env)?)
        }
        SpectrumUnit::ShotNormalized => s_out(omega, config, mech, sqz, env),
    }
}

/// Noiseless model spectrum on `grid`: [`s_x_effective`] scaled to m²/Hz
/// for [`SpectrumUnit::Displacement`] (requires the dark port and
/// `p_in > 0`), or [`s_out`] for [`SpectrumUnit::ShotNormalized`]. The
/// record carries no seed.
pub fn model_curve(
    grid: &FrequencyGrid,
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
    env: &ThermalEnvironment,
    unit: SpectrumUnit,
) -> Result<SpectrumRecord> {
    let psd = grid
        .values()
        .into_iter()
        .map(|f| model_value(f, unit, config, mech, sqz, env))
        .collect::<Result<Vec<f64>>>()?;
    let meta = RecordMeta {
        temperature_label: Some(format!("{}K", env.temperature())),
        squeezing_on: Some(sqz.r() > 0.0),
        ..RecordMeta::default()
    };
    SpectrumRecord::new(grid.clone(), psd, unit, 1, None, meta)
}

/// Noisy synthetic spectrum: every bin is an independent Gamma(K, mean/K)
/// draw around the model curve, emulating a K-segment periodogram
/// average. Bit-for-bit reproducible for a fixed `(seed, grid,
/// parameters)` triple.
pub fn synth_spectrum(
    grid: &FrequencyGrid,
    config: &InterferometerConfig,
    mech: &MembraneMechanics,
    sqz: &SqueezeState,
    env: &ThermalEnvironment,
    averages: u32,
    seed: u64,
    unit: SpectrumUnit,
) -> Result<SpectrumRecord> {
    if averages < 1 {
        return Err(Error::invalid("averages must be >= 1"));
    }
    let shape = averages as f64;
    let psd = grid
        .values()
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let mean = model_value(f, unit, config, mech, sqz, env)?;
            let mut rng = BinRng::new(seed, i as u64);
            Ok(rng.gamma(shape) * mean / shape)
        })
        .collect::<Result<Vec<f64>>>()?;
    let meta = RecordMeta {
        temperature_label: Some(format!("{}K", env.temperature())),
        squeezing_on: Some(sqz.r() > 0.0),
        rng: Some(ALGORITHM_ID.to_string()),
        ..RecordMeta::default()
    };
    SpectrumRecord::new(grid.clone(), psd, unit, averages, Some(seed), meta)
}
