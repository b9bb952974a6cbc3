//! Decibel/variance calculus for squeezed vacuum in lossy optical chains.
//!
//! The beam-splitter loss model underpins everything here: a field with
//! quadrature variance `V` (shot noise = 1) passing an element of power
//! efficiency `η` exits with variance `η·V + (1 - η)`. Measured
//! squeezing/anti-squeezing pairs therefore pin down both the total
//! efficiency and the intrinsic squeeze parameter of the source.

use crate::error::{Error, Result};

/// Measurement pairs whose anti-squeezing exceeds squeezing by less than
/// this (in dB) are rejected as numerically degenerate: the efficiency
/// becomes unidentifiable as the gap closes.
pub const NEAR_DEGENERATE_GAP_DB: f64 = 1e-3;

/// An ordered chain of lossy elements, each with a power efficiency in
/// (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct LossChain {
    stages: Vec<(String, f64)>,
}

impl LossChain {
    pub fn new(stages: Vec<(String, f64)>) -> Result<Self> {
        for (label, eff) in &stages {
            if !(eff.is_finite() && *eff > 0.0 && *eff <= 1.0) {
                return Err(Error::invalid(format!(
                    "loss stage '{label}' efficiency must be in (0,1], got {eff}"
                )));
            }
        }
        Ok(Self { stages })
    }

    /// Chain of unlabeled stages; labels default to `stage1`, `stage2`, ...
    pub fn from_efficiencies(effs: &[f64]) -> Result<Self> {
        Self::new(
            effs.iter()
                .enumerate()
                .map(|(i, &e)| (format!("stage{}", i + 1), e))
                .collect(),
        )
    }

    pub fn stages(&self) -> &[(String, f64)] {
        &self.stages
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

/// A squeezing/anti-squeezing pair, both in positive dB relative to shot
/// noise (squeezing below, anti-squeezing above).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeMeasurement {
    sqz_db: f64,
    antisqz_db: f64,
}

impl SqueezeMeasurement {
    /// Requires `sqz_db >= 0`, `antisqz_db >= 0` and
    /// `antisqz_db >= sqz_db` (passive loss always leaves the
    /// anti-squeezed quadrature at least as far from shot noise).
    pub fn new(sqz_db: f64, antisqz_db: f64) -> Result<Self> {
        if !sqz_db.is_finite() || sqz_db < 0.0 {
            return Err(Error::invalid("sqz_db must be finite and >= 0"));
        }
        if !antisqz_db.is_finite() || antisqz_db < 0.0 {
            return Err(Error::invalid("antisqz_db must be finite and >= 0"));
        }
        if antisqz_db < sqz_db {
            return Err(Error::invalid(
                "antisqz_db must be >= sqz_db (loss cannot leave anti-squeezing below squeezing)",
            ));
        }
        Ok(Self { sqz_db, antisqz_db })
    }

    pub fn sqz_db(&self) -> f64 {
        self.sqz_db
    }

    pub fn antisqz_db(&self) -> f64 {
        self.antisqz_db
    }
}

/// Variance ratio for a noise suppression of `db` decibels: `10^{-db/10}`.
/// Negative input means amplification above shot noise.
pub fn db_to_factor(db: f64) -> f64 {
    10f64.powf(-db / 10.0)
}

/// Inverse of [`db_to_factor`]: suppression in dB for a variance ratio.
pub fn factor_to_db(factor: f64) -> f64 {
    -10.0 * factor.log10()
}

/// Propagate a quadrature variance `V` (shot noise = 1) through power
/// efficiency `eta`: returns `η·V + (1 - η)`.
pub fn propagate_squeezing(variance_factor: f64, eta: f64) -> f64 {
    eta * variance_factor + (1.0 - eta)
}

/// Squeezing/anti-squeezing pair produced by a source of squeeze parameter
/// `r` seen through total efficiency `eta`. The forward model inverted by
/// [`infer_eta_r`].
pub fn propagate_pair(eta: f64, r: f64) -> Result<SqueezeMeasurement> {
    let s_sqz = propagate_squeezing((-2.0 * r).exp(), eta);
    let s_anti = propagate_squeezing((2.0 * r).exp(), eta);
    SqueezeMeasurement::new(factor_to_db(s_sqz), -factor_to_db(s_anti))
}

/// Invert a measured squeezing/anti-squeezing pair into total detection
/// efficiency and intrinsic squeeze parameter.
///
/// Solves `S_s = 1 - η + η e^{-2r}`, `S_a = 1 - η + η e^{+2r}` in closed
/// form:
///
/// `η = (1 - S_s)(S_a - 1) / (S_a + S_s - 2)`
///
/// and `r = (1/4)·ln((S_a - 1 + η)/(S_s - 1 + η))`. Pairs with an
/// anti-squeezing/squeezing gap below [`NEAR_DEGENERATE_GAP_DB`] are
/// rejected: as the gap closes the solution degenerates (η → 1 or r → 0
/// leave η unidentifiable).
pub fn infer_eta_r(meas: &SqueezeMeasurement) -> Result<(f64, f64)> {
    let gap = meas.antisqz_db - meas.sqz_db;
    if gap < NEAR_DEGENERATE_GAP_DB {
        return Err(Error::NoSolution(format!(
            "anti-squeezing exceeds squeezing by only {gap:.4} dB; \
             the (eta, r) solution is degenerate below {NEAR_DEGENERATE_GAP_DB} dB"
        )));
    }
    let s_sqz = db_to_factor(meas.sqz_db);
    let s_anti = 1.0 / db_to_factor(meas.antisqz_db);
    let eta = (1.0 - s_sqz) * (s_anti - 1.0) / (s_anti + s_sqz - 2.0);
    if !eta.is_finite() || eta <= 0.0 {
        return Err(Error::NoSolution(format!(
            "measurement pair implies non-positive efficiency (eta = {eta})"
        )));
    }
    if eta > 1.0 {
        return Err(Error::NoSolution(format!(
            "measurement pair implies efficiency above unity (eta = {eta})"
        )));
    }
    let residual = 1.0 - eta;
    let ratio = (s_anti - residual) / (s_sqz - residual);
    if !(ratio.is_finite() && ratio >= 1.0) {
        return Err(Error::NoSolution(
            "measurement pair implies a negative squeeze parameter".into(),
        ));
    }
    Ok((eta, 0.25 * ratio.ln()))
}

/// Total efficiency of a loss chain: the product of its stage
/// efficiencies. An empty chain is lossless.
pub fn compose_losses(chain: &LossChain) -> f64 {
    chain.stages.iter().map(|(_, e)| e).product()
}

/// Minimum-fringe power fraction at the output of an interferometer with
/// fringe visibility `contrast`: `(1 - C) / 2`.
pub fn contrast_to_dark_residual(contrast: f64) -> Result<f64> {
    if !(contrast.is_finite() && (0.0..=1.0).contains(&contrast)) {
        return Err(Error::invalid("contrast must be in [0,1]"));
    }
    Ok((1.0 - contrast) / 2.0)
}
