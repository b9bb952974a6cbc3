//! Sampled spectra: frequency grids, unit flags and record metadata.
//!
//! Frequencies at this boundary are in Hz. Displacement-referred PSD
//! values are densities over Hz obtained from the internal angular
//! densities via `S(f) = 2π · S_x(Ω = 2πf)`; shot-noise-normalized values
//! are dimensionless ratios and carry no conversion factor.

use crate::error::{Error, Result};

/// Conversion factor between internal angular PSDs (m²·s/rad) and the
/// Hz-referred displacement values stored in records.
pub const ANGULAR_TO_HZ: f64 = 2.0 * std::f64::consts::PI;

/// Unit flag of a [`SpectrumRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumUnit {
    /// Displacement-referred PSD, m²/Hz.
    Displacement,
    /// Shot-noise-normalized PSD, dimensionless.
    ShotNormalized,
}

impl SpectrumUnit {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumUnit::Displacement => "displacement",
            SpectrumUnit::ShotNormalized => "shot-normalized",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "displacement" => Ok(SpectrumUnit::Displacement),
            "shot-normalized" => Ok(SpectrumUnit::ShotNormalized),
            other => Err(Error::invalid(format!(
                "unit must be 'displacement' or 'shot-normalized', got '{other}'"
            ))),
        }
    }
}

/// Grid spacing. Only linear grids are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridSpacing {
    #[default]
    Linear,
}

/// A strictly increasing linear frequency grid in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    start_hz: f64,
    stop_hz: f64,
    n_points: usize,
    spacing: GridSpacing,
}

impl FrequencyGrid {
    pub fn new(start_hz: f64, stop_hz: f64, n_points: usize) -> Result<Self> {
        if !(start_hz.is_finite() && start_hz >= 0.0) {
            return Err(Error::invalid("grid.start_hz must be finite and >= 0"));
        }
        if !(stop_hz.is_finite() && stop_hz > start_hz) {
            return Err(Error::invalid("grid.stop_hz must be finite and > start_hz"));
        }
        if n_points < 2 {
            return Err(Error::invalid("grid.n_points must be >= 2"));
        }
        Ok(Self {
            start_hz,
            stop_hz,
            n_points,
            spacing: GridSpacing::Linear,
        })
    }

    pub fn start_hz(&self) -> f64 {
        self.start_hz
    }

    pub fn stop_hz(&self) -> f64 {
        self.stop_hz
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> GridSpacing {
        self.spacing
    }

    /// Distance between adjacent grid points, Hz.
    pub fn step_hz(&self) -> f64 {
        (self.stop_hz - self.start_hz) / (self.n_points - 1) as f64
    }

    /// Frequency of bin `i`, Hz.
    pub fn value(&self, i: usize) -> f64 {
        self.start_hz + i as f64 * (self.stop_hz - self.start_hz) / (self.n_points - 1) as f64
    }

    /// All grid frequencies, strictly increasing.
    pub fn values(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.value(i)).collect()
    }
}

/// Descriptive metadata carried alongside a spectrum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RecordMeta {
    /// Label of the bath temperature the spectrum belongs to, e.g. "293K".
    pub temperature_label: Option<String>,
    /// Whether squeezed vacuum was injected.
    pub squeezing_on: Option<bool>,
    /// Name and version of the random generation algorithm, for synthetic
    /// records.
    pub rng: Option<String>,
    /// Free-text provenance.
    pub provenance: Option<String>,
    /// Creation timestamp written by the CLI; suppressed in reproducible
    /// mode.
    pub generated: Option<String>,
}

/// A sampled one-sided PSD on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    grid: FrequencyGrid,
    psd: Vec<f64>,
    unit: SpectrumUnit,
    averages: u32,
    seed: Option<u64>,
    meta: RecordMeta,
}

impl SpectrumRecord {
    /// `psd` must have one strictly positive, finite value per grid point;
    /// `averages` is the periodogram averaging count K >= 1. A record
    /// without a `seed` is a deterministic model curve.
    pub fn new(
        grid: FrequencyGrid,
        psd: Vec<f64>,
        unit: SpectrumUnit,
        averages: u32,
        seed: Option<u64>,
        meta: RecordMeta,
    ) -> Result<Self> {
        if psd.len() != grid.n_points() {
            return Err(Error::invalid(format!(
                "psd length {} does not match grid n_points {}",
                psd.len(),
                grid.n_points()
            )));
        }
        if averages < 1 {
            return Err(Error::invalid("averages must be >= 1"));
        }
        if let Some(i) = psd.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::invalid(format!(
                "psd values must be finite and > 0; bin {i} is {}",
                psd[i]
            )));
        }
        Ok(Self {
            grid,
            psd,
            unit,
            averages,
            seed,
            meta,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn psd(&self) -> &[f64] {
        &self.psd
    }

    pub fn unit(&self) -> SpectrumUnit {
        self.unit
    }

    pub fn averages(&self) -> u32 {
        self.averages
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn meta(&self) -> &RecordMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut RecordMeta {
        &mut self.meta
    }

    /// Index and frequency of the largest bin; ties resolve to the lowest
    /// frequency.
    pub fn argmax(&self) -> (usize, f64) {
        let mut best = 0usize;
        for (i, v) in self.psd.iter().enumerate().skip(1) {
            if *v > self.psd[best] {
                best = i;
            }
        }
        (best, self.grid.value(best))
    }
}
