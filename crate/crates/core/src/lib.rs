//! Core library for modeling the output spectra of a squeezed-light
//! Michelson-Sagnac interferometer reading out a thermally driven
//! micro-mechanical membrane.
//!
//! The crate is organized around four jobs:
//!
//! * [`model`] — the governing equations: shot-noise-normalized output PSD,
//!   displacement-referred PSD, and the fluctuation-dissipation thermal
//!   spectrum of the membrane, plus their analytic consequences.
//! * [`loss`] — decibel/variance calculus: propagating squeezed vacuum
//!   through lossy chains and inverting squeezing/anti-squeezing pairs
//!   into a total detection efficiency and intrinsic squeeze parameter.
//! * [`synth`] — deterministic model curves and statistically faithful
//!   synthetic spectra (Gamma-distributed periodogram scatter) on a
//!   frequency grid.
//! * [`fit`] / [`extract`] — damped nonlinear least squares for
//!   Lorentzian-plus-floor spectra and conversion of fitted parameters
//!   back into physical quantities (Q, temperature, squeeze level).
//!
//! All PSDs are one-sided. Internally they are densities over angular
//! frequency Ω in rad/s, so that the displacement variance is
//! `(1/2π)·∫ S_x(Ω) dΩ`. At file and CLI boundaries frequencies are in Hz
//! and displacement densities are scaled by 2π (see [`spectrum`]).

pub mod check;
pub mod constants;
pub mod error;
pub mod extract;
pub mod fit;
pub mod loss;
pub mod model;
pub mod quad;
pub mod rng;
pub mod spectrum;
pub mod synth;

pub use error::Error;
pub use extract::{ExtractContext, PhysicsReport};
pub use fit::{FitOptions, FitParams, FitResult, FitSpace};
pub use loss::{LossChain, SqueezeMeasurement};
pub use model::{
    InterferometerConfig, MembraneMechanics, ReadoutQuadrature, SqueezeState, ThermalEnvironment,
};
pub use spectrum::{FrequencyGrid, RecordMeta, SpectrumRecord, SpectrumUnit};
