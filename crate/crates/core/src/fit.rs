//! Lorentzian-plus-floor spectrum fitting via damped nonlinear least
//! squares.
//!
//! The model is `A·γ / ((ω_m² - ω²)² + γ² ω²) + floor` with `ω = 2πf`,
//! `ω_m = 2πf_m`, `γ = 2π·gamma_hz`, matching the thermal spectrum shape
//! plus a flat quantum-noise background.
//!
//! Fitting runs in log space twice over: residuals are differences of log
//! spectra by default (periodogram noise is multiplicative, so log
//! residuals are near-homoscedastic), and the four parameters are
//! optimized as logarithms, which enforces positivity without a
//! constrained solver. A Levenberg-Marquardt loop with additive damping
//! drives the optimization; the Jacobian comes from central finite
//! differences with a relative step of 1e-6 per parameter (an absolute
//! step in log-parameter space).

use crate::error::{Error, Result};
use crate::spectrum::SpectrumRecord;

/// Parameters of the Lorentzian-plus-floor model. All strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitParams {
    /// Numerator scale A; `A·γ/(γ²ω_m²)` + floor is the resonance value.
    pub amplitude: f64,
    /// Resonance frequency, Hz.
    pub f_m: f64,
    /// Linewidth γ/2π, Hz.
    pub gamma_hz: f64,
    /// Additive flat background, spectrum units.
    pub floor: f64,
}

impl FitParams {
    pub fn new(amplitude: f64, f_m: f64, gamma_hz: f64, floor: f64) -> Result<Self> {
        let p = Self {
            amplitude,
            f_m,
            gamma_hz,
            floor,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("amplitude", self.amplitude),
            ("f_m", self.f_m),
            ("gamma_hz", self.gamma_hz),
            ("floor", self.floor),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!(
                    "fit parameter {name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn to_log(self) -> [f64; 4] {
        [
            self.amplitude.ln(),
            self.f_m.ln(),
            self.gamma_hz.ln(),
            self.floor.ln(),
        ]
    }

    fn from_log(q: &[f64; 4]) -> Self {
        Self {
            amplitude: q[0].exp(),
            f_m: q[1].exp(),
            gamma_hz: q[2].exp(),
            floor: q[3].exp(),
        }
    }
}

/// Residual space of the least-squares problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitSpace {
    /// Residuals between log spectra, uniform weights.
    #[default]
    Log,
    /// Linear residuals weighted by 1/model.
    Linear,
}

/// Options for [`fit_spectrum`].
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub max_iterations: u32,
    /// Converged when the accepted step changes every parameter by less
    /// than this relative amount...
    pub rel_step_tol: f64,
    /// ...and the cost by less than this relative amount.
    pub rel_cost_tol: f64,
    pub space: FitSpace,
    /// Fit only bins within this many guessed linewidths of the peak
    /// (`None` fits the whole record).
    pub window_half_width_gammas: Option<f64>,
    /// Fraction of all bins added back from outside the window to anchor
    /// the floor.
    pub floor_anchor_fraction: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            rel_step_tol: 1e-8,
            rel_cost_tol: 1e-10,
            space: FitSpace::Log,
            window_half_width_gammas: Some(50.0),
            floor_anchor_fraction: 0.2,
        }
    }
}

/// Outcome of a fit.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub params: FitParams,
    /// Covariance of (amplitude, f_m, gamma_hz, floor), physical units,
    /// scaled by chi²/dof.
    pub covariance: [[f64; 4]; 4],
    pub chi2_per_dof: f64,
    pub iterations: u32,
    pub converged: bool,
}

impl FitResult {
    /// 1-sigma uncertainties: square roots of the covariance diagonal.
    pub fn uncertainties(&self) -> [f64; 4] {
        [
            self.covariance[0][0].max(0.0).sqrt(),
            self.covariance[1][1].max(0.0).sqrt(),
            self.covariance[2][2].max(0.0).sqrt(),
            self.covariance[3][3].max(0.0).sqrt(),
        ]
    }
}

/// Evaluate the Lorentzian-plus-floor model at frequency `f` (Hz).
pub fn lorentzian_model(f: f64, params: &FitParams) -> f64 {
    let omega = 2.0 * std::f64::consts::PI * f;
    let omega_m = 2.0 * std::f64::consts::PI * params.f_m;
    let gamma = 2.0 * std::f64::consts::PI * params.gamma_hz;
    let det = omega_m * omega_m - omega * omega;
    params.amplitude * gamma / (det * det + gamma * gamma * omega * omega) + params.floor
}

/// Data-driven starting point: peak position from the argmax bin, floor
/// from the median, linewidth from interpolated half-maximum crossings
/// (falling back to 5 grid steps when the peak is unresolved).
pub fn initial_guess(spec: &SpectrumRecord) -> Result<FitParams> {
    let psd = spec.psd();
    let n = psd.len();
    if n < 16 {
        return Err(Error::invalid(format!(
            "initial guess requires >= 16 bins, got {n}"
        )));
    }
    let mut sorted: Vec<f64> = psd.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    let (imax, f_m) = spec.argmax();
    let peak = psd[imax];
    if peak / median < 2.0 {
        return Err(Error::FlatSpectrum(format!(
            "peak/median ratio {:.3} below 2; nothing to fit",
            peak / median
        )));
    }

    let floor = median;
    let half = floor + 0.5 * (peak - floor);
    let grid = spec.grid();
    let left = (0..imax).rev().find(|&i| psd[i] < half).map(|i| {
        // crossing between bins i and i+1
        let (y0, y1) = (psd[i], psd[i + 1]);
        grid.value(i) + (half - y0) / (y1 - y0) * grid.step_hz()
    });
    let right = (imax + 1..n).find(|&i| psd[i] < half).map(|i| {
        let (y0, y1) = (psd[i - 1], psd[i]);
        grid.value(i - 1) + (y0 - half) / (y0 - y1) * grid.step_hz()
    });
    let gamma_hz = match (left, right) {
        (Some(l), Some(r)) if r > l => r - l,
        _ => 5.0 * grid.step_hz(),
    };

    let omega_m = 2.0 * std::f64::consts::PI * f_m;
    let gamma = 2.0 * std::f64::consts::PI * gamma_hz;
    let amplitude = (peak - floor) * gamma * omega_m * omega_m;
    FitParams::new(amplitude, f_m, gamma_hz, floor)
}

/// Fit a spectrum starting from [`initial_guess`].
pub fn fit_spectrum(spec: &SpectrumRecord, options: &FitOptions) -> Result<FitResult> {
    let guess = initial_guess(spec)?;
    fit_spectrum_from(spec, guess, options)
}

/// Fit a spectrum from an explicit starting point. The fit window is
/// anchored on the data-derived [`initial_guess`] whenever one exists, so
/// refitting from a converged result reproduces the same bin selection
/// (and therefore the same optimum).
pub fn fit_spectrum_from(
    spec: &SpectrumRecord,
    guess: FitParams,
    options: &FitOptions,
) -> Result<FitResult> {
    guess.validate()?;
    let window_anchor = initial_guess(spec).unwrap_or(guess);
    let idx = select_bins(spec, &window_anchor, options);
    if idx.len() <= 4 {
        return Err(Error::invalid(format!(
            "fit window holds {} bins; need more than 4",
            idx.len()
        )));
    }
    let freqs: Vec<f64> = idx.iter().map(|&i| spec.grid().value(i)).collect();
    let data: Vec<f64> = idx.iter().map(|&i| spec.psd()[i]).collect();
    levenberg_marquardt(&freqs, &data, guess, options)
}

/// Bins used by the fit: everything within the window around the guessed
/// peak, plus an evenly spaced sample of outside bins anchoring the floor.
fn select_bins(spec: &SpectrumRecord, guess: &FitParams, options: &FitOptions) -> Vec<usize> {
    let n = spec.grid().n_points();
    let Some(half_gammas) = options.window_half_width_gammas else {
        return (0..n).collect();
    };
    let half = half_gammas * guess.gamma_hz;
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for i in 0..n {
        if (spec.grid().value(i) - guess.f_m).abs() <= half {
            inside.push(i);
        } else {
            outside.push(i);
        }
    }
    if inside.is_empty() || outside.is_empty() {
        return (0..n).collect();
    }
    let want = ((options.floor_anchor_fraction * n as f64).ceil() as usize).min(outside.len());
    for k in 0..want {
        inside.push(outside[k * outside.len() / want]);
    }
    inside.sort_unstable();
    inside
}

fn residuals(freqs: &[f64], data: &[f64], q: &[f64; 4], space: FitSpace) -> Option<(Vec<f64>, f64)> {
    let p = FitParams::from_log(q);
    if !(p.amplitude.is_finite() && p.f_m.is_finite() && p.gamma_hz.is_finite() && p.floor.is_finite())
    {
        return None;
    }
    let mut r = Vec::with_capacity(freqs.len());
    let mut cost = 0.0;
    for (&f, &y) in freqs.iter().zip(data) {
        let m = lorentzian_model(f, &p);
        if !(m.is_finite() && m > 0.0) {
            return None;
        }
        let ri = match space {
            FitSpace::Log => m.ln() - y.ln(),
            FitSpace::Linear => (m - y) / m,
        };
        r.push(ri);
        cost += ri * ri;
    }
    cost.is_finite().then_some((r, cost))
}

/// Central-difference Jacobian; the absolute step in log-parameter space
/// is a relative step of 1e-6 on each physical parameter.
const JACOBIAN_STEP: f64 = 1e-6;

fn jacobian(freqs: &[f64], data: &[f64], q: &[f64; 4], space: FitSpace) -> Option<Vec<[f64; 4]>> {
    let n = freqs.len();
    let mut jac = vec![[0.0; 4]; n];
    for j in 0..4 {
        let mut qp = *q;
        let mut qm = *q;
        qp[j] += JACOBIAN_STEP;
        qm[j] -= JACOBIAN_STEP;
        let (rp, _) = residuals(freqs, data, &qp, space)?;
        let (rm, _) = residuals(freqs, data, &qm, space)?;
        for i in 0..n {
            jac[i][j] = (rp[i] - rm[i]) / (2.0 * JACOBIAN_STEP);
        }
    }
    Some(jac)
}

fn normal_equations(jac: &[[f64; 4]], r: &[f64]) -> ([[f64; 4]; 4], [f64; 4]) {
    let mut jtj = [[0.0; 4]; 4];
    let mut g = [0.0; 4];
    for (row, &ri) in jac.iter().zip(r) {
        for a in 0..4 {
            g[a] += row[a] * ri;
            for b in a..4 {
                jtj[a][b] += row[a] * row[b];
            }
        }
    }
    for a in 0..4 {
        for b in 0..a {
            jtj[a][b] = jtj[b][a];
        }
    }
    (jtj, g)
}

fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut s = b[row];
        for k in row + 1..4 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
        if !x[row].is_finite() {
            return None;
        }
    }
    Some(x)
}

fn invert4(a: [[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut inv = [[0.0; 4]; 4];
    for col in 0..4 {
        let mut e = [0.0; 4];
        e[col] = 1.0;
        let x = solve4(a, e)?;
        for row in 0..4 {
            inv[row][col] = x[row];
        }
    }
    Some(inv)
}

fn levenberg_marquardt(
    freqs: &[f64],
    data: &[f64],
    guess: FitParams,
    options: &FitOptions,
) -> Result<FitResult> {
    let space = options.space;
    let mut q = guess.to_log();
    let (mut r, mut cost) = residuals(freqs, data, &q, space)
        .ok_or_else(|| Error::domain("model is non-finite at the initial guess"))?;
    let mut jac = jacobian(freqs, data, &q, space)
        .ok_or_else(|| Error::domain("Jacobian is non-finite at the initial guess"))?;
    let (mut jtj, mut g) = normal_equations(&jac, &r);

    let max_diag = (0..4).map(|i| jtj[i][i]).fold(0.0f64, f64::max);
    if !(max_diag.is_finite() && max_diag > 0.0) {
        return Err(Error::SingularMatrix(
            "normal matrix has no positive diagonal".into(),
        ));
    }
    let mut lambda = 1e-3 * max_diag;
    let g0_norm = norm(&g);

    let mut iterations = 0;
    let mut converged = false;
    // Accepted steps below both thresholds count as strikes; a few strikes
    // in a row mean the finite-difference gradient has bottomed out on
    // noisy data and no further progress is available.
    let mut small_step_strikes = 0u32;
    while iterations < options.max_iterations {
        iterations += 1;
        let mut damped = jtj;
        for i in 0..4 {
            damped[i][i] += lambda;
        }
        let neg_g = [-g[0], -g[1], -g[2], -g[3]];
        let Some(step) = solve4(damped, neg_g) else {
            lambda *= 2.0;
            if lambda > 1e120 * max_diag {
                return Err(Error::SingularMatrix(
                    "damped normal matrix remained unsolvable".into(),
                ));
            }
            continue;
        };
        let rel_step = step.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        let q_new = [q[0] + step[0], q[1] + step[1], q[2] + step[2], q[3] + step[3]];
        match residuals(freqs, data, &q_new, space) {
            Some((r_new, cost_new)) if cost_new < cost => {
                let rel_cost = (cost - cost_new) / cost.max(f64::MIN_POSITIVE);
                q = q_new;
                r = r_new;
                cost = cost_new;
                jac = jacobian(freqs, data, &q, space)
                    .ok_or_else(|| Error::domain("Jacobian became non-finite"))?;
                let (a, b) = normal_equations(&jac, &r);
                jtj = a;
                g = b;
                lambda /= 3.0;
                if rel_step < options.rel_step_tol && rel_cost < options.rel_cost_tol {
                    small_step_strikes += 1;
                } else {
                    small_step_strikes = 0;
                }
                if norm(&g) < 1e-6 * g0_norm || small_step_strikes >= 5 {
                    converged = true;
                    break;
                }
            }
            _ => {
                // Rejected. A vanishing proposed step means the damped
                // system cannot improve on the current point: converged.
                if rel_step < options.rel_step_tol {
                    converged = true;
                    break;
                }
                lambda *= 2.0;
                if lambda > 1e120 * max_diag {
                    break;
                }
            }
        }
    }

    let dof = (freqs.len() - 4) as f64;
    let chi2_per_dof = cost / dof;
    let params = FitParams::from_log(&q);
    let cov_q = invert4(jtj).ok_or_else(|| {
        Error::SingularMatrix("normal matrix at the optimum is singular".into())
    })?;
    let scale = [params.amplitude, params.f_m, params.gamma_hz, params.floor];
    let mut covariance = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            // symmetrize: the column-wise inverse is symmetric only up to
            // rounding
            let c = 0.5 * (cov_q[i][j] + cov_q[j][i]);
            covariance[i][j] = c * chi2_per_dof * scale[i] * scale[j];
        }
    }
    Ok(FitResult {
        params,
        covariance,
        chi2_per_dof,
        iterations,
        converged,
    })
}

fn norm(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
