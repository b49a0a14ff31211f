//! Decay of Hermite coefficients: envelope fits, rate estimation, the
//! Stirling step, the sharpness constant of the extremal Gaussian and the
//! converse inclusion for geometrically decaying coefficients.

use serde::Serialize;

use crate::constants::{decay_rate, GaussianEnvelopePair};
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::gaussians::{closed_form_coefficients, extremal_function, CLOSED_FORM_MAX_N};
use crate::sequence::{CoefficientKind, CoefficientSequence, LogPolar};
use crate::special::{ln_gamma, weighted_least_squares, LN_2, LN_PI};

pub const MIN_NONZERO: usize = 10;
pub const MIN_FIT_N_HI: usize = 40;
/// Indices at the end of a sequence used for the excess trend.
pub const TAIL_WINDOW: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeFit {
    pub n_lo: usize,
    pub n_hi: usize,
    /// Per-index slope of `ln|coef|`; `½ ln A` for the extremal family.
    pub fitted_rate: f64,
    /// Exponent of `n`; `−1/4` for the extremal family.
    pub fitted_power: f64,
    /// `exp` of the fitted intercept.
    pub fitted_constant: f64,
    /// `ln C_fit` of the envelope `C_fit n^{−1/4} A^{n/2}`.
    pub envelope_log_constant: f64,
    /// `max_n ln|coef| − [ln C_fit − ¼ ln n + (n/2) ln A]`.
    pub max_envelope_excess: f64,
    /// Least-squares slope of the excess over the last 50 indices.
    pub excess_tail_slope: f64,
}

/// Indices used for fitting: non-zero, `n ≥ 2`, and of the parity carrying
/// the most non-zero entries.
fn fit_indices(seq: &CoefficientSequence) -> Vec<usize> {
    let nz: Vec<usize> = seq.nonzero_indices().into_iter().filter(|&n| n >= 2).collect();
    let even = nz.iter().filter(|&&n| n % 2 == 0).count();
    let parity = if even * 2 >= nz.len() { 0 } else { 1 };
    nz.into_iter().filter(|n| n % 2 == parity).collect()
}

/// `ln|coef_n| − [ln C − ¼ ln n + (n/2) ln A]` at every non-zero `n ≥ 1`.
pub fn envelope_excess(seq: &CoefficientSequence, rate: f64, log_c: f64) -> Vec<(usize, f64)> {
    seq.entries()
        .iter()
        .enumerate()
        .filter(|(n, c)| *n >= 1 && !c.is_zero())
        .map(|(n, c)| {
            let nf = n as f64;
            (n, c.log_abs - (log_c - 0.25 * nf.ln() + 0.5 * nf * rate.ln()))
        })
        .collect()
}

fn slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// Fits `ln|⟨f, φₙ⟩| ≈ α + p ln n + ρ n` by least squares weighted by `n` and
/// measures the excess over the envelope `C n^{−1/4} A(a,b)^{n/2}`.
pub fn theorem13_envelope(seq: &CoefficientSequence, pair: &GaussianEnvelopePair) -> Result<EnvelopeFit> {
    if seq.kind() != CoefficientKind::HermiteInnerProduct {
        return Err(Error::Domain("envelope fit expects Hermite inner products".into()));
    }
    if seq.n_max() < MIN_FIT_N_HI {
        return Err(Error::Domain(format!(
            "envelope fit needs n_max >= {MIN_FIT_N_HI}, got {}",
            seq.n_max()
        )));
    }
    let found = seq.nonzero_count();
    if found < MIN_NONZERO {
        return Err(Error::InsufficientData {
            found,
            required: MIN_NONZERO,
        });
    }
    let rate = decay_rate(pair)?;
    let idx = fit_indices(seq);
    if idx.len() < 3 {
        return Err(Error::InsufficientData {
            found: idx.len(),
            required: 3,
        });
    }
    let design: Vec<[f64; 2]> = idx.iter().map(|&n| [(n as f64).ln(), n as f64]).collect();
    let y: Vec<f64> = idx.iter().map(|&n| seq.entries()[n].log_abs).collect();
    let w: Vec<f64> = idx.iter().map(|&n| n as f64).collect();
    let beta = weighted_least_squares(&design, &y, &w)
        .ok_or(Error::InsufficientData {
            found: idx.len(),
            required: 3,
        })?;

    // envelope constant with the exponents held at -1/4 and (1/2) ln A
    let wsum: f64 = w.iter().sum();
    let log_c = idx
        .iter()
        .zip(&w)
        .map(|(&n, &wn)| {
            let nf = n as f64;
            wn * (seq.entries()[n].log_abs + 0.25 * nf.ln() - 0.5 * nf * rate.ln())
        })
        .sum::<f64>()
        / wsum;
    let excess = envelope_excess(seq, rate, log_c);
    let max_excess = excess.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
    let tail_start = seq.n_max().saturating_sub(TAIL_WINDOW);
    let tail: Vec<(f64, f64)> = excess
        .iter()
        .filter(|e| e.0 >= tail_start)
        .map(|&(n, e)| (n as f64, e))
        .collect();

    Ok(EnvelopeFit {
        n_lo: idx[0],
        n_hi: *idx.last().expect("non-empty"),
        fitted_rate: beta[2],
        fitted_power: beta[1],
        fitted_constant: beta[0].exp(),
        envelope_log_constant: log_c,
        max_envelope_excess: max_excess,
        excess_tail_slope: slope(&tail),
    })
}

/// Geometric rate per index: slopes of `ln|coef|` between consecutive
/// non-zero entries over the last third, extrapolated to `n → ∞` with a
/// first-order `1/n` correction.
pub fn rate_estimate(seq: &CoefficientSequence) -> Result<f64> {
    let found = seq.nonzero_count();
    if found < MIN_NONZERO {
        return Err(Error::InsufficientData {
            found,
            required: MIN_NONZERO,
        });
    }
    let idx = fit_indices(seq);
    let slopes: Vec<(f64, f64)> = idx
        .windows(2)
        .map(|p| {
            let (n, m) = (p[0], p[1]);
            let s = (seq.entries()[m].log_abs - seq.entries()[n].log_abs) / (m - n) as f64;
            (1.0 / ((n + m) as f64 / 2.0 + 1.0), s)
        })
        .collect();
    let tail = &slopes[slopes.len() - slopes.len().div_ceil(3)..];
    if tail.len() < 2 {
        return Err(Error::InsufficientData {
            found: idx.len(),
            required: MIN_NONZERO,
        });
    }
    let b = slope(tail);
    let n = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
    Ok(my - b * mx)
}

/// Remainder of the Stirling step: with `ln cₙ` at its bound
/// `ln(n^{−1/2} (Ae/2n)^{n/2})`, returns
/// `ln cₙ + ½ ln(2ⁿ n! √π) − [−¼ ln n + (n/2) ln A]`, which tends to
/// `¼ ln(2π²)`.
pub fn stirling_conversion(n: usize, rate: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("Stirling conversion needs n >= 2, got {n}")));
    }
    if !(rate > 0.0) {
        return Err(Error::Domain(format!("rate must be positive, got {rate}")));
    }
    let nf = n as f64;
    let log_c = -0.5 * nf.ln() + 0.5 * nf * (rate * std::f64::consts::E / (2.0 * nf)).ln();
    let relation = 0.5 * (nf * LN_2 + ln_gamma(nf + 1.0) + 0.5 * LN_PI);
    let target = -0.25 * nf.ln() + 0.5 * nf * rate.ln();
    Ok(log_c + relation - target)
}

/// `(2/π³)^{1/4}`, the constant printed with the sharpness asymptotic.
pub fn reference_sharpness_constant() -> f64 {
    (2.0 / std::f64::consts::PI.powi(3)).powf(0.25)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub pair: GaussianEnvelopePair,
    /// Extrapolated limit of `|⟨f, φₙ⟩| n^{1/4} A^{−n/2}` over even `n`.
    pub constant_estimate: f64,
    pub paper_constant: f64,
    /// `2^{1/4} |√(2/(1+z))|`, the limit implied by the closed form.
    pub predicted_constant: f64,
    /// `|√(2/(1+z))|`
    pub prefactor: f64,
    /// Largest successive difference over even `n ≥ 100`.
    pub tail_max_difference: f64,
    /// `(n, |⟨f, φₙ⟩| n^{1/4} A^{−n/2})` for even `n ≥ 100`.
    pub samples: Vec<(usize, f64)>,
}

pub const SHARPNESS_TAIL_START: usize = 100;

pub fn sharpness_report(pair: &GaussianEnvelopePair, n_max: usize) -> Result<SharpnessReport> {
    if !(SHARPNESS_TAIL_START..=CLOSED_FORM_MAX_N).contains(&n_max) {
        return Err(Error::Domain(format!(
            "sharpness report needs {SHARPNESS_TAIL_START} <= n_max <= {CLOSED_FORM_MAX_N}, got {n_max}"
        )));
    }
    let rate = decay_rate(pair)?;
    let g = extremal_function(pair)?;
    let seq = closed_form_coefficients(&g, n_max)?;
    let samples: Vec<(usize, f64)> = (SHARPNESS_TAIL_START..=n_max)
        .step_by(2)
        .map(|n| {
            let nf = n as f64;
            (n, (seq.entries()[n].log_abs + 0.25 * nf.ln() - 0.5 * nf * rate.ln()).exp())
        })
        .collect();
    let tail_max_difference = samples
        .windows(2)
        .map(|p| (p[1].1 - p[0].1).abs())
        .fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(n, s)| (1.0 / n as f64, s)).collect();
    let b = slope(&pts);
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let prefactor = g.bargmann_prefactor().norm();
    Ok(SharpnessReport {
        pair: *pair,
        constant_estimate: my - b * mx,
        paper_constant: reference_sharpness_constant(),
        predicted_constant: 2f64.powf(0.25) * prefactor,
        prefactor,
        tail_max_difference,
        samples,
    })
}

/// Smallest `C` with `|f(x)| ≤ C exp(−s x²/2)` on the grid.
pub fn envelope_witness(f: &TestFunction, s: f64, x_grid: &[f64]) -> f64 {
    x_grid
        .iter()
        .map(|&x| f.log_eval(x).log_abs + 0.5 * s * x * x)
        .fold(f64::NEG_INFINITY, f64::max)
        .exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eq1Report {
    pub c_witness: f64,
    /// `tanh(2rt)`
    pub target_exponent: f64,
}

/// Builds `f = Σ_{n ≤ n_max} e^{−2nt} φₙ` and returns the smallest `C` with
/// `|f(x)| ≤ C exp(−tanh(2rt) x²/2)` on the grid.
pub fn eq1_reconstruction_check(t: f64, r: f64, n_max: usize, x_grid: &[f64]) -> Result<Eq1Report> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")));
    }
    let tail = (-2.0 * n_max as f64 * t).exp();
    if tail > 1e-14 {
        return Err(Error::InsufficientTruncation { tail });
    }
    let entries = (0..=n_max).map(|n| LogPolar::new(-2.0 * n as f64 * t, 0.0)).collect();
    let f = TestFunction::Expansion(CoefficientSequence::new(CoefficientKind::HermiteInnerProduct, entries));
    let s = (2.0 * r * t).tanh();
    Ok(Eq1Report {
        c_witness: envelope_witness(&f, s, x_grid),
        target_exponent: s,
    })
}
