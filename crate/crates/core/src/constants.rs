//! Closed-form constants attached to a Gaussian envelope pair `(a, b)`.
//!
//! For `ab < 1` the Möbius images `μ = (1−a)/(1+a)`, `ν = (1−b)/(1+b)` fix the
//! decay rate `A = √((a+b−2ab)/(a+b+2ab))` and three angles `τ ∈ (−π/4, π/4)`,
//! `θ₀, θ₁ ∈ (0, π/2)` at which the sector bound `A sin(2θ − 2τ)` becomes
//! tangent to the two global Gaussian bounds on the Bargmann transform.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default tolerance for every identity residual.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-12;

/// Width of the band `ab ∈ [1 − NEAR_DEGENERATE_BAND, 1)` flagged as near-degenerate.
pub const NEAR_DEGENERATE_BAND: f64 = 1e-12;

/// Envelope exponents of `|f| ≤ C e^{−a x²/2}` and `|f̂| ≤ C e^{−b ξ²/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianEnvelopePair {
    pub a: f64,
    pub b: f64,
    pub c_env: Option<f64>,
}

impl GaussianEnvelopePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("envelope exponent a = {a} must be positive")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Domain(format!("envelope exponent b = {b} must be positive")));
        }
        Ok(Self { a, b, c_env: None })
    }

    pub fn with_constant(mut self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Domain(format!("envelope constant C = {c} must be non-negative")));
        }
        self.c_env = Some(c);
        Ok(self)
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c_env: self.c_env,
        }
    }

    pub fn product(&self) -> f64 {
        self.a * self.b
    }

    fn require_regime(&self) -> Result<()> {
        let product = self.product();
        if product >= 1.0 {
            return Err(Error::OutOfRegime {
                a: self.a,
                b: self.b,
                product,
            });
        }
        Ok(())
    }
}

/// `(μ, ν)` with `μ = (1−a)/(1+a)`, `ν = (1−b)/(1+b)`.
pub fn derive_mu_nu(pair: &GaussianEnvelopePair) -> (f64, f64) {
    (mobius(pair.a), mobius(pair.b))
}

#[inline]
fn mobius(x: f64) -> f64 {
    (1.0 - x) / (1.0 + x)
}

/// The decay rate `A(a, b)`.
pub fn decay_rate(pair: &GaussianEnvelopePair) -> Result<f64> {
    pair.require_regime()?;
    Ok(rate_unchecked(pair.a, pair.b))
}

#[inline]
fn rate_unchecked(a: f64, b: f64) -> f64 {
    let ab2 = 2.0 * a * b;
    ((a + b - ab2) / (a + b + ab2)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayConstants {
    pub a: f64,
    pub b: f64,
    pub mu: f64,
    pub nu: f64,
    /// The rate `A(a, b)`; Hermite coefficients decay like `A^{n/2}`.
    #[serde(rename = "A")]
    pub rate: f64,
    pub tau: f64,
    pub theta0: f64,
    pub theta1: f64,
    pub m: f64,
    /// `ab` lies within `NEAR_DEGENERATE_BAND` of 1.
    pub near_degenerate: bool,
}

/// Residuals of the identities that define the constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaResiduals {
    /// `A² − (a+b−2ab)/(a+b+2ab)`
    pub rate_ab: f64,
    /// `A² − (μ+ν−2μν)/(2−μ−ν)`
    pub rate_mu_nu: f64,
    /// `A sin(2θ₀−2τ) − μ − (1−μ) sin²θ₀`
    pub theta0_sin: f64,
    /// `2A cos(2θ₀−2τ) − (1−μ) sin 2θ₀`
    pub theta0_cos: f64,
    /// `A sin(2θ₁−2τ) − ν − (1−ν) cos²θ₁`
    pub theta1_sin: f64,
    /// `2A cos(2θ₁−2τ) + (1−ν) sin 2θ₁`
    pub theta1_cos: f64,
    /// `θ₀ < τ + π/4 < θ₁`
    pub ordering_holds: bool,
    /// `|sin² 2θᵢ + cos² 2θᵢ − 1|`, maximum over both angles, for the
    /// (cos, sin) pairs fed to the two-argument arctangent.
    pub unit_circle: f64,
}

impl LemmaResiduals {
    /// The six identity residuals in a fixed order.
    pub fn identities(&self) -> [(&'static str, f64); 6] {
        [
            ("rate_ab", self.rate_ab),
            ("rate_mu_nu", self.rate_mu_nu),
            ("theta0_sin", self.theta0_sin),
            ("theta0_cos", self.theta0_cos),
            ("theta1_sin", self.theta1_sin),
            ("theta1_cos", self.theta1_cos),
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.identities()
            .iter()
            .map(|(_, r)| r.abs())
            .fold(self.unit_circle, f64::max)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.ordering_holds && self.max_abs() < tol
    }
}

/// Solves for `A, τ, θ₀, θ₁` from the explicit construction: τ by arcsine,
/// the θ's by two-argument arctangent of their `(cos 2θ, sin 2θ)` pairs.
pub fn solve_lemma21(pair: &GaussianEnvelopePair) -> Result<DecayConstants> {
    pair.require_regime()?;
    let (a, b) = (pair.a, pair.b);
    let (mu, nu) = derive_mu_nu(pair);
    let rate = rate_unchecked(a, b);

    let s = mu + nu - 2.0 * mu * nu;
    let t = 2.0 - mu - nu;
    let sin_2tau = ((nu - mu) / (s * t).sqrt()).clamp(-1.0, 1.0);
    let tau = 0.5 * sin_2tau.asin();
    let (sin_2tau, cos_2tau) = (2.0 * tau).sin_cos();

    let [c0, s0] = theta0_pair(mu, rate, sin_2tau, cos_2tau);
    let [c1, s1] = theta1_pair(nu, rate, sin_2tau, cos_2tau);
    let theta0 = 0.5 * s0.atan2(c0);
    let theta1 = 0.5 * s1.atan2(c1);

    Ok(DecayConstants {
        a,
        b,
        mu,
        nu,
        rate,
        tau,
        theta0,
        theta1,
        m: a.min(b),
        near_degenerate: pair.product() >= 1.0 - NEAR_DEGENERATE_BAND,
    })
}

fn theta0_pair(mu: f64, rate: f64, sin_2tau: f64, cos_2tau: f64) -> [f64; 2] {
    [
        ((1.0 - mu) - 2.0 * rate * sin_2tau) / (1.0 + mu),
        2.0 * rate * cos_2tau / (1.0 + mu),
    ]
}

fn theta1_pair(nu: f64, rate: f64, sin_2tau: f64, cos_2tau: f64) -> [f64; 2] {
    [
        ((nu - 1.0) - 2.0 * rate * sin_2tau) / (1.0 + nu),
        2.0 * rate * cos_2tau / (1.0 + nu),
    ]
}

impl DecayConstants {
    pub fn residuals(&self) -> LemmaResiduals {
        let (mu, nu, rate, tau) = (self.mu, self.nu, self.rate, self.tau);
        let (a, b) = (self.a, self.b);
        let (th0, th1) = (self.theta0, self.theta1);
        let r2 = rate * rate;
        let (sin_2tau, cos_2tau) = (2.0 * tau).sin_cos();
        let [c0, s0] = theta0_pair(mu, rate, sin_2tau, cos_2tau);
        let [c1, s1] = theta1_pair(nu, rate, sin_2tau, cos_2tau);
        LemmaResiduals {
            rate_ab: r2 - (a + b - 2.0 * a * b) / (a + b + 2.0 * a * b),
            rate_mu_nu: r2 - (mu + nu - 2.0 * mu * nu) / (2.0 - mu - nu),
            theta0_sin: rate * (2.0 * th0 - 2.0 * tau).sin() - mu - (1.0 - mu) * th0.sin().powi(2),
            theta0_cos: 2.0 * rate * (2.0 * th0 - 2.0 * tau).cos() - (1.0 - mu) * (2.0 * th0).sin(),
            theta1_sin: rate * (2.0 * th1 - 2.0 * tau).sin() - nu - (1.0 - nu) * th1.cos().powi(2),
            theta1_cos: 2.0 * rate * (2.0 * th1 - 2.0 * tau).cos() + (1.0 - nu) * (2.0 * th1).sin(),
            ordering_holds: th0 < tau + FRAC_PI_4 && tau + FRAC_PI_4 < th1,
            unit_circle: (c0 * c0 + s0 * s0 - 1.0)
                .abs()
                .max((c1 * c1 + s1 * s1 - 1.0).abs()),
        }
    }

    /// `(μ+ν−2μν)(2−μ−ν) − (ν−μ)²`, which equals `2(1−μ)(1−ν)(μ+ν) > 0`
    /// and keeps the arcsine argument inside (−1, 1).
    pub fn arcsine_margin(&self) -> f64 {
        let (mu, nu) = (self.mu, self.nu);
        (mu + nu - 2.0 * mu * nu) * (2.0 - mu - nu) - (nu - mu).powi(2)
    }

    /// Peak direction of the sector bound, `τ + π/4`.
    pub fn peak_angle(&self) -> f64 {
        self.tau + FRAC_PI_4
    }
}

/// Residuals of the swap relations between `(a, b)` and `(b, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryResiduals {
    /// `A(b,a) − A(a,b)`
    pub rate: f64,
    /// `τ(b,a) + τ(a,b)`
    pub tau: f64,
    /// `θ₀(b,a) − (π/2 − θ₁(a,b))`
    pub theta0: f64,
    /// `θ₁(b,a) − (π/2 − θ₀(a,b))`
    pub theta1: f64,
}

impl SymmetryResiduals {
    pub fn as_array(&self) -> [(&'static str, f64); 4] {
        [
            ("rate", self.rate),
            ("tau", self.tau),
            ("theta0", self.theta0),
            ("theta1", self.theta1),
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().map(|(_, r)| r.abs()).fold(0.0, f64::max)
    }
}

pub fn check_symmetry(pair: &GaussianEnvelopePair) -> Result<SymmetryResiduals> {
    let fwd = solve_lemma21(pair)?;
    let rev = solve_lemma21(&pair.swapped())?;
    Ok(SymmetryResiduals {
        rate: rev.rate - fwd.rate,
        tau: rev.tau + fwd.tau,
        theta0: rev.theta0 - (FRAC_PI_2 - fwd.theta1),
        theta1: rev.theta1 - (FRAC_PI_2 - fwd.theta0),
    })
}

/// `n` log-spaced values covering `[lo, hi]`.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// The `n × n` log-spaced grid over `[lo, hi]²`, restricted to `ab ≤ max_product`.
pub fn pair_grid(lo: f64, hi: f64, n: usize, max_product: f64) -> Vec<GaussianEnvelopePair> {
    let axis = log_spaced(lo, hi, n);
    let mut out = Vec::new();
    for &a in &axis {
        for &b in &axis {
            if a * b <= max_product {
                out.push(GaussianEnvelopePair { a, b, c_env: None });
            }
        }
    }
    out
}
