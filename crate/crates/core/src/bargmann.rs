//! The Bargmann transform
//! `Bf(w) = (e^{−w²/4}/√π) ∫ e^{xw} e^{−x²/2} f(x) dx`, its Taylor
//! coefficients by contour integration, the growth bounds along rays and the
//! angular integrals `Iₙ`, `Jₙ`, `Kₙ` that turn those bounds into coefficient
//! decay.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{solve_lemma21, DecayConstants, GaussianEnvelopePair};
use crate::error::{Error, Result};
use crate::function::{log_polar_sum, TestFunction};
use crate::gaussians::{check_membership, default_grids, ComplexGaussian, MembershipReport};
use crate::hermite::{gauss_hermite, gauss_legendre, QuadratureRule};
use crate::sequence::{CoefficientKind, CoefficientSequence, LogPolar};
use crate::special::{ln_bargmann_norm, LN_PI};

/// Largest `|w|² A / 4` accepted for inputs evaluated by quadrature.
pub const ACCURACY_ENVELOPE: f64 = 40.0;

const SAMPLED_ORDER: usize = 256;

/// Evaluates `Bf`, caching the quadrature rule used for sampled inputs.
/// `rate` is the `A` of the accuracy envelope `|w|² A / 4 ≤ 40`.
#[derive(Debug)]
pub struct BargmannEvaluator {
    rate: f64,
    rule: OnceLock<QuadratureRule>,
}

impl Default for BargmannEvaluator {
    fn default() -> Self {
        Self::new(1.0)
    }
}

impl BargmannEvaluator {
    pub fn new(rate: f64) -> Self {
        Self {
            rate,
            rule: OnceLock::new(),
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn eval_log(&self, f: &TestFunction, w: Complex64) -> Result<LogPolar> {
        match f {
            TestFunction::Gaussian(g) => Ok(g.bargmann_log(w)),
            TestFunction::Expansion(seq) => Ok(expansion_bargmann(seq, w)),
            TestFunction::Sampled(_) => {
                let load = w.norm_sqr() * self.rate / 4.0;
                if load > ACCURACY_ENVELOPE {
                    return Err(Error::Range(format!(
                        "|w|^2 A/4 = {load:.3} exceeds the accuracy envelope {ACCURACY_ENVELOPE}"
                    )));
                }
                let rule = self
                    .rule
                    .get_or_init(|| gauss_hermite(SAMPLED_ORDER).expect("fixed order in range"));
                Ok(sampled_bargmann(f, w, rule))
            }
        }
    }
}

/// `Bφₙ(w) = wⁿ / √(2ⁿ n! √π)` summed against the coefficients.
fn expansion_bargmann(seq: &CoefficientSequence, w: Complex64) -> LogPolar {
    let (ln_r, arg) = if w.norm() == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (w.norm().ln(), w.arg())
    };
    let terms: Vec<LogPolar> = seq
        .entries()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if c.is_zero() || (n > 0 && ln_r == f64::NEG_INFINITY) {
                return LogPolar::ZERO;
            }
            let power = if n == 0 { 0.0 } else { n as f64 * ln_r };
            LogPolar::new(c.log_abs + power - ln_bargmann_norm(n), c.phase + n as f64 * arg)
        })
        .collect();
    log_polar_sum(&terms)
}

fn sampled_bargmann(f: &TestFunction, w: Complex64, rule: &QuadratureRule) -> LogPolar {
    let terms: Vec<LogPolar> = rule
        .nodes()
        .iter()
        .zip(rule.scaled_weights())
        .map(|(&x, &wt)| {
            let v = f.log_eval(x);
            if v.is_zero() || wt == 0.0 {
                return LogPolar::ZERO;
            }
            let e = x * w;
            LogPolar::new(wt.ln() + e.re - 0.5 * x * x + v.log_abs, e.im + v.phase)
        })
        .collect();
    let s = log_polar_sum(&terms);
    if s.is_zero() {
        return s;
    }
    let pre = -w * w / 4.0;
    LogPolar::new(s.log_abs + pre.re - 0.5 * LN_PI, s.phase + pre.im)
}

pub fn bargmann_eval_log(f: &TestFunction, w: Complex64) -> Result<LogPolar> {
    BargmannEvaluator::default().eval_log(f, w)
}

pub fn bargmann_eval(f: &TestFunction, w: Complex64) -> Result<Complex64> {
    bargmann_eval_log(f, w).map(|v| v.to_complex())
}

/// Number of trapezoid samples on the circle for coefficient `n`.
pub fn contour_samples(n: usize) -> usize {
    (8 * n + 64).max(256)
}

/// Radius of the circle used for coefficient `n`: `√(2n/A)`, or 1 for `n = 0`.
pub fn contour_radius(n: usize, rate: f64) -> f64 {
    if n == 0 {
        1.0
    } else {
        (2.0 * n as f64 / rate).sqrt()
    }
}

/// Taylor coefficients `cₙ = (1/2πi) ∮ Bf(w) w^{−n−1} dw` by the trapezoidal
/// rule on circles of radius `√(2n/A)`.
pub fn contour_coefficients(f: &TestFunction, n_max: usize, rate: f64) -> Result<CoefficientSequence> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::Domain(format!("contour rate must be positive, got {rate}")));
    }
    if matches!(f, TestFunction::Sampled(_)) && n_max as f64 / 2.0 > ACCURACY_ENVELOPE {
        return Err(Error::Range(format!(
            "contour radius for n = {n_max} leaves the accuracy envelope; use n_max <= {}",
            (2.0 * ACCURACY_ENVELOPE) as usize
        )));
    }
    let eval = BargmannEvaluator::new(rate);
    let mut entries = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rho = contour_radius(n, rate);
        let m = contour_samples(n);
        let mut samples = Vec::with_capacity(m);
        for k in 0..m {
            let t = 2.0 * PI * k as f64 / m as f64;
            let v = eval.eval_log(f, Complex64::from_polar(rho, t))?;
            // e^{−int} folded into the phase; (n·t) reduced modulo 2π exactly
            let turn = ((n * k) % m) as f64 / m as f64;
            samples.push(LogPolar::new(v.log_abs, v.phase - 2.0 * PI * turn));
        }
        let s = log_polar_sum(&samples);
        entries.push(if s.is_zero() {
            s
        } else {
            LogPolar::new(s.log_abs - (m as f64).ln() - n as f64 * rho.ln(), s.phase)
        });
    }
    let mut seq = CoefficientSequence::new(CoefficientKind::BargmannTaylor, entries);
    if let Some(p) = f.parity() {
        seq.zero_parity(1 - p);
    }
    Ok(seq)
}

/// Converts Taylor coefficients of `Bf` into `⟨f, φₙ⟩` via
/// `⟨f, φₙ⟩ = √(2ⁿ n! √π) cₙ`.
pub fn coefficient_relation(seq: &CoefficientSequence) -> Result<CoefficientSequence> {
    if seq.kind() != CoefficientKind::BargmannTaylor {
        return Err(Error::Domain("coefficient relation expects Bargmann Taylor coefficients".into()));
    }
    Ok(seq.map_entries(CoefficientKind::HermiteInnerProduct, |n, c| {
        if c.is_zero() {
            c
        } else {
            LogPolar::new(c.log_abs + ln_bargmann_norm(n), c.phase)
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundTag {
    Eq3,
    Eq4,
    Eq5,
    Eq6,
}

impl BoundTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundTag::Eq3 => "eq3",
            BoundTag::Eq4 => "eq4",
            BoundTag::Eq5 => "eq5",
            BoundTag::Eq6 => "eq6",
        }
    }
}

const SECTOR_SLACK: f64 = 1e-12;

/// Growth exponents per `r²` of the global bounds:
/// `(μ + (1−μ) sin²θ)/4` and `(ν + (1−ν) cos²θ)/4`.
pub fn global_bound_exponents(k: &DecayConstants, theta: f64) -> (f64, f64) {
    let s = theta.sin().powi(2);
    let c = theta.cos().powi(2);
    ((k.mu + (1.0 - k.mu) * s) / 4.0, (k.nu + (1.0 - k.nu) * c) / 4.0)
}

/// The bound that applies at angle `theta`, with its growth exponent per `r²`.
pub fn applicable_bound(k: &DecayConstants, theta: f64) -> (BoundTag, f64) {
    let t = theta.rem_euclid(2.0 * PI);
    let within = |lo: f64, hi: f64| t >= lo - SECTOR_SLACK && t <= hi + SECTOR_SLACK;
    if within(k.theta0, k.theta1) || within(k.theta0 + PI, k.theta1 + PI) {
        return (BoundTag::Eq3, k.rate / 4.0 * (2.0 * t - 2.0 * k.tau).sin());
    }
    if within(2.0 * PI - k.theta1, 2.0 * PI - k.theta0) || within(PI - k.theta1, PI - k.theta0) {
        return (BoundTag::Eq4, k.rate / 4.0 * (-2.0 * t - 2.0 * k.tau).sin());
    }
    let (e5, e6) = global_bound_exponents(k, t);
    if e5 <= e6 {
        (BoundTag::Eq5, e5)
    } else {
        (BoundTag::Eq6, e6)
    }
}

/// `ln(C √(2/(1+m)))`, the prefactor shared by all four bounds.
pub fn log_bound_prefactor(c: f64, k: &DecayConstants) -> f64 {
    c.ln() + 0.5 * (2.0 / (1.0 + k.m)).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayBoundReport {
    pub theta: f64,
    pub r_samples: Vec<f64>,
    pub log_transform: Vec<f64>,
    pub log_bound: Vec<f64>,
    pub max_excess: f64,
    pub applicable_bound: BoundTag,
    /// The envelope constant `C` used.
    pub constant: f64,
}

/// Compares `ln|Bf(re^{iθ})|` with the applicable bound for `r` in
/// `[0, r_max]`. The constant comes from `pair.c_env` when set, otherwise from
/// a membership check on the default grids.
pub fn ray_bound_check(
    f: &TestFunction,
    pair: &GaussianEnvelopePair,
    theta: f64,
    r_max: f64,
    samples: usize,
) -> Result<RayBoundReport> {
    let (xg, xig) = default_grids(pair);
    let membership = check_membership(f, pair, &xg, &xig)?;
    ray_bound_check_with(f, pair, &membership, theta, r_max, samples)
}

/// As [`ray_bound_check`] with a membership report computed by the caller.
pub fn ray_bound_check_with(
    f: &TestFunction,
    pair: &GaussianEnvelopePair,
    membership: &MembershipReport,
    theta: f64,
    r_max: f64,
    samples: usize,
) -> Result<RayBoundReport> {
    if !membership.is_member {
        return Err(Error::NotMember {
            a: pair.a,
            b: pair.b,
            violation_point: membership.violation_point.unwrap_or(f64::NAN),
        });
    }
    if samples < 2 || !(r_max > 0.0) {
        return Err(Error::Domain("ray check needs r_max > 0 and at least 2 samples".into()));
    }
    let k = solve_lemma21(pair)?;
    let c = pair.c_env.unwrap_or(membership.witness_constant);
    let pre = log_bound_prefactor(c, &k);
    let (tag, exponent) = applicable_bound(&k, theta);
    let eval = BargmannEvaluator::new(k.rate);
    let r_samples: Vec<f64> = (0..samples)
        .map(|i| r_max * i as f64 / (samples - 1) as f64)
        .collect();
    let mut log_transform = Vec::with_capacity(samples);
    let mut log_bound = Vec::with_capacity(samples);
    let mut max_excess = f64::NEG_INFINITY;
    for &r in &r_samples {
        let v = eval.eval_log(f, Complex64::from_polar(r, theta))?.log_abs;
        let bound = pre + exponent * r * r;
        max_excess = max_excess.max(v - bound);
        log_transform.push(v);
        log_bound.push(bound);
    }
    Ok(RayBoundReport {
        theta,
        r_samples,
        log_transform,
        log_bound,
        max_excess,
        applicable_bound: tag,
        constant: c,
    })
}

/// `ln|Bf(w)| − (ln C + ½ ln 2 + |w|²/2)`; non-positive for members.
pub fn global_bound_excess(f: &TestFunction, c: f64, w: Complex64) -> Result<f64> {
    let v = bargmann_eval_log(f, w)?.log_abs;
    Ok(v - (c.ln() + 0.5 * std::f64::consts::LN_2 + 0.5 * w.norm_sqr()))
}

/// `| ln|B(F g)(w)| − ln|Bg(−iw)| |` for a complex Gaussian.
pub fn fourier_rotation_residual(g: &ComplexGaussian, w: Complex64) -> f64 {
    let (scale, hat) = g.fourier();
    let lhs = scale.norm().ln() + hat.bargmann_log(w).log_abs;
    let rhs = g.bargmann_log(Complex64::new(0.0, -1.0) * w).log_abs;
    (lhs - rhs).abs()
}

/// Natural logarithms of the angular integrals
/// `Iₙ = ∫₀^{θ₀} exp((μ + (1−μ) sin²t) n / 2A) dt`,
/// `Jₙ = ∫_{θ₀}^{θ₁} exp((n/2) sin(2t − 2τ)) dt`,
/// `Kₙ = ∫_{θ₁}^{π/2} exp((ν + (1−ν) cos²t) n / 2A) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IjkIntegrals {
    pub n: usize,
    pub log_i: f64,
    pub log_j: f64,
    pub log_k: f64,
}

impl IjkIntegrals {
    /// `ln Jₙ − n/2 + ½ ln n`, which tends to `½ ln π`.
    pub fn j_scaling(&self) -> f64 {
        let n = self.n as f64;
        self.log_j - n / 2.0 + 0.5 * n.ln()
    }
}

const PANEL_WIDTH: f64 = 0.01;
const PANEL_POINTS: usize = 20;

/// `ln ∫_lo^hi exp(n·e(t)) dt` by composite Gauss–Legendre with `e^{n/2}`
/// factored out.
fn log_integral(lo: f64, hi: f64, n: f64, exponent: impl Fn(f64) -> f64, gl: &(Vec<f64>, Vec<f64>)) -> f64 {
    if hi <= lo {
        return f64::NEG_INFINITY;
    }
    let panels = ((hi - lo) / PANEL_WIDTH).ceil().max(1.0) as usize;
    let h = (hi - lo) / panels as f64;
    let mut logs = Vec::with_capacity(panels * gl.0.len());
    for p in 0..panels {
        let a = lo + p as f64 * h;
        for (x, w) in gl.0.iter().zip(&gl.1) {
            let t = a + 0.5 * h * (x + 1.0);
            logs.push((0.5 * h * w).ln() + n * (exponent(t) - 0.5));
        }
    }
    crate::special::log_sum_exp(&logs) + n / 2.0
}

pub fn ijk_integrals(pair: &GaussianEnvelopePair, n: usize) -> Result<IjkIntegrals> {
    if n == 0 {
        return Err(Error::Domain("angular integrals need n >= 1".into()));
    }
    let k = solve_lemma21(pair)?;
    let gl = gauss_legendre(PANEL_POINTS);
    let nf = n as f64;
    let a2 = 2.0 * k.rate;
    let log_i = log_integral(0.0, k.theta0, nf, |t| (k.mu + (1.0 - k.mu) * t.sin().powi(2)) / a2, &gl);
    let log_j = log_integral(k.theta0, k.theta1, nf, |t| 0.5 * (2.0 * t - 2.0 * k.tau).sin(), &gl);
    let log_k = log_integral(k.theta1, FRAC_PI_2, nf, |t| (k.nu + (1.0 - k.nu) * t.cos().powi(2)) / a2, &gl);
    Ok(IjkIntegrals { n, log_i, log_j, log_k })
}

/// The ratio bounds `Iₙ/Jₙ ≤ θ₀/(τ+π/4−θ₀)` and `Kₙ/Jₙ ≤ (π/2−θ₁)/(θ₁−τ−π/4)`,
/// returned as `(ln(Iₙ/Jₙ) − ln bound_I, ln(Kₙ/Jₙ) − ln bound_K)`.
pub fn ratio_bound_margins(k: &DecayConstants, ijk: &IjkIntegrals) -> (f64, f64) {
    let peak = k.tau + FRAC_PI_4;
    let bound_i = k.theta0 / (peak - k.theta0);
    let bound_k = (FRAC_PI_2 - k.theta1) / (k.theta1 - peak);
    (ijk.log_i - ijk.log_j - bound_i.ln(), ijk.log_k - ijk.log_j - bound_k.ln())
}

/// `ln Iₙ − ln(θ₀ exp((n/2) sin(2θ₀ − 2τ)))`; non-positive when the bound holds.
pub fn i_bound_margin(k: &DecayConstants, ijk: &IjkIntegrals) -> f64 {
    let n = ijk.n as f64;
    ijk.log_i - (k.theta0.ln() + n / 2.0 * (2.0 * k.theta0 - 2.0 * k.tau).sin())
}
