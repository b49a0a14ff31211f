//! Complex Gaussians `g_z(x) = exp(−z x²/2)`, the extremal member of each
//! class `E(a, b)`, closed-form coefficients and membership checks.

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{solve_lemma21, GaussianEnvelopePair};
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::sequence::{CoefficientKind, CoefficientSequence, LogPolar};
use crate::special::{LN_2, LN_PI};

/// Largest index served by [`closed_form_coefficients`].
pub const CLOSED_FORM_MAX_N: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexGaussian {
    pub(crate) z: Complex64,
}

impl ComplexGaussian {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
            return Err(Error::Domain(format!("Gaussian exponent needs Re z > 0, got {z}")));
        }
        Ok(Self { z })
    }

    pub fn real(c: f64) -> Result<Self> {
        Self::new(Complex64::new(c, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// `(Re z, Re 1/z)`: the exponents of `|g|` and `|ĝ|`.
    pub fn envelope_exponents(&self) -> (f64, f64) {
        (self.z.re, self.z.inv().re)
    }

    /// `ĝ_z = z^{−1/2} g_{1/z}`, principal square root.
    pub fn fourier(&self) -> (Complex64, ComplexGaussian) {
        (self.z.sqrt().inv(), ComplexGaussian { z: self.z.inv() })
    }

    /// `β = (1 − z)/(1 + z)`, so that `Bg_z(w) = √(2/(1+z)) exp(β w²/4)`.
    pub fn beta(&self) -> Complex64 {
        (1.0 - self.z) / (1.0 + self.z)
    }

    /// `√(2/(1+z))`, evaluated as `exp(½ log(2/(1+z)))`.
    pub fn bargmann_prefactor(&self) -> Complex64 {
        (0.5 * (2.0 / (1.0 + self.z)).ln()).exp()
    }

    pub fn log_eval(&self, x: f64) -> LogPolar {
        let h = 0.5 * x * x;
        LogPolar::new(-self.z.re * h, -self.z.im * h)
    }

    pub fn fourier_log_eval(&self, xi: f64) -> LogPolar {
        let (scale, hat) = self.fourier();
        let inner = hat.log_eval(xi);
        LogPolar::new(scale.norm().ln() + inner.log_abs, scale.arg() + inner.phase)
    }

    /// `‖g_z‖₂² = √(π / Re z)`.
    pub fn norm_sq(&self) -> f64 {
        (std::f64::consts::PI / self.z.re).sqrt()
    }

    /// `log Bg_z(w)` in log-polar form.
    pub fn bargmann_log(&self, w: Complex64) -> LogPolar {
        let pre = 0.5 * (2.0 / (1.0 + self.z)).ln();
        let e = pre + self.beta() * w * w / 4.0;
        LogPolar::new(e.re, e.im)
    }
}

impl From<ComplexGaussian> for TestFunction {
    fn from(g: ComplexGaussian) -> Self {
        TestFunction::Gaussian(g)
    }
}

/// `exp[−((1 + iAe^{−2iτ})/(1 − iAe^{−2iτ})) x²/2]`, the member of `E(a, b)`
/// whose coefficients decay exactly at rate `A^{n/2}`.
pub fn extremal_function(pair: &GaussianEnvelopePair) -> Result<ComplexGaussian> {
    let k = solve_lemma21(pair)?;
    let beta = Complex64::new(0.0, -k.rate) * Complex64::from_polar(1.0, -2.0 * k.tau);
    ComplexGaussian::new((1.0 - beta) / (1.0 + beta))
}

/// `ln(√((2k)!) / (2^k k!)) = ½ Σ_{j≤k} ln((2j−1)/(2j))`.
fn ln_central_ratio(k: usize) -> f64 {
    0.5 * (1..=k)
        .map(|j| (-1.0 / (2 * j) as f64).ln_1p())
        .sum::<f64>()
}

fn closed_form(g: &ComplexGaussian, n_max: usize, kind: CoefficientKind) -> Result<CoefficientSequence> {
    if n_max > CLOSED_FORM_MAX_N {
        return Err(Error::Domain(format!(
            "closed-form coefficients support n_max <= {CLOSED_FORM_MAX_N}, got {n_max}"
        )));
    }
    let beta = g.beta();
    let pre = 0.5 * (2.0 / (1.0 + g.z)).ln();
    let (ln_beta, arg_beta) = if beta.norm() == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (beta.norm().ln(), beta.arg())
    };
    let mut entries = vec![LogPolar::ZERO; n_max + 1];
    let mut ln_fact = 0.0;
    for k in 0..=n_max / 2 {
        if k > 0 {
            ln_fact += (k as f64).ln();
        }
        if k > 0 && ln_beta == f64::NEG_INFINITY {
            break;
        }
        let power = if k == 0 { 0.0 } else { k as f64 * ln_beta };
        let log_abs = match kind {
            // ⟨g, φ_{2k}⟩ = pre · π^{1/4} √((2k)!) β^k / (2^k k!)
            CoefficientKind::HermiteInnerProduct => pre.re + 0.25 * LN_PI + ln_central_ratio(k) + power,
            // c_{2k} = pre · β^k / (4^k k!)
            CoefficientKind::BargmannTaylor => pre.re + power - 2.0 * k as f64 * LN_2 - ln_fact,
        };
        entries[2 * k] = LogPolar::new(log_abs, pre.im + k as f64 * arg_beta);
    }
    Ok(CoefficientSequence::new(kind, entries))
}

/// `⟨g_z, φₙ⟩` for `n ≤ n_max ≤ 400` in log domain; odd entries are zero.
pub fn closed_form_coefficients(g: &ComplexGaussian, n_max: usize) -> Result<CoefficientSequence> {
    closed_form(g, n_max, CoefficientKind::HermiteInnerProduct)
}

/// Taylor coefficients of `Bg_z(w) = √(2/(1+z)) exp(β w²/4)`.
pub fn closed_form_taylor(g: &ComplexGaussian, n_max: usize) -> Result<CoefficientSequence> {
    closed_form(g, n_max, CoefficientKind::BargmannTaylor)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub pair: GaussianEnvelopePair,
    pub is_member: bool,
    /// Smallest `C` with both dominations on the grids.
    pub witness_constant: f64,
    pub violation_point: Option<f64>,
    pub c_time: f64,
    pub c_freq: f64,
}

/// Slope threshold of the log-ratio over the outer quarter of a grid above
/// which the ratio is treated as unbounded.
pub const DIVERGENCE_SLOPE: f64 = 1e-3;

/// Grid half-widths required by [`check_membership`].
pub fn required_extent(pair: &GaussianEnvelopePair) -> (f64, f64) {
    (12.0 / pair.a.min(1.0).sqrt(), 12.0 / pair.b.min(1.0).sqrt())
}

/// Symmetric grids of 801 points with the required extents.
pub fn default_grids(pair: &GaussianEnvelopePair) -> (Vec<f64>, Vec<f64>) {
    let (lx, lxi) = required_extent(pair);
    let grid = |l: f64| (0..=800).map(|i| -l + 2.0 * l * i as f64 / 800.0).collect();
    (grid(lx), grid(lxi))
}

struct SideResult {
    log_c: f64,
    violation: Option<f64>,
}

fn examine_side(points: &[(f64, f64)]) -> SideResult {
    // points: (x, ln|f(x)| + a x²/2), finite values only
    let log_c = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut by_abs: Vec<(f64, f64)> = points.iter().map(|&(x, r)| (x.abs(), r)).collect();
    by_abs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let outer = &by_abs[by_abs.len() - by_abs.len() / 4..];
    if outer.len() < 2 {
        return SideResult { log_c, violation: None };
    }
    let n = outer.len() as f64;
    let mx = outer.iter().map(|p| p.0).sum::<f64>() / n;
    let my = outer.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = outer.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = outer.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let violation = (slope > DIVERGENCE_SLOPE).then(|| {
        let (i, _) = points
            .iter()
            .enumerate()
            .max_by(|p, q| p.1 .1.total_cmp(&q.1 .1))
            .expect("non-empty");
        points[i].0
    });
    SideResult { log_c, violation }
}

/// Decides `f ∈ E(a, b)` on finite grids: `C` is the supremum of the ratios
/// `|f(x)|/g_a(x)` and `|f̂(ξ)|/g_b(ξ)`, and a ratio whose logarithm keeps
/// rising over the outer quarter of its grid counts as a violation.
pub fn check_membership(
    f: &TestFunction,
    pair: &GaussianEnvelopePair,
    x_grid: &[f64],
    xi_grid: &[f64],
) -> Result<MembershipReport> {
    let (lx, lxi) = required_extent(pair);
    let reach = |g: &[f64]| g.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if reach(x_grid) < lx * (1.0 - 1e-12) || reach(xi_grid) < lxi * (1.0 - 1e-12) {
        return Err(Error::Domain(format!(
            "membership grids must reach |x| >= {lx:.4} and |xi| >= {lxi:.4}"
        )));
    }
    let time: Vec<(f64, f64)> = x_grid
        .iter()
        .map(|&x| (x, f.log_eval(x).log_abs + 0.5 * pair.a * x * x))
        .filter(|p| p.1.is_finite())
        .collect();
    let mut freq = Vec::with_capacity(xi_grid.len());
    for &xi in xi_grid {
        let v = f.fourier_log_eval(xi)?.log_abs + 0.5 * pair.b * xi * xi;
        if v.is_finite() {
            freq.push((xi, v));
        }
    }
    let t = examine_side(&time);
    let s = examine_side(&freq);
    let c_time = t.log_c.exp();
    let c_freq = s.log_c.exp();
    let witness = c_time.max(c_freq);
    let mut violation = t.violation.or(s.violation);
    if violation.is_none() {
        if let Some(c) = pair.c_env {
            if witness > c * (1.0 + 1e-9) {
                violation = Some(if c_time >= c_freq {
                    arg_max(&time)
                } else {
                    arg_max(&freq)
                });
            }
        }
    }
    Ok(MembershipReport {
        pair: *pair,
        is_member: violation.is_none(),
        witness_constant: witness,
        violation_point: violation,
        c_time,
        c_freq,
    })
}

fn arg_max(points: &[(f64, f64)]) -> f64 {
    points
        .iter()
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .map(|p| p.0)
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn envelope_examples() {
        let g = ComplexGaussian::new(Complex64::new(0.3, 0.4)).unwrap();
        let (a, b) = g.envelope_exponents();
        assert!((a - 0.3).abs() < 1e-15 && (b - 1.2).abs() < 1e-14);
        assert!(ComplexGaussian::new(Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn fourier_twice_is_identity() {
        let g = ComplexGaussian::new(Complex64::new(0.3, 0.4)).unwrap();
        let (s1, h) = g.fourier();
        let (s2, back) = h.fourier();
        assert!(((s1 * s2) - 1.0).norm() < 1e-12);
        assert!((back.z - g.z).norm() < 1e-14);
        assert!((s1.norm() - 2f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn extremal_examples() {
        let g = extremal_function(&GaussianEnvelopePair::new(0.6, 0.6).unwrap()).unwrap();
        assert!((g.z - Complex64::new(0.6, 0.8)).norm() < 1e-12);
        let g = extremal_function(&GaussianEnvelopePair::new(0.3, 1.2).unwrap()).unwrap();
        assert!((g.z - Complex64::new(0.3, 0.4)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_g1_is_phi0() {
        let g = ComplexGaussian::real(1.0).unwrap();
        let c = closed_form_coefficients(&g, 10).unwrap();
        assert!((c.entries()[0].abs() - PI.powf(0.25)).abs() < 1e-15);
        assert_eq!(c.nonzero_count(), 1);
    }

    #[test]
    fn closed_form_extremal_entry_two() {
        let g = ComplexGaussian::new(Complex64::new(0.6, 0.8)).unwrap();
        let c = closed_form_coefficients(&g, 4).unwrap();
        assert!((c.entries()[2].abs() - 0.49770267841390578).abs() < 1e-14);
        assert!(c.entries()[1].is_zero() && c.entries()[3].is_zero());
        assert!(closed_form_coefficients(&g, 401).is_err());
    }

    #[test]
    fn membership_examples() {
        let pair = GaussianEnvelopePair::new(0.6, 0.6).unwrap();
        let (xg, xig) = default_grids(&pair);
        let ext: TestFunction = extremal_function(&pair).unwrap().into();
        let r = check_membership(&ext, &pair, &xg, &xig).unwrap();
        assert!(r.is_member);
        assert!((r.c_time - 1.0).abs() < 1e-12);

        let g1: TestFunction = ComplexGaussian::real(1.0).unwrap().into();
        let r = check_membership(&g1, &pair, &xg, &xig).unwrap();
        assert!(r.is_member && (r.witness_constant - 1.0).abs() < 1e-12);

        let g04: TestFunction = ComplexGaussian::real(0.4).unwrap().into();
        let r = check_membership(&g04, &pair, &xg, &xig).unwrap();
        assert!(!r.is_member && r.violation_point.is_some());

        assert!(check_membership(&g1, &pair, &[0.0, 1.0], &xig).is_err());
    }
}
