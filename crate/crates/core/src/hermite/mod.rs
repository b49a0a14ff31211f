//! Hermite functions, quadrature inner products `⟨f, φₙ⟩`, and the Fourier
//! eigen-relation `F φₙ = (−i)ⁿ φₙ` under `f̂(ξ) = (2π)^{−1/2} ∫ f(x) e^{−iξx} dx`.

mod quadrature;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::ddouble::{CDd, Dd};
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::sequence::{CoefficientKind, CoefficientSequence};
use crate::special::{LN_2, LN_PI};

pub use quadrature::{gauss_hermite, QuadratureRule, MAX_ORDER};
pub(crate) use quadrature::gauss_legendre;

/// Extra quadrature nodes beyond `2·n_max` required by [`hermite_coefficients`].
pub const QUADRATURE_MARGIN: usize = 64;

/// Largest index accepted by [`fourier_eigen_check`].
pub const FOURIER_CHECK_MAX_N: usize = 64;

pub fn required_order(n_max: usize) -> usize {
    2 * n_max + QUADRATURE_MARGIN
}

pub(crate) trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_f64(x: f64) -> Self;
    fn sqrt_ratio(num: f64, den: f64) -> Self;
    fn magnitude(self) -> f64;
    fn ldexp(self, k: i32) -> Self;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn sqrt_ratio(num: f64, den: f64) -> Self {
        (num / den).sqrt()
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn ldexp(self, k: i32) -> Self {
        libm::scalbn(self, k)
    }
}

impl Scalar for Dd {
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn sqrt_ratio(num: f64, den: f64) -> Self {
        Dd::from_f64(num).div_f64(den).sqrt()
    }
    fn magnitude(self) -> f64 {
        self.hi.abs()
    }
    fn ldexp(self, k: i32) -> Self {
        Dd::ldexp(self, k)
    }
}

/// Coefficients of the normalized recurrence
/// `φ_{n+1} = x √(2/(n+1)) φₙ − √(n/(n+1)) φ_{n−1}`.
pub(crate) struct RecurrenceTable<T> {
    up: Vec<T>,
    down: Vec<T>,
}

impl<T: Scalar> RecurrenceTable<T> {
    pub(crate) fn new(n_max: usize) -> Self {
        let up = (0..n_max).map(|n| T::sqrt_ratio(2.0, (n + 1) as f64)).collect();
        let down = (0..n_max).map(|n| T::sqrt_ratio(n as f64, (n + 1) as f64)).collect();
        Self { up, down }
    }

    fn len(&self) -> usize {
        self.up.len()
    }
}

/// `φₖ(x) = mantissa[k] · 2^{exponent[k]} · π^{−1/4} e^{−x²/2}`.
pub(crate) struct ScaledHermite<T> {
    pub mantissa: Vec<T>,
    pub exponent: Vec<i32>,
}

const RESCALE_LIMIT: f64 = 1e150;
const RESCALE_BITS: i32 = 498;

/// Runs the recurrence on the polynomial part only, rescaling by powers of two
/// so nothing overflows for large `|x|`.
pub(crate) fn scaled_hermite<T: Scalar>(n_max: usize, x: T, table: &RecurrenceTable<T>) -> ScaledHermite<T> {
    debug_assert!(table.len() >= n_max);
    let mut mantissa = Vec::with_capacity(n_max + 1);
    let mut exponent = Vec::with_capacity(n_max + 1);
    let mut prev = T::from_f64(0.0);
    let mut cur = T::from_f64(1.0);
    let mut e = 0i32;
    mantissa.push(cur);
    exponent.push(e);
    for n in 0..n_max {
        let mut next = x * table.up[n] * cur - table.down[n] * prev;
        if next.magnitude() > RESCALE_LIMIT {
            next = next.ldexp(-RESCALE_BITS);
            cur = cur.ldexp(-RESCALE_BITS);
            e += RESCALE_BITS;
        }
        prev = cur;
        cur = next;
        mantissa.push(cur);
        exponent.push(e);
    }
    ScaledHermite { mantissa, exponent }
}

/// `φ₀(x), …, φ_{n_max}(x)`; entries below the `f64` range come back as 0.
pub fn hermite_values(n_max: usize, x: f64) -> Vec<f64> {
    let table = RecurrenceTable::<f64>::new(n_max);
    let h = scaled_hermite(n_max, x, &table);
    let base = -0.5 * x * x - 0.25 * LN_PI;
    h.mantissa
        .iter()
        .zip(&h.exponent)
        .map(|(&m, &e)| {
            if m == 0.0 {
                0.0
            } else {
                m.signum() * (m.abs().ln() + e as f64 * LN_2 + base).exp()
            }
        })
        .collect()
}

/// `ln|φₙ(x)|` and the sign, for `n = 0..=n_max`.
pub fn hermite_log_values(n_max: usize, x: f64) -> Vec<(f64, f64)> {
    let table = RecurrenceTable::<f64>::new(n_max);
    let h = scaled_hermite(n_max, x, &table);
    let base = -0.5 * x * x - 0.25 * LN_PI;
    h.mantissa
        .iter()
        .zip(&h.exponent)
        .map(|(&m, &e)| (m.abs().ln() + e as f64 * LN_2 + base, m.signum()))
        .collect()
}

/// `⟨f, φₙ⟩` for `n = 0..=n_max` by Gauss–Hermite quadrature, enforcing the
/// order policy `rule.order() ≥ 2·n_max + 64`.
pub fn hermite_coefficients(f: &TestFunction, n_max: usize, rule: &QuadratureRule) -> Result<CoefficientSequence> {
    hermite_coefficients_with(f, n_max, rule, false)
}

/// As [`hermite_coefficients`]; `allow_low_order` skips the order policy.
pub fn hermite_coefficients_with(
    f: &TestFunction,
    n_max: usize,
    rule: &QuadratureRule,
    allow_low_order: bool,
) -> Result<CoefficientSequence> {
    let required = required_order(n_max);
    if !allow_low_order && rule.order() < required {
        return Err(Error::QuadratureOrder {
            order: rule.order(),
            required,
            n_max,
        });
    }

    let table = RecurrenceTable::<Dd>::new(n_max);
    let quarter_ln_pi = Dd::LN_PI.ldexp(-2);
    let mut acc = vec![CDd::ZERO; n_max + 1];

    for (&x, &w) in rule.nodes_dd().iter().zip(rule.scaled_weights_dd()) {
        let value = f.eval_scaled_dd(x);
        if value.mantissa == CDd::ZERO {
            continue;
        }
        let h = scaled_hermite(n_max, x, &table);
        // integrand = w · f(x) · φₙ(x); all exponentials collected into one
        // exponent, split into a power of two and a moderate remainder.
        let log_part = value.log_scale - x.sqr().ldexp(-1) - quarter_ln_pi;
        let shift = (log_part.hi / LN_2).round();
        let base = (log_part - Dd::LN2.mul_f64(shift)).exp();
        let prefactor = value.mantissa.scale(w * base);
        for (n, slot) in acc.iter_mut().enumerate() {
            let exp2 = shift as i64 + h.exponent[n] as i64;
            let exp2 = exp2.clamp(-4000, 4000) as i32;
            *slot += prefactor.scale(h.mantissa[n]).ldexp(exp2);
        }
    }

    let values: Vec<Complex64> = acc.iter().map(|c| c.to_complex()).collect();
    let mut seq = CoefficientSequence::from_complex(CoefficientKind::HermiteInnerProduct, &values);
    if let Some(p) = f.parity() {
        seq.zero_parity(1 - p);
    }
    Ok(seq)
}

/// Gram matrix `G[m][n] = Σ wᵢ e^{xᵢ²} φₘ(xᵢ) φₙ(xᵢ)`.
pub fn gram_matrix(n_max: usize, rule: &QuadratureRule) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; n_max + 1]; n_max + 1];
    for (&x, &w) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let phi = hermite_values(n_max, x);
        for m in 0..=n_max {
            for n in 0..=n_max {
                g[m][n] += w * phi[m] * phi[n];
            }
        }
    }
    g
}

/// Maximum over a ξ-grid of `|(Fφₙ)(ξ) − (−i)ⁿ φₙ(ξ)|`, with `Fφₙ` computed by
/// quadrature of the defining integral.
pub fn fourier_eigen_check(n: usize, rule: &QuadratureRule) -> Result<f64> {
    if n > FOURIER_CHECK_MAX_N {
        return Err(Error::Domain(format!(
            "Fourier eigen check supports n <= {FOURIER_CHECK_MAX_N}, got {n}"
        )));
    }
    let xi_grid: Vec<f64> = (-32..=32).map(|k| k as f64 * 0.25).collect();
    // x = √2·y maps the Gaussian factor of φₙ onto the e^{−y²} weight, leaving
    // a polynomial times e^{−iξx}.
    let s = std::f64::consts::SQRT_2;
    let samples: Vec<(f64, f64)> = rule
        .nodes()
        .iter()
        .zip(rule.scaled_weights())
        .map(|(&y, &w)| (s * y, s * w * hermite_values(n, s * y)[n]))
        .collect();
    let eigen = Complex64::new(0.0, -1.0).powu(n as u32);
    let norm = (2.0 * std::f64::consts::PI).sqrt().recip();
    let mut worst = 0.0f64;
    for &xi in &xi_grid {
        let transform: Complex64 = samples
            .iter()
            .map(|&(x, wphi)| Complex64::from_polar(wphi, -xi * x))
            .sum::<Complex64>()
            * norm;
        let expected = eigen * hermite_values(n, xi)[n];
        worst = worst.max((transform - expected).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phi0_and_phi1_at_origin() {
        let v = hermite_values(3, 0.0);
        assert!((v[0] - PI.powf(-0.25)).abs() < 1e-15);
        assert!((v[0] - 0.751126).abs() < 5e-7);
        assert_eq!(v[1], 0.0);
    }

    #[test]
    fn phi3_normalized() {
        let rule = gauss_hermite(16).unwrap();
        let s = rule.integrate(|x| hermite_values(3, x)[3].powi(2));
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finite_far_out() {
        for &x in &[-40.0, 25.0, 40.0] {
            let v = hermite_values(512, x);
            assert!(v.iter().all(|p| p.is_finite()));
        }
        // still resolves values beyond f64 underflow of the Gaussian factor alone
        let lv = hermite_log_values(512, 40.0);
        assert!(lv[512].0.is_finite() && lv[512].0 < 0.0);
    }

    #[test]
    fn policy_error_and_override() {
        let rule = gauss_hermite(20).unwrap();
        let f = TestFunction::Expansion(CoefficientSequence::unit(CoefficientKind::HermiteInnerProduct, 2, 4));
        let err = hermite_coefficients(&f, 10, &rule).unwrap_err();
        assert!(matches!(err, Error::QuadratureOrder { required: 84, .. }));
        assert!(hermite_coefficients_with(&f, 10, &rule, true).is_ok());
    }

    #[test]
    fn fourier_check_range() {
        let rule = gauss_hermite(32).unwrap();
        assert!(fourier_eigen_check(65, &rule).is_err());
    }
}
