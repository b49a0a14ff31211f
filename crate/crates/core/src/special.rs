//! Small log-domain helpers shared across modules.

use std::f64::consts::PI;

pub const LN_PI: f64 = 1.1447298858494002;
pub const LN_2: f64 = std::f64::consts::LN_2;

/// ln Γ(x) for x > 0.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln √(2ⁿ n! √π), the modulus of the map between Bargmann Taylor
/// coefficients and Hermite coefficients.
#[inline]
pub fn ln_bargmann_norm(n: usize) -> f64 {
    let n_f = n as f64;
    0.5 * (n_f * LN_2 + ln_gamma(n_f + 1.0) + 0.5 * LN_PI)
}

/// Maps an angle into (−π, π].
pub fn normalize_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// ln Σ exp(xᵢ), ignoring −∞ entries.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + s.ln()
}

/// Weighted least squares with an intercept: minimizes Σ wᵢ (yᵢ − β·[1, xᵢ…])².
/// `design` rows hold the regressors without the intercept column.
pub(crate) fn weighted_least_squares<const P: usize>(
    design: &[[f64; P]],
    y: &[f64],
    w: &[f64],
) -> Option<Vec<f64>> {
    use nalgebra::{DMatrix, DVector};
    let k = P + 1;
    let mut normal = DMatrix::<f64>::zeros(k, k);
    let mut rhs = DVector::<f64>::zeros(k);
    for ((row, &yi), &wi) in design.iter().zip(y).zip(w) {
        let mut full = [1.0; 8];
        full[1..k].copy_from_slice(row);
        for i in 0..k {
            rhs[i] += wi * full[i] * yi;
            for j in 0..k {
                normal[(i, j)] += wi * full[i] * full[j];
            }
        }
    }
    normal.lu().solve(&rhs).map(|v| v.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_normalization_half_open() {
        assert_eq!(normalize_phase(-PI), PI);
        assert_eq!(normalize_phase(PI), PI);
        assert!((normalize_phase(3.0 * PI + 0.1) - (-PI + 0.1)).abs() < 1e-12);
        assert_eq!(normalize_phase(0.0), 0.0);
    }

    #[test]
    fn bargmann_norm_small_n() {
        assert!((ln_bargmann_norm(0).exp() - PI.powf(0.25)).abs() < 1e-15);
        // √(2²·2!·√π) = √8·π^{1/4}
        assert!((ln_bargmann_norm(2).exp() - 3.765585055106859).abs() < 1e-13);
    }

    #[test]
    fn wls_recovers_line() {
        let xs: Vec<[f64; 1]> = (0..10).map(|i| [i as f64]).collect();
        let y: Vec<f64> = xs.iter().map(|x| 2.0 - 0.5 * x[0]).collect();
        let w = vec![1.0; 10];
        let beta = weighted_least_squares(&xs, &y, &w).unwrap();
        assert!((beta[0] - 2.0).abs() < 1e-12 && (beta[1] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn lse_handles_neg_inf() {
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert!((log_sum_exp(&[0.0, 0.0]) - LN_2).abs() < 1e-15);
    }
}
