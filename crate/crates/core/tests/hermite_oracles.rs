use num_bigint::BigInt;
use num_complex::Complex64;

use hermdecay::hermite::{gram_matrix, hermite_coefficients_with, required_order};
use hermdecay::special::{ln_gamma, LN_2, LN_PI};
use hermdecay::{
    extremal_function, fourier_eigen_check, gauss_hermite, hermite_coefficients, hermite_values, CoefficientKind,
    CoefficientSequence, ComplexGaussian, GaussianEnvelopePair, TestFunction,
};

/// Integer coefficients of the physicists' polynomial `H_n`.
fn hermite_poly(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(2)];
    for k in 1..n {
        let mut next = vec![BigInt::from(0); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * BigInt::from(2 * k);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `φₙ(p/q)` from the exact value of `qⁿ Hₙ(p/q)` and a log-Γ normalization.
fn phi_exact(n: usize, p: i64, q: i64) -> f64 {
    let coeffs = hermite_poly(n);
    let mut total = BigInt::from(0);
    for (k, c) in coeffs.iter().enumerate() {
        total += c * BigInt::from(p).pow(k as u32) * BigInt::from(q).pow((n - k) as u32);
    }
    let x = p as f64 / q as f64;
    let sign = if total < BigInt::from(0) { -1.0 } else { 1.0 };
    let mag: f64 = bigint_magnitude(&total);
    let log = mag.ln() - n as f64 * (q as f64).ln() - 0.5 * x * x
        - 0.5 * (n as f64 * LN_2 + ln_gamma(n as f64 + 1.0) + 0.5 * LN_PI);
    sign * log.exp()
}

fn bigint_magnitude(v: &BigInt) -> f64 {
    let s = v.magnitude().to_string();
    // leading 17 digits times the decimal exponent
    let lead: f64 = s[..s.len().min(17)].parse().unwrap();
    lead * 10f64.powi((s.len() - s.len().min(17)) as i32)
}

#[test]
fn recurrence_matches_exact_monomial_form() {
    for n in [10usize, 50] {
        for (p, q) in [(1i64, 2i64), (3, 1)] {
            let want = phi_exact(n, p, q);
            let got = hermite_values(n, p as f64 / q as f64)[n];
            assert!(((got - want) / want).abs() < 1e-10, "n={n} x={p}/{q}: {got} vs {want}");
        }
    }
}

#[test]
fn orthonormality_matrix() {
    let rule = gauss_hermite(160).unwrap();
    let g = gram_matrix(40, &rule);
    for (m, row) in g.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-10, "G[{m}][{n}] = {v}");
        }
    }
}

#[test]
fn rule_exactness_on_even_moments() {
    let rule = gauss_hermite(64).unwrap();
    for k in [0i32, 1, 5, 20] {
        let got = rule.integrate_weighted(|x| x.powi(2 * k));
        let want = ln_gamma(k as f64 + 0.5).exp();
        assert!(((got - want) / want).abs() < 1e-10, "k={k}");
    }
}

#[test]
fn basis_and_ground_state_coefficients() {
    let rule = gauss_hermite(required_order(20)).unwrap();
    let phi2 = TestFunction::Expansion(CoefficientSequence::unit(CoefficientKind::HermiteInnerProduct, 2, 20));
    let c = hermite_coefficients(&phi2, 20, &rule).unwrap();
    for (n, e) in c.entries().iter().enumerate() {
        let want = if n == 2 { 1.0 } else { 0.0 };
        assert!((e.abs() - want).abs() < 1e-12, "n={n}");
    }
    let g1 = TestFunction::Gaussian(ComplexGaussian::real(1.0).unwrap());
    let c = hermite_coefficients(&g1, 20, &rule).unwrap();
    assert!((c.entries()[0].abs() - 1.3313353638003897).abs() < 1e-12);
    assert!(c.entries()[1..].iter().all(|e| e.abs() < 1e-12));
}

#[test]
fn extremal_entry_two() {
    let rule = gauss_hermite(required_order(10)).unwrap();
    let g = extremal_function(&GaussianEnvelopePair::new(0.6, 0.6).unwrap()).unwrap();
    let c = hermite_coefficients(&TestFunction::Gaussian(g), 10, &rule).unwrap();
    assert!((c.entries()[2].abs() - 0.49770267841390578).abs() < 1e-12);
    assert!((c.entries()[2].log_abs / std::f64::consts::LN_10 + 0.30303002207042420).abs() < 1e-12);
}

#[test]
fn parseval_for_complex_gaussians() {
    let n_max = 120;
    let rule = gauss_hermite(required_order(n_max)).unwrap();
    for z in [Complex64::new(0.6, 0.8), Complex64::new(0.3, 0.4), Complex64::new(1.5, -0.7)] {
        let g = ComplexGaussian::new(z).unwrap();
        let c = hermite_coefficients(&TestFunction::Gaussian(g), n_max, &rule).unwrap();
        let sum: f64 = c.entries().iter().map(|e| e.abs().powi(2)).sum();
        assert!(sum <= g.norm_sq() * (1.0 + 1e-12));
        assert!((sum - g.norm_sq()).abs() < 1e-8, "z={z}: {sum} vs {}", g.norm_sq());
    }
}

#[test]
fn fourier_eigen_relation() {
    let rule = gauss_hermite(128).unwrap();
    assert!(fourier_eigen_check(0, &rule).unwrap() < 1e-10);
    assert!(fourier_eigen_check(1, &rule).unwrap() < 1e-9);
    for n in 0..=20 {
        let r = fourier_eigen_check(n, &rule).unwrap();
        assert!(r < 1e-8, "n={n}: {r:e}");
    }
}

#[test]
fn low_order_override_runs() {
    let rule = gauss_hermite(40).unwrap();
    let g1 = TestFunction::Gaussian(ComplexGaussian::real(1.0).unwrap());
    assert!(hermite_coefficients(&g1, 30, &rule).is_err());
    let c = hermite_coefficients_with(&g1, 30, &rule, true).unwrap();
    assert_eq!(c.len(), 31);
}
