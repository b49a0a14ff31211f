use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use hermdecay::constants::pair_grid;
use hermdecay::{check_symmetry, decay_rate, derive_mu_nu, solve_lemma21, GaussianEnvelopePair};

fn pair(a: f64, b: f64) -> GaussianEnvelopePair {
    GaussianEnvelopePair::new(a, b).unwrap()
}

/// Root of `h` on `[lo, hi]` by bisection, assuming a sign change.
fn bisect(lo: f64, hi: f64, h: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let s_lo = h(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn theta_angles_match_tangency_roots() {
    // At θ₀ the sector exponent A sin(2θ−2τ) touches μ + (1−μ) sin²θ, so θ₀ is
    // the root of the derivative identity on (0, τ+π/4); likewise θ₁ beyond it.
    for (a, b) in [(0.6, 0.6), (0.3, 1.2), (2.0, 0.25), (0.05, 5.0), (4.0, 0.2)] {
        let k = solve_lemma21(&pair(a, b)).unwrap();
        let peak = k.tau + FRAC_PI_4;
        let d0 = |t: f64| 2.0 * k.rate * (2.0 * t - 2.0 * k.tau).cos() - (1.0 - k.mu) * (2.0 * t).sin();
        let d1 = |t: f64| 2.0 * k.rate * (2.0 * t - 2.0 * k.tau).cos() + (1.0 - k.nu) * (2.0 * t).sin();
        let t0 = bisect(1e-12, peak, d0);
        let t1 = bisect(peak, FRAC_PI_2 - 1e-12, d1);
        assert!((t0 - k.theta0).abs() < 1e-10, "({a},{b}) theta0 {t0} vs {}", k.theta0);
        assert!((t1 - k.theta1).abs() < 1e-10, "({a},{b}) theta1 {t1} vs {}", k.theta1);
    }
}

#[test]
fn frozen_high_precision_values() {
    let (mu, nu) = derive_mu_nu(&pair(0.3, 1.2));
    assert!((mu - 0.538462).abs() < 5e-7 && (nu + 0.090909).abs() < 5e-7);
    assert!((decay_rate(&pair(0.3, 1.2)).unwrap() - 0.592749).abs() < 5e-7);
    let k = solve_lemma21(&pair(0.3, 1.2)).unwrap();
    assert!((k.tau + 0.37657564048109719).abs() < 1e-13);
    assert!((k.theta0 - 0.29849893158617928).abs() < 1e-13);
    assert!((k.theta1 - 0.94200004037946366).abs() < 1e-13);
    let k = solve_lemma21(&pair(2.0, 0.25)).unwrap();
    assert!((k.rate - 0.620174).abs() < 5e-7);
    assert!((k.tau - 0.525825).abs() < 5e-7);
}

#[test]
fn identity_grid() {
    let grid = pair_grid(0.05, 5.0, 20, 0.95);
    assert!(grid.len() > 200);
    for p in &grid {
        let k = solve_lemma21(p).unwrap();
        let r = k.residuals();
        assert!(r.holds(1e-12), "({}, {}) {:?}", p.a, p.b, r);
        assert!(k.arcsine_margin() > 0.0);
        let want = 2.0 * (1.0 - k.mu) * (1.0 - k.nu) * (k.mu + k.nu);
        assert!((k.arcsine_margin() - want).abs() < 1e-12);
        assert!(check_symmetry(p).unwrap().max_abs() < 1e-12);
    }
}

#[test]
fn equal_exponents_reduce_to_single_rate() {
    for i in 1..=50 {
        let a = i as f64 / 51.0;
        let got = decay_rate(&pair(a, a)).unwrap();
        assert!((got - ((1.0 - a) / (1.0 + a)).sqrt()).abs() < 1e-14);
    }
    // A → 0 as ab → 1 along the diagonal
    let near = decay_rate(&pair(0.999, 0.999)).unwrap();
    assert!(near < 0.03);
}

#[test]
fn symmetry_stress_pairs() {
    for (a, b) in [(0.6, 0.6), (0.3, 1.2), (0.05, 5.0)] {
        assert!(check_symmetry(&pair(a, b)).unwrap().max_abs() < 1e-12);
    }
    let k = solve_lemma21(&pair(0.6, 0.6)).unwrap();
    assert!((k.theta0 + k.theta1 - FRAC_PI_2).abs() < 1e-15);
}
