//! Gauss–Hermite rules for the weight `e^{−x²}`.
//!
//! Nodes come from the eigenvalues of the symmetric tridiagonal Jacobi matrix
//! (Golub–Welsch) and are then polished by Newton steps in double-double
//! arithmetic. Weights use the Christoffel form `wᵢ e^{xᵢ²} = 1 / (M φ_{M−1}(xᵢ)²)`,
//! which stays representable where `wᵢ` itself underflows (|x| ≳ 26).

use nalgebra::DMatrix;

use super::{scaled_hermite, RecurrenceTable};
use crate::ddouble::Dd;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 1024;

const NEWTON_STEPS: usize = 3;

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
    nodes_dd: Vec<Dd>,
    scaled_weights_dd: Vec<Dd>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes, strictly ascending and symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights for `e^{−x²}`; the outermost ones underflow to 0 for large orders.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `wᵢ e^{xᵢ²}`, the weights for integrating a plain integrand `∫ g(x) dx`.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    pub(crate) fn nodes_dd(&self) -> &[Dd] {
        &self.nodes_dd
    }

    pub(crate) fn scaled_weights_dd(&self) -> &[Dd] {
        &self.scaled_weights_dd
    }

    /// `Σ wᵢ g(xᵢ) ≈ ∫ g(x) e^{−x²} dx`.
    pub fn integrate_weighted(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * g(x)).sum()
    }

    /// `Σ wᵢ e^{xᵢ²} g(xᵢ) ≈ ∫ g(x) dx`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::Domain(format!(
            "quadrature order {order} outside 1..={MAX_ORDER}"
        )));
    }
    let m = order;
    let jacobi = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut guesses: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    guesses.sort_by(|a, b| a.total_cmp(b));

    let table = RecurrenceTable::<Dd>::new(m);
    let sqrt_2m = Dd::from_f64(2.0 * m as f64).sqrt();
    let half = m.div_ceil(2);

    let mut nodes_dd = vec![Dd::ZERO; m];
    let mut scaled_dd = vec![Dd::ZERO; m];
    let mut weights = vec![0.0; m];

    for i in 0..half {
        let mut x = Dd::from_f64(guesses[i]);
        if m % 2 == 1 && i == half - 1 {
            x = Dd::ZERO;
        } else {
            for _ in 0..NEWTON_STEPS {
                let h = scaled_hermite(m, x, &table);
                let ratio = (h.mantissa[m] / h.mantissa[m - 1]).ldexp(h.exponent[m] - h.exponent[m - 1]);
                x = x - ratio / sqrt_2m;
            }
        }
        let h = scaled_hermite(m - 1, x, &table);
        let mant = h.mantissa[m - 1];
        let e = h.exponent[m - 1];
        let denom = mant.sqr().mul_f64(m as f64);
        // wᵢ e^{xᵢ²} = √π e^{x²} / (M m² 4^e)
        let arg = x.sqr() - Dd::LN2.mul_f64(2.0 * e as f64) + Dd::LN_PI.ldexp(-1);
        let scaled = arg.exp() / denom;
        let w = (Dd::LN_PI.ldexp(-1).exp() / denom).ldexp(-2 * e).to_f64();

        nodes_dd[i] = x;
        scaled_dd[i] = scaled;
        weights[i] = w;
        let j = m - 1 - i;
        nodes_dd[j] = -x;
        scaled_dd[j] = scaled;
        weights[j] = w;
    }

    Ok(QuadratureRule {
        nodes: nodes_dd.iter().map(|d| d.to_f64()).collect(),
        weights,
        scaled_weights: scaled_dd.iter().map(|d| d.to_f64()).collect(),
        nodes_dd,
        scaled_weights_dd: scaled_dd,
    })
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub(crate) fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let m = order;
    let jacobi = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn order_one_and_two() {
        let r = gauss_hermite(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert!((r.weights()[0] - PI.sqrt()).abs() < 1e-15);

        let r = gauss_hermite(2).unwrap();
        let x = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.nodes()[0] + x).abs() < 1e-15 && (r.nodes()[1] - x).abs() < 1e-15);
        for &w in r.weights() {
            assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn order_range_enforced() {
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn weight_sum_order_64() {
        let r = gauss_hermite(64).unwrap();
        let s: f64 = r.weights().iter().sum();
        assert!((s - PI.sqrt()).abs() / PI.sqrt() < 1e-13);
    }

    #[test]
    fn symmetric_and_ascending() {
        let r = gauss_hermite(33).unwrap();
        let n = r.nodes();
        assert!(n.windows(2).all(|w| w[0] < w[1]));
        for i in 0..n.len() {
            assert_eq!(n[i], -n[n.len() - 1 - i]);
            assert_eq!(r.weights()[i], r.weights()[n.len() - 1 - i]);
        }
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
    }
}
