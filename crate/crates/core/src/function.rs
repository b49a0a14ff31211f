//! The functions the library can analyse.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::ddouble::{CDd, Dd};
use crate::error::{Error, Result};
use crate::gaussians::ComplexGaussian;
use crate::hermite::{scaled_hermite, RecurrenceTable};
use crate::sequence::{CoefficientKind, CoefficientSequence, LogPolar};
use crate::special::{LN_2, LN_PI};

#[derive(Debug, Clone)]
pub enum TestFunction {
    /// `x ↦ exp(−z x²/2)`
    Gaussian(ComplexGaussian),
    /// `Σ cₙ φₙ`, coefficients of kind `HermiteInnerProduct`.
    Expansion(CoefficientSequence),
    /// Samples on a grid, cubic-spline interpolated and zero outside the grid.
    /// Lower accuracy than the closed forms.
    Sampled(SampledFunction),
}

/// `mantissa · exp(log_scale)`.
pub(crate) struct ScaledValue {
    pub mantissa: CDd,
    pub log_scale: Dd,
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            TestFunction::Sampled(s) => s.eval(x),
            _ => self.log_eval(x).to_complex(),
        }
    }

    /// `ln|f(x)|` and `arg f(x)`, free of underflow for the closed forms.
    pub fn log_eval(&self, x: f64) -> LogPolar {
        match self {
            TestFunction::Gaussian(g) => g.log_eval(x),
            TestFunction::Expansion(seq) => expansion_log_eval(seq, x),
            TestFunction::Sampled(s) => LogPolar::from_complex(s.eval(x)),
        }
    }

    /// `ln|f̂(ξ)|` and `arg f̂(ξ)`.
    pub fn fourier_log_eval(&self, xi: f64) -> Result<LogPolar> {
        match self {
            TestFunction::Gaussian(g) => Ok(g.fourier_log_eval(xi)),
            TestFunction::Expansion(seq) => Ok(expansion_log_eval(&rotate_fourier(seq), xi)),
            TestFunction::Sampled(s) => s.fourier(xi).map(LogPolar::from_complex),
        }
    }

    /// 0 for even, 1 for odd, when known from the representation.
    pub fn parity(&self) -> Option<usize> {
        match self {
            TestFunction::Gaussian(_) => Some(0),
            TestFunction::Expansion(seq) => seq.parity(),
            TestFunction::Sampled(_) => None,
        }
    }

    pub(crate) fn eval_scaled_dd(&self, x: Dd) -> ScaledValue {
        match self {
            TestFunction::Gaussian(g) => {
                let half_x2 = x.sqr().ldexp(-1);
                let (s, c) = (half_x2.mul_f64(-g.z.im)).sin_cos();
                ScaledValue {
                    mantissa: CDd { re: c, im: s },
                    log_scale: half_x2.mul_f64(-g.z.re),
                }
            }
            TestFunction::Expansion(seq) => {
                let n = seq.n_max();
                let table = RecurrenceTable::<Dd>::new(n);
                let h = scaled_hermite(n, x, &table);
                let e_max = h.exponent[n];
                let mut sum = CDd::ZERO;
                for (k, c) in seq.entries().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let cz = c.to_complex();
                    let phi = h.mantissa[k].ldexp(h.exponent[k] - e_max);
                    sum += CDd {
                        re: phi.mul_f64(cz.re),
                        im: phi.mul_f64(cz.im),
                    };
                }
                ScaledValue {
                    mantissa: sum,
                    log_scale: Dd::LN2.mul_f64(e_max as f64) - x.sqr().ldexp(-1) - Dd::LN_PI.ldexp(-2),
                }
            }
            TestFunction::Sampled(s) => {
                let v = s.eval(x.to_f64());
                ScaledValue {
                    mantissa: CDd {
                        re: Dd::from_f64(v.re),
                        im: Dd::from_f64(v.im),
                    },
                    log_scale: Dd::ZERO,
                }
            }
        }
    }
}

fn expansion_log_eval(seq: &CoefficientSequence, x: f64) -> LogPolar {
    let n = seq.n_max();
    let table = RecurrenceTable::<f64>::new(n);
    let h = scaled_hermite(n, x, &table);
    let e_max = h.exponent[n];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut any = false;
    for (k, c) in seq.entries().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        any = true;
        let phi = libm::scalbn(h.mantissa[k], h.exponent[k] - e_max);
        sum += c.to_complex() * phi;
    }
    if !any || sum == Complex64::new(0.0, 0.0) {
        return LogPolar::ZERO;
    }
    LogPolar::new(
        sum.norm().ln() + e_max as f64 * LN_2 - 0.5 * x * x - 0.25 * LN_PI,
        sum.arg(),
    )
}

/// `F(Σ cₙ φₙ) = Σ (−i)ⁿ cₙ φₙ`.
fn rotate_fourier(seq: &CoefficientSequence) -> CoefficientSequence {
    seq.map_entries(CoefficientKind::HermiteInnerProduct, |n, c| {
        if c.is_zero() {
            c
        } else {
            LogPolar::new(c.log_abs, c.phase - n as f64 * PI / 2.0)
        }
    })
}

/// Complex samples with a natural cubic spline through them.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
    second_re: Vec<f64>,
    second_im: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain("grid and values differ in length".into()));
        }
        if grid.len() < 4 {
            return Err(Error::Domain("sampled function needs at least 4 points".into()));
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain("sample grid must be strictly ascending".into()));
        }
        let re: Vec<f64> = values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = values.iter().map(|v| v.im).collect();
        let second_re = natural_spline_second_derivatives(&grid, &re);
        let second_im = natural_spline_second_derivatives(&grid, &im);
        Ok(Self {
            grid,
            values,
            second_re,
            second_im,
        })
    }

    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn range(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let (lo, hi) = self.range();
        if !(lo..=hi).contains(&x) {
            return Complex64::new(0.0, 0.0);
        }
        let i = match self.grid.partition_point(|&g| g <= x) {
            0 => 0,
            p => (p - 1).min(self.grid.len() - 2),
        };
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        let cubic = |y0: f64, y1: f64, m0: f64, m1: f64| {
            a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0
        };
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        Complex64::new(
            cubic(v0.re, v1.re, self.second_re[i], self.second_re[i + 1]),
            cubic(v0.im, v1.im, self.second_im[i], self.second_im[i + 1]),
        )
    }

    /// Trapezoidal transform over the sample grid; refuses when the samples
    /// have not decayed at the grid ends.
    pub fn fourier(&self, xi: f64) -> Result<Complex64> {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let ends = self.values[0].norm().max(self.values[self.values.len() - 1].norm());
        if ends > 1e-12 * peak {
            return Err(Error::UnsupportedInput(
                "sampled function does not decay at the grid ends; transform unavailable".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.grid.len() - 1 {
            let h = self.grid[i + 1] - self.grid[i];
            let t0 = self.values[i] * Complex64::from_polar(1.0, -xi * self.grid[i]);
            let t1 = self.values[i + 1] * Complex64::from_polar(1.0, -xi * self.grid[i + 1]);
            acc += (t0 + t1) * (0.5 * h);
        }
        Ok(acc / (2.0 * PI).sqrt())
    }
}

fn natural_spline_second_derivatives(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let diag = 2.0 * (h0 + h1);
        let rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        let denom = diag - h0 * c_prime[i - 1];
        c_prime[i] = h1 / denom;
        d_prime[i] = (rhs - h0 * d_prime[i - 1]) / denom;
    }
    for i in (1..n - 1).rev() {
        m[i] = d_prime[i] - c_prime[i] * m[i + 1];
    }
    m
}

/// Sum of log-polar terms without leaving the log domain.
pub(crate) fn log_polar_sum(terms: &[LogPolar]) -> LogPolar {
    let logs: Vec<f64> = terms.iter().map(|t| t.log_abs).collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return LogPolar::ZERO;
    }
    let sum: Complex64 = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| Complex64::from_polar((t.log_abs - max).exp(), t.phase))
        .sum();
    if sum.norm() == 0.0 {
        return LogPolar::ZERO;
    }
    LogPolar::new(max + sum.norm().ln(), sum.arg())
}
