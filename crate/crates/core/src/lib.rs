//! Hermite-coefficient decay for functions dominated by Gaussians.
//!
//! A function `f` belongs to `E(a, b)` when `|f(x)| ≤ C e^{−ax²/2}` and
//! `|f̂(ξ)| ≤ C e^{−bξ²/2}`. For `ab < 1` its Hermite coefficients satisfy
//! `|⟨f, φₙ⟩| = O(n^{−1/4} A^{n/2})` with
//! `A = √((a+b−2ab)/(a+b+2ab))`, and a complex Gaussian attains the rate.
//! This crate computes the constants, the coefficients (closed form,
//! quadrature and contour integral) and checks the bounds numerically.

pub mod bargmann;
pub mod constants;
pub(crate) mod ddouble;
pub mod decay;
pub mod error;
pub mod function;
pub mod gaussians;
pub mod hermite;
pub mod sequence;
pub mod special;

pub use constants::{
    check_symmetry, decay_rate, derive_mu_nu, solve_lemma21, DecayConstants, GaussianEnvelopePair, LemmaResiduals,
    SymmetryResiduals,
};
pub use error::{Error, Result};
pub use function::{SampledFunction, TestFunction};
pub use gaussians::{check_membership, closed_form_coefficients, extremal_function, ComplexGaussian, MembershipReport};
pub use hermite::{fourier_eigen_check, gauss_hermite, hermite_coefficients, hermite_values, QuadratureRule};
pub use sequence::{CoefficientKind, CoefficientSequence, LogPolar};
