//! Coefficient sequences stored in log-polar form.

use num_complex::Complex64;
use serde::Serialize;

use crate::special::normalize_phase;

/// A complex number as `(ln |value|, arg value)`. An exact zero has
/// `log_abs = −∞` and phase 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogPolar {
    pub log_abs: f64,
    pub phase: f64,
}

impl LogPolar {
    pub const ZERO: LogPolar = LogPolar {
        log_abs: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn new(log_abs: f64, phase: f64) -> Self {
        if log_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_abs,
            phase: normalize_phase(phase),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Back to a complex number; under- or overflows like `exp`.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_abs.exp(), self.phase)
    }

    pub fn abs(&self) -> f64 {
        self.log_abs.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    /// `⟨f, φₙ⟩`
    HermiteInnerProduct,
    /// `cₙ` in `Bf(w) = Σ cₙ wⁿ`
    BargmannTaylor,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSequence {
    kind: CoefficientKind,
    entries: Vec<LogPolar>,
}

impl CoefficientSequence {
    pub fn new(kind: CoefficientKind, entries: Vec<LogPolar>) -> Self {
        Self { kind, entries }
    }

    pub fn from_complex(kind: CoefficientKind, values: &[Complex64]) -> Self {
        Self::new(kind, values.iter().copied().map(LogPolar::from_complex).collect())
    }

    /// The single basis element `δ_{n,k}` with unit coefficient.
    pub fn unit(kind: CoefficientKind, k: usize, n_max: usize) -> Self {
        let mut entries = vec![LogPolar::ZERO; n_max.max(k) + 1];
        entries[k] = LogPolar::new(0.0, 0.0);
        Self::new(kind, entries)
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn entries(&self) -> &[LogPolar] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Highest stored index.
    pub fn n_max(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<LogPolar> {
        self.entries.get(n).copied()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Indices of non-zero entries, ascending.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// Parity shared by every non-zero entry (0 even, 1 odd), if any.
    pub fn parity(&self) -> Option<usize> {
        let mut it = self.nonzero_indices().into_iter().map(|n| n % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Zero-flags every entry of the given parity.
    pub fn zero_parity(&mut self, parity: usize) {
        for (n, e) in self.entries.iter_mut().enumerate() {
            if n % 2 == parity {
                *e = LogPolar::ZERO;
            }
        }
    }

    pub(crate) fn map_entries(&self, kind: CoefficientKind, f: impl Fn(usize, LogPolar) -> LogPolar) -> Self {
        Self::new(
            kind,
            self.entries.iter().enumerate().map(|(n, &e)| f(n, e)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_flag_round_trip() {
        let z = LogPolar::from_complex(Complex64::new(0.0, 0.0));
        assert!(z.is_zero());
        assert_eq!(z.to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn phase_is_normalized() {
        let p = LogPolar::new(0.0, -std::f64::consts::PI);
        assert_eq!(p.phase, std::f64::consts::PI);
        let c = LogPolar::from_complex(Complex64::new(-2.0, 0.0));
        assert!((c.phase - std::f64::consts::PI).abs() < 1e-15);
        assert!((c.log_abs - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn parity_detection() {
        let s = CoefficientSequence::unit(CoefficientKind::HermiteInnerProduct, 5, 10);
        assert_eq!(s.parity(), Some(1));
        assert_eq!(s.nonzero_count(), 1);
        let mixed = CoefficientSequence::from_complex(
            CoefficientKind::HermiteInnerProduct,
            &[Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)],
        );
        assert_eq!(mixed.parity(), None);
    }
}
