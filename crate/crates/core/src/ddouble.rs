//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi) / 2`, good for roughly 32 significant digits.
//!
//! Only the operations needed by the quadrature inner products are provided.
//! Coefficients of slowly decaying Gaussians fall to ~1e-10 while the
//! integrand stays O(1), so a plain `f64` accumulation loses the digits the
//! coefficient-path comparisons need.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// Third word of pi/2, used for argument reduction of large phases.
const FRAC_PI_2_LO2: f64 = -1.497384905065873e-33;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };
    pub const LN_PI: Dd = Dd {
        hi: 1.1447298858494002,
        lo: 1.0265951162707826e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = ((self.hi - p) - e) + self.lo;
        Dd::renorm(q1, r / b)
    }

    /// Exact multiplication by `2^k`.
    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        Dd {
            hi: libm::scalbn(self.hi, k),
            lo: libm::scalbn(self.lo, k),
        }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let corr = (((self.hi - p) - e) + self.lo) / (2.0 * s);
        Dd::renorm(s, corr)
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.8 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        // |r| <= ln2/2, then scaled down by 2^10 so a short Taylor series suffices.
        let r = (self - Dd::LN2.mul_f64(k)).ldexp(-10);
        let mut term = r;
        let mut sum = r;
        for j in 2..=11 {
            term = (term * r).div_f64(j as f64);
            sum += term;
        }
        // expm1(2r) = 2 expm1(r) + expm1(r)^2
        for _ in 0..10 {
            sum = sum.ldexp(1) + sum.sqr();
        }
        (sum + Dd::ONE).ldexp(k as i32)
    }

    /// Returns `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.hi / Dd::FRAC_PI_2.hi).round();
        let r = self - Dd::FRAC_PI_2.mul_f64(k) - Dd::from_f64(FRAC_PI_2_LO2 * k);
        let t = r.ldexp(-3);
        let t2 = t.sqr();
        let mut term = t;
        let mut s = t;
        for j in 1..=11 {
            let d = ((2 * j) * (2 * j + 1)) as f64;
            term = -(term * t2).div_f64(d);
            s += term;
        }
        let mut c = (Dd::ONE - s.sqr()).sqrt();
        for _ in 0..3 {
            let s2 = (s * c).ldexp(1);
            c = Dd::ONE - s.sqr().ldexp(1);
            s = s2;
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::renorm(q1, q2) + Dd::from_f64(q3)
    }
}

/// Complex double-double, only what the inner-product accumulators need.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn scale(self, s: Dd) -> CDd {
        CDd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    #[inline]
    pub fn ldexp(self, k: i32) -> CDd {
        CDd {
            re: self.re.ldexp(k),
            im: self.im.ldexp(k),
        }
    }

    #[inline]
    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for CDd {
    type Output = CDd;
    #[inline]
    fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl AddAssign for CDd {
    #[inline]
    fn add_assign(&mut self, o: CDd) {
        *self = *self + o;
    }
}
