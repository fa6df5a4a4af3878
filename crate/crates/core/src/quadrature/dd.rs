//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! about 32 significant digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::ratpoly::Rat;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
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

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64) -> Self {
        DD { hi, lo: 0.0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        let Some(exact) = BigInt::from_f64(hi) else {
            return DD::new(hi);
        };
        let lo = (n - exact).to_f64().unwrap_or(0.0);
        let (h, l) = quick_two_sum(hi, lo);
        DD { hi: h, lo: l }
    }

    pub fn from_rat(r: &Rat) -> Self {
        DD::from_bigint(r.numer()) / DD::from_bigint(r.denom())
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DD::new(self.hi.sqrt());
        }
        // one Newton step on the f64 root
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let corr = ((self.hi - p) - e + self.lo) / (2.0 * s);
        let (h, l) = quick_two_sum(s, corr);
        DD { hi: h, lo: l }
    }

    /// Multiplication by `2^k`, exact unless the result leaves the range.
    pub fn ldexp(self, k: i32) -> Self {
        let f = |x: f64| {
            let mut x = x;
            let mut k = k;
            while k > 1000 {
                x *= 2f64.powi(1000);
                k -= 1000;
            }
            while k < -1000 {
                x *= 2f64.powi(-1000);
                k += 1000;
            }
            x * 2f64.powi(k)
        };
        DD { hi: f(self.hi), lo: f(self.lo) }
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> Self {
        DD::new(x)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        self + (-o)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self - o * DD::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DD::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::new(q3)
    }
}

macro_rules! with_f64 {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for DD {
            type Output = DD;
            fn $m(self, o: f64) -> DD {
                self.$m(DD::new(o))
            }
        }
    )*};
}
with_f64!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for DD {
    fn add_assign(&mut self, o: DD) {
        *self = *self + o;
    }
}

impl SubAssign for DD {
    fn sub_assign(&mut self, o: DD) {
        *self = *self - o;
    }
}

impl MulAssign for DD {
    fn mul_assign(&mut self, o: DD) {
        *self = *self * o;
    }
}

impl PartialOrd for DD {
    fn partial_cmp(&self, o: &DD) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&o.lo),
            c => Some(c),
        }
    }
}

impl std::iter::Sum for DD {
    fn sum<I: Iterator<Item = DD>>(iter: I) -> DD {
        iter.fold(DD::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Polynomial with double-double coefficients, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct DDPoly(pub Vec<DD>);

impl DDPoly {
    pub fn from_poly(p: &crate::ratpoly::Poly) -> Self {
        DDPoly(p.coeffs().iter().map(DD::from_rat).collect())
    }

    pub fn eval(&self, x: DD) -> DD {
        self.0.iter().rev().fold(DD::ZERO, |acc, c| acc * x + *c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64()).collect()
    }
}

/// `|a - b| <= tol * max(|a|, |b|)`, in f64.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}
