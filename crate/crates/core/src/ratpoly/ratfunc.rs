use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Reduced quotient of two polynomials: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd"), den.exact_div(&g).expect("gcd"))
            }
        };
        let l = den.lead();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// `num / den`, panicking on a zero denominator. For literals in code.
    pub fn ratio(num: Poly, den: Poly) -> Self {
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if it is one.
    pub fn as_poly(&self) -> Option<Poly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn derivative(&self) -> RatFunc {
        if self.is_poly() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::reduce(n, &self.den * &self.den)
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn powi(&self, k: i32) -> Result<RatFunc> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatFunc::reduce(base.num.pow(e), base.den.pow(e)))
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// `self(s x + t)`
    pub fn compose_affine(&self, s: &Rat, t: &Rat) -> Result<RatFunc> {
        RatFunc::new(self.num.compose_affine(s, t)?, self.den.compose_affine(s, t)?)
    }

    /// Polynomial part and proper remainder: `self = q + r/den`.
    pub fn split_proper(&self) -> (Poly, RatFunc) {
        let (q, r) = self.num.div_rem(&self.den).expect("nonzero denominator");
        (q, RatFunc::reduce(r, self.den.clone()))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num.scale(&self.den.coeff(0).recip()))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(n, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics when dividing by the zero function, like integer division.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    #[test]
    fn normalizes_on_construction() {
        // (2x^2 - 2) / (4x + 4) = (x - 1)/2
        let f = RatFunc::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[4, 4])).unwrap();
        assert!(f.is_poly());
        assert_eq!(f.as_poly().unwrap(), Poly::new(vec![rat(-1, 2), rat(1, 2)]));
        let g = RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 3])).unwrap();
        assert_eq!(g.den(), &Poly::x());
        assert_eq!(g.num(), &Poly::constant(rat(1, 3)));
        assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_and_derivative() {
        let x = RatFunc::from_poly(Poly::x());
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, RatFunc::one());
        // (1/x)' = -1/x^2
        assert_eq!(inv.derivative(), -(&inv * &inv));
        let f = &inv + &RatFunc::constant(int(1));
        assert_eq!(f.eval(&int(2)), Some(rat(3, 2)));
        assert_eq!(f.eval(&int(0)), None);
    }

    #[test]
    fn proper_split() {
        let f = RatFunc::ratio(Poly::from_ints(&[1, 0, 0, 1]), Poly::from_ints(&[0, 1]));
        let (q, r) = f.split_proper();
        assert_eq!(q, Poly::from_ints(&[0, 0, 1]));
        assert_eq!(r, RatFunc::ratio(Poly::one(), Poly::x()));
    }
}
