use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, int, to_f64, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` multiplies `x^i`. The highest stored coefficient is never
/// zero, so the zero polynomial is the empty vector and structural equality
/// is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x - r`
    pub fn x_minus(r: &Rat) -> Self {
        Poly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Poly {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / int(i as i64 + 1)));
        Poly::new(coeffs)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(s x + t)`, evaluated Horner-style so the result stays exact.
    pub fn compose_affine(&self, s: &Rat, t: &Rat) -> Result<Poly> {
        if s.is_zero() {
            return Err(Error::DegenerateAffine);
        }
        let inner = Poly::new(vec![t.clone(), s.clone()]);
        Ok(self.compose(&inner))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if n < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = d.lead().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible { dividend: self.to_string(), divisor: d.to_string() })
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = r0.lead();
        if l.is_zero() {
            return (r0, s0, t0);
        }
        let inv = l.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(a, b);
        (&a.exact_div(&g).expect("gcd divides") * b).monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::x_minus(r);
        let mut p = self.clone();
        let mut k = 0;
        while let Ok((q, rem)) = p.div_rem(&lin) {
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use proptest::prelude::*;

    #[test]
    fn derivative_power_rule() {
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).derivative(), Poly::from_ints(&[0, 2]));
        assert!(Poly::constant(int(7)).derivative().is_zero());
    }

    #[test]
    fn affine_substitution() {
        // x + 1 under x -> -a(x - b) with a = 1/2, b = 3
        let a = rat(1, 2);
        let b = int(3);
        let p = Poly::from_ints(&[1, 1]);
        let got = p.compose_affine(&-a.clone(), &(&a * &b)).unwrap();
        assert_eq!(got, Poly::new(vec![rat(5, 2), rat(-1, 2)]));
        assert_eq!(p.compose_affine(&Rat::zero(), &int(1)), Err(Error::DegenerateAffine));
    }

    #[test]
    fn evaluation() {
        let legendre2 = Poly::new(vec![rat(-1, 2), Rat::zero(), rat(3, 2)]);
        assert_eq!(legendre2.eval(&int(1)), int(1));
        assert!((legendre2.eval_f64(0.5) + 0.125).abs() < 1e-15);
    }

    #[test]
    fn division_errors() {
        let a = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(a.div_rem(&Poly::zero()), Err(Error::DivisionByZero));
        assert!(matches!(a.exact_div(&Poly::from_ints(&[1, 1])), Err(Error::NotDivisible { .. })));
        let b = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(b.exact_div(&Poly::from_ints(&[1, 1])).unwrap(), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_and_multiplicity() {
        let p = Poly::from_ints(&[-1, 0, 1]) * Poly::from_ints(&[2, 1]);
        let q = Poly::from_ints(&[1, 1]) * Poly::from_ints(&[5, 0, 1]);
        assert_eq!(Poly::gcd(&p, &q), Poly::from_ints(&[1, 1]));
        let r = Poly::from_ints(&[-3, 1]).pow(3) * Poly::from_ints(&[1, 1]);
        assert_eq!(r.root_multiplicity(&int(3)), 3);
        assert_eq!(r.root_multiplicity(&int(2)), 0);
        let (g, s, t) = Poly::ext_gcd(&p, &q);
        assert_eq!(&(&s * &p) + &(&t * &q), g);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::new(vec![rat(-1, 2), Rat::zero(), rat(3, 2)]).to_string(), "3/2*x^2 - 1/2");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-30i64..30, 1i64..9).prop_map(|(n, d)| rat(n, d)), 0..7).prop_map(Poly::new)
    }

    proptest! {
        #[test]
        fn degree_of_product(a in small_poly(), b in small_poly()) {
            let ab = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(ab.degree(), Some(da + db)),
                _ => prop_assert!(ab.is_zero()),
            }
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn division_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }
    }
}
