//! Products of Gamma values with rational arguments, `c * 2^e * prod Gamma(a_i)^(+-1)`.
//!
//! Every argument is shifted into `(0, 1]` with the rational Pochhammer
//! factor pulled into `c`, so arguments differing by integers cancel
//! exactly. Only the Gamma values that survive are evaluated in floating
//! point.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{fmt_rat, pochhammer, to_f64, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRatio {
    coefficient: Rat,
    two_exponent: Rat,
    /// Reduced argument in `(0, 1)` to net power. Argument 1 never appears.
    gammas: BTreeMap<Rat, i64>,
}

impl GammaRatio {
    pub fn rational(c: Rat) -> Self {
        GammaRatio { coefficient: c, two_exponent: Rat::zero(), gammas: BTreeMap::new() }
    }

    pub fn one() -> Self {
        GammaRatio::rational(Rat::one())
    }

    /// `Gamma(a)`; fails at the poles `a = 0, -1, -2, ...`.
    pub fn gamma(a: &Rat) -> Result<Self> {
        GammaRatio::one().mul_gamma(a, 1)
    }

    /// `2^e`
    pub fn pow2(e: Rat) -> Self {
        GammaRatio { two_exponent: e, ..GammaRatio::one() }
    }

    /// Multiplies by `Gamma(a)^power`.
    pub fn mul_gamma(mut self, a: &Rat, power: i64) -> Result<Self> {
        let mut f = a.fract();
        if !f.is_positive() {
            f += Rat::one();
        }
        let shift = a - &f;
        let k = shift.to_integer();
        let k: i64 =
            i64::try_from(k).map_err(|_| Error::Numerical(format!("Gamma argument {} too large", fmt_rat(a))))?;
        // Gamma(f + k) = Gamma(f) * (f)_k for k >= 0, Gamma(f) / (a)_{-k} otherwise.
        let factor = if k >= 0 {
            pochhammer(&f, k as usize)
        } else {
            let p = pochhammer(a, (-k) as usize);
            if p.is_zero() {
                return Err(Error::Domain(format!("Gamma has a pole at {}", fmt_rat(a))));
            }
            p.recip()
        };
        self.coefficient *= if power >= 0 {
            num_traits::pow(factor, power as usize)
        } else {
            num_traits::pow(factor.recip(), (-power) as usize)
        };
        if !f.is_one() {
            let e = self.gammas.entry(f.clone()).or_insert(0);
            *e += power;
            if *e == 0 {
                self.gammas.remove(&f);
            }
        }
        Ok(self)
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        self.coefficient *= c;
        self
    }

    pub fn mul(&self, other: &GammaRatio) -> Self {
        let mut out = self.clone();
        out.coefficient *= &other.coefficient;
        out.two_exponent += &other.two_exponent;
        for (a, p) in &other.gammas {
            let e = out.gammas.entry(a.clone()).or_insert(0);
            *e += p;
            if *e == 0 {
                out.gammas.remove(a);
            }
        }
        out
    }

    pub fn recip(&self) -> Result<Self> {
        if self.coefficient.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GammaRatio {
            coefficient: self.coefficient.recip(),
            two_exponent: -self.two_exponent.clone(),
            gammas: self.gammas.iter().map(|(a, p)| (a.clone(), -p)).collect(),
        })
    }

    pub fn div(&self, other: &GammaRatio) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// The exact value when no Gamma factor and no irrational power of 2 survive.
    pub fn as_rational(&self) -> Option<Rat> {
        if !self.gammas.is_empty() || !self.two_exponent.is_integer() {
            return None;
        }
        let e = self.two_exponent.to_integer();
        let e = i32::try_from(e).ok()?;
        let two = Rat::from_integer(2.into());
        let p = if e >= 0 { num_traits::pow(two, e as usize) } else { num_traits::pow(two.recip(), (-e) as usize) };
        Some(&self.coefficient * p)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = to_f64(&self.coefficient) * 2f64.powf(to_f64(&self.two_exponent));
        for (a, p) in &self.gammas {
            v *= statrs::function::gamma::gamma(to_f64(a)).powi(*p as i32);
        }
        v
    }
}
