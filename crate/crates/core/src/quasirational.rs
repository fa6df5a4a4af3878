//! Quasi-rational functions: `C * prod (x - r)^e * exp(s(x)) * R(x)`.
//!
//! Their logarithmic derivative is always a rational function, which is what
//! makes them the natural home for Sturm-Liouville data (`P`, `W`, `R`) and
//! for factorization eigenfunctions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval};
use crate::ratpoly::{as_i64, count_real_roots, fmt_rat, kernel, rational_roots, to_f64, Poly, Rat, RatFunc};

/// Which way a linear factor is written: `(x - r)` or `(r - x)`.
///
/// For non-integer exponents the two are different real functions, and a
/// weight on `(-1, 1)` needs `(1 - x)^a` with a positive base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    XMinusRoot,
    RootMinusX,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerFactor {
    pub root: Rat,
    pub exponent: Rat,
    pub orientation: Orientation,
}

impl PowerFactor {
    pub fn new(root: Rat, exponent: Rat, orientation: Orientation) -> Self {
        PowerFactor { root, exponent, orientation }
    }

    fn base_f64(&self, x: f64) -> f64 {
        let r = to_f64(&self.root);
        match self.orientation {
            Orientation::XMinusRoot => x - r,
            Orientation::RootMinusX => r - x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRational {
    constant: Rat,
    factors: Vec<PowerFactor>,
    exp_part: Poly,
    rational: RatFunc,
}

impl QuasiRational {
    pub fn one() -> Self {
        QuasiRational::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        QuasiRational { constant: c, factors: Vec::new(), exp_part: Poly::zero(), rational: RatFunc::one() }
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        QuasiRational { rational: f, ..QuasiRational::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        QuasiRational::from_ratfunc(RatFunc::from_poly(p))
    }

    /// `(x - root)^exponent` or `(root - x)^exponent`.
    pub fn power(root: Rat, exponent: Rat, orientation: Orientation) -> Self {
        QuasiRational::one().with_power(root, exponent, orientation)
    }

    /// `exp(s(x))`
    pub fn exp(s: Poly) -> Self {
        QuasiRational { exp_part: s, ..QuasiRational::one() }
    }

    pub fn with_power(mut self, root: Rat, exponent: Rat, orientation: Orientation) -> Self {
        self.factors.push(PowerFactor::new(root, exponent, orientation));
        normalize_factors(&mut self.constant, &mut self.factors);
        self
    }

    pub fn constant_factor(&self) -> &Rat {
        &self.constant
    }

    pub fn power_factors(&self) -> &[PowerFactor] {
        &self.factors
    }

    pub fn exp_part(&self) -> &Poly {
        &self.exp_part
    }

    pub fn rational_part(&self) -> &RatFunc {
        &self.rational
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() || self.rational.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuasiRational { constant: &self.constant * c, ..self.clone() }
    }

    pub fn mul(&self, other: &QuasiRational) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut constant = &self.constant * &other.constant;
        normalize_factors(&mut constant, &mut factors);
        QuasiRational {
            constant,
            factors,
            exp_part: &self.exp_part + &other.exp_part,
            rational: &self.rational * &other.rational,
        }
    }

    pub fn mul_ratfunc(&self, f: &RatFunc) -> Self {
        QuasiRational { rational: &self.rational * f, ..self.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuasiRational {
            constant: self.constant.recip(),
            factors: self
                .factors
                .iter()
                .map(|f| PowerFactor::new(f.root.clone(), -f.exponent.clone(), f.orientation))
                .collect(),
            exp_part: -&self.exp_part,
            rational: self.rational.recip()?,
        })
    }

    pub fn div(&self, other: &QuasiRational) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, k: i32) -> Result<Self> {
        let kr = crate::ratpoly::int(k as i64);
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = k.unsigned_abs();
        let mut constant = num_traits::pow(base.constant.clone(), e as usize);
        let mut factors: Vec<PowerFactor> =
            self.factors.iter().map(|f| PowerFactor::new(f.root.clone(), &f.exponent * &kr, f.orientation)).collect();
        normalize_factors(&mut constant, &mut factors);
        Ok(QuasiRational {
            constant,
            factors,
            exp_part: self.exp_part.scale(&kr),
            rational: base.rational.powi(e as i32)?,
        })
    }

    /// `f'/f` as a reduced rational function (zero for the zero function).
    pub fn log_derivative(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let mut acc = RatFunc::from_poly(self.exp_part.derivative());
        for f in &self.factors {
            // d/dx log(r - x) = 1/(x - r) as well
            acc = &acc + &RatFunc::ratio(Poly::constant(f.exponent.clone()), Poly::x_minus(&f.root));
        }
        if !self.rational.is_poly() || !self.rational.num().is_constant() {
            acc = &acc + &(&self.rational.derivative() / &self.rational);
        }
        acc
    }

    /// The quasi-rational `phi` with `phi'/phi = w` and unit constant.
    pub fn from_log_derivative(w: &RatFunc) -> Result<Self> {
        Self::integrate_log_derivative(w, None)
    }

    /// Like [`from_log_derivative`](Self::from_log_derivative), but linear
    /// factors whose root sits at or beyond the right end of `interval` are
    /// written `(r - x)` so that their base is positive on the interval.
    pub fn from_log_derivative_on(w: &RatFunc, interval: &Interval) -> Result<Self> {
        Self::integrate_log_derivative(w, Some(interval))
    }

    fn integrate_log_derivative(w: &RatFunc, interval: Option<&Interval>) -> Result<Self> {
        let (poly_part, proper) = w.split_proper();
        let mut out = QuasiRational::exp(poly_part.integral());
        if proper.is_zero() {
            return Ok(out);
        }
        let den = proper.den().clone();
        let repeated = Poly::gcd(&den, &den.derivative());
        if !repeated.is_constant() {
            return Err(Error::Representation(format!("pole of order > 1 at the roots of {repeated}")));
        }
        let dprime = den.derivative();
        let mut rest = proper.clone();
        for r in rational_roots(&den) {
            let residue = proper.num().eval(&r) / dprime.eval(&r);
            let orientation = match interval.map(|i| &i.hi) {
                Some(Bound::Finite(hi)) if &r >= hi => Orientation::RootMinusX,
                _ => Orientation::XMinusRoot,
            };
            rest = &rest - &RatFunc::ratio(Poly::constant(residue.clone()), Poly::x_minus(&r));
            out.factors.push(PowerFactor::new(r, residue, orientation));
        }
        normalize_factors(&mut out.constant, &mut out.factors);
        if rest.is_zero() {
            return Ok(out);
        }
        // Remaining poles sit on irreducible factors of degree >= 2. The
        // residue at a root t of `d` is h(t) with h = n / d' mod d; the
        // distinct residues are the roots of the minimal polynomial of h in
        // Q[x]/(d), and each one collects the factor gcd(d, h - c).
        let d = rest.den().clone();
        let dd = d.degree().expect("nonconstant");
        let (g, dinv, _) = Poly::ext_gcd(&d.derivative(), &d);
        debug_assert!(g.is_constant());
        let h = (rest.num() * &dinv).div_rem(&d)?.1;
        let mut powers = vec![Poly::one()];
        let min_poly = loop {
            let next = (powers.last().expect("nonempty") * &h).div_rem(&d)?.1;
            powers.push(next);
            let cols = powers.len();
            let m: Vec<Vec<Rat>> = (0..dd).map(|i| powers.iter().map(|p| p.coeff(i)).collect()).collect();
            if let Some(v) = kernel(&m, cols).into_iter().find(|v| !v[cols - 1].is_zero()) {
                break Poly::new(v);
            }
        };
        let residues = rational_roots(&min_poly);
        if residues.len() < min_poly.degree().unwrap_or(0) {
            return Err(Error::Representation(format!("irrational residues at the roots of {d}")));
        }
        for c in residues {
            let g = Poly::gcd(&d, &(&h - &Poly::constant(c.clone())));
            let k = as_i64(&c).ok_or_else(|| {
                Error::Representation(format!("non-integer residue {} on the irreducible factor {g}", fmt_rat(&c)))
            })?;
            out.rational = &out.rational * &RatFunc::from_poly(g).powi(k as i32)?;
        }
        Ok(out)
    }

    /// Value at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let mut v = to_f64(&self.constant);
        for f in &self.factors {
            let base = f.base_f64(x);
            let domain = || Error::Domain(format!("x = {x} for the factor with root {}", fmt_rat(&f.root)));
            if let Some(k) = as_i64(&f.exponent) {
                if base == 0.0 && k < 0 {
                    return Err(domain());
                }
                v *= base.powi(k as i32);
            } else if base > 0.0 {
                v *= base.powf(to_f64(&f.exponent));
            } else if base == 0.0 && f.exponent.is_positive() {
                v = 0.0;
            } else {
                return Err(domain());
            }
        }
        let den = self.rational.den().eval_f64(x);
        if den == 0.0 {
            return Err(Error::Domain(format!("x = {x} is a pole of {}", self.rational)));
        }
        Ok(v * self.exp_part.eval_f64(x).exp() * self.rational.num().eval_f64(x) / den)
    }

    /// Canonical form: rational linear factors moved into the power factors,
    /// exponents merged per root, integer powers written `(x - r)^k`, the
    /// rest of the rational part monic. Two representations of the same
    /// function simplify to structurally equal values.
    pub fn simplify(&self) -> Self {
        if self.is_zero() {
            return QuasiRational::constant(Rat::zero());
        }
        let mut constant = self.constant.clone();
        let mut factors = self.factors.clone();
        let mut num = self.rational.num().clone();
        let mut den = self.rational.den().clone();
        for (poly, sign) in [(&mut num, 1i64), (&mut den, -1i64)] {
            for r in rational_roots(poly) {
                let k = poly.root_multiplicity(&r);
                *poly = poly.exact_div(&Poly::x_minus(&r).pow(k as u32)).expect("root");
                factors.push(PowerFactor::new(r, crate::ratpoly::int(sign * k as i64), Orientation::XMinusRoot));
            }
        }
        normalize_factors(&mut constant, &mut factors);
        constant = constant * num.lead() / den.lead();
        let rational = RatFunc::ratio(num.monic(), den.monic());
        QuasiRational { constant, factors, exp_part: self.exp_part.clone(), rational }
    }

    /// Whether both describe the same function.
    pub fn same_function(&self, other: &QuasiRational) -> bool {
        self.simplify() == other.simplify()
    }

    /// `c` with `self = c * other`, if the ratio is constant.
    pub fn ratio_constant(&self, other: &QuasiRational) -> Option<Rat> {
        let q = self.div(other).ok()?.simplify();
        (q.factors.is_empty() && q.exp_part.is_zero() && q.rational == RatFunc::one()).then_some(q.constant)
    }

    /// The rational function this equals, if any.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        let s = self.simplify();
        if !s.exp_part.is_zero() {
            return None;
        }
        let mut acc = s.rational.scale(&s.constant);
        for f in &s.factors {
            let k = as_i64(&f.exponent)?;
            acc = &acc * &RatFunc::from_poly(Poly::x_minus(&f.root)).powi(k as i32).ok()?;
        }
        Some(acc)
    }

    /// The polynomial this equals, if any.
    pub fn as_polynomial(&self) -> Option<Poly> {
        self.as_ratfunc().and_then(|f| f.as_poly())
    }

    /// Decides `f > 0` on the whole open interval.
    pub fn is_positive_on(&self, interval: &Interval) -> bool {
        if self.is_zero() {
            return false;
        }
        let mut sign = if self.constant.is_positive() { 1 } else { -1 };
        let probe = interval.interior_point();
        for f in &self.factors {
            if interval.contains(&f.root) {
                return false;
            }
            let base_positive = match f.orientation {
                Orientation::XMinusRoot => probe > f.root,
                Orientation::RootMinusX => probe < f.root,
            };
            if !base_positive {
                match as_i64(&f.exponent) {
                    Some(k) if k % 2 != 0 => sign = -sign,
                    Some(_) => {}
                    None => return false,
                }
            }
        }
        for p in [self.rational.num(), self.rational.den()] {
            if count_real_roots(p, interval) > 0 {
                return false;
            }
        }
        if self.rational.eval(&probe).is_some_and(|v| v.is_negative()) {
            sign = -sign;
        }
        sign > 0
    }
}

/// Merges power factors sharing a root. An integer power can switch
/// orientation at the cost of a sign, so it is folded into a non-integer
/// power of the other orientation when there is one, and written `(x - r)^k`
/// otherwise. Zero exponents are dropped and the list is sorted.
fn normalize_factors(constant: &mut Rat, factors: &mut Vec<PowerFactor>) {
    factors.sort_by(|a, b| a.root.cmp(&b.root).then(a.orientation.cmp(&b.orientation)));
    let mut out: Vec<PowerFactor> = Vec::with_capacity(factors.len());
    let mut i = 0;
    while i < factors.len() {
        let root = factors[i].root.clone();
        let (mut ex, mut er) = (Rat::zero(), Rat::zero());
        while i < factors.len() && factors[i].root == root {
            match factors[i].orientation {
                Orientation::XMinusRoot => ex += &factors[i].exponent,
                Orientation::RootMinusX => er += &factors[i].exponent,
            }
            i += 1;
        }
        let flip = |k: &Rat, c: &mut Rat| {
            if k.to_integer() % 2 != num_bigint::BigInt::zero() {
                *c = -c.clone();
            }
        };
        match (ex.is_integer(), er.is_integer()) {
            (true, true) => {
                flip(&er, constant);
                ex += er.clone();
                er = Rat::zero();
            }
            (true, false) => {
                flip(&ex, constant);
                er += ex.clone();
                ex = Rat::zero();
            }
            (false, true) => {
                flip(&er, constant);
                ex += er.clone();
                er = Rat::zero();
            }
            (false, false) => {}
        }
        if !ex.is_zero() {
            out.push(PowerFactor::new(root.clone(), ex, Orientation::XMinusRoot));
        }
        if !er.is_zero() {
            out.push(PowerFactor::new(root, er, Orientation::RootMinusX));
        }
    }
    *factors = out;
}

impl fmt::Display for QuasiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.constant))?;
        for p in &self.factors {
            let r = fmt_rat(&p.root);
            match p.orientation {
                Orientation::XMinusRoot => write!(f, " * (x - {r})")?,
                Orientation::RootMinusX => write!(f, " * ({r} - x)")?,
            }
            if !p.exponent.is_one() {
                write!(f, "^({})", fmt_rat(&p.exponent))?;
            }
        }
        if !self.exp_part.is_zero() {
            write!(f, " * exp({})", self.exp_part)?;
        }
        if self.rational != RatFunc::one() {
            write!(f, " * {}", self.rational)?;
        }
        Ok(())
    }
}
