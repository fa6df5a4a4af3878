use std::fmt;

use crate::ratpoly::{fmt_rat, to_f64, Rat};

/// An end of an open interval on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::Finite(r) => to_f64(r),
            Bound::PosInf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Finite(r) => write!(f, "{}", fmt_rat(r)),
            Bound::PosInf => write!(f, "inf"),
        }
    }
}

/// Open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Interval { lo, hi }
    }

    /// `(-1, 1)`
    pub fn jacobi() -> Self {
        Interval::new(Bound::Finite(crate::ratpoly::int(-1)), Bound::Finite(crate::ratpoly::int(1)))
    }

    /// `(0, inf)`
    pub fn laguerre() -> Self {
        Interval::new(Bound::Finite(crate::ratpoly::int(0)), Bound::PosInf)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = match &self.lo {
            Bound::NegInf => true,
            Bound::Finite(a) => x > a,
            Bound::PosInf => false,
        };
        let below = match &self.hi {
            Bound::NegInf => false,
            Bound::Finite(b) => x < b,
            Bound::PosInf => true,
        };
        above && below
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        x > self.lo.to_f64() && x < self.hi.to_f64()
    }

    /// `n` interior points, evenly spread (a unit-spaced ray for infinite ends).
    pub fn sample_points(&self, n: usize) -> Vec<f64> {
        let (a, b) = (self.lo.to_f64(), self.hi.to_f64());
        (0..n)
            .map(|i| {
                let t = (i as f64 + 0.5) / n as f64;
                match (a.is_finite(), b.is_finite()) {
                    (true, true) => a + (b - a) * t,
                    (true, false) => a + 20.0 * t,
                    (false, true) => b - 20.0 * t,
                    (false, false) => 40.0 * t - 20.0,
                }
            })
            .collect()
    }

    /// An exact interior point.
    pub fn interior_point(&self) -> Rat {
        use crate::ratpoly::int;
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => (a + b) / int(2),
            (Bound::Finite(a), _) => a + int(1),
            (_, Bound::Finite(b)) => b - int(1),
            _ => int(0),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}
