use num_traits::{Signed, Zero};

use super::DiffOp2;
use crate::error::{Error, Result};
use crate::interval::{Bound, Interval};
use crate::quasirational::QuasiRational;
use crate::ratpoly::{int, Rat, RatFunc};

/// `P = exp(int q/p)`, `W = P/p`, `R = -r W` for `T = p y'' + q y' + r y`.
///
/// When `p < 0` on the interval the data of `-T` is returned instead (so
/// that `W > 0`) and `negated` is set; eigenvalues of `-T` are the negated
/// eigenvalues of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PslpData {
    pub p: QuasiRational,
    pub w: QuasiRational,
    pub r: QuasiRational,
    pub interval: Interval,
    pub negated: bool,
}

/// The computable conditions on a Sturm-Liouville triple: positivity of
/// `P` and `W`, finite moments of `W dx`, and `P x^n -> 0` at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PslpConditions {
    pub positive: bool,
    pub finite_moments: bool,
    pub boundary_vanishing: bool,
}

impl PslpConditions {
    pub fn all(&self) -> bool {
        self.positive && self.finite_moments && self.boundary_vanishing
    }
}

impl PslpData {
    pub fn new(t: &DiffOp2, interval: &Interval) -> Result<Self> {
        if t.p().is_zero() {
            return Err(Error::Singular("leading coefficient p is zero".into()));
        }
        let mut p_fn = QuasiRational::from_log_derivative_on(&(t.q() / t.p()), interval)?;
        if !p_fn.is_positive_on(interval) && p_fn.scale(&int(-1)).is_positive_on(interval) {
            p_fn = p_fn.scale(&int(-1));
        }
        let mut w = p_fn.mul_ratfunc(&t.p().recip()?);
        let negated = !w.is_positive_on(interval) && w.scale(&int(-1)).is_positive_on(interval);
        let sign = if negated { int(-1) } else { int(1) };
        w = w.scale(&sign);
        let r = w.mul_ratfunc(&t.r().scale(&-sign));
        Ok(PslpData { p: p_fn, w, r, interval: interval.clone(), negated })
    }

    pub fn conditions(&self) -> PslpConditions {
        let positive = self.p.is_positive_on(&self.interval) && self.w.is_positive_on(&self.interval);
        let ends = [&self.interval.lo, &self.interval.hi];
        let finite_moments = ends.iter().all(|b| end_ok(&self.w, b, &int(-1)));
        let boundary_vanishing = ends.iter().all(|b| end_ok(&self.p, b, &Rat::zero()));
        PslpConditions { positive, finite_moments, boundary_vanishing }
    }
}

/// At a finite end: the power of `(x - e)` in `f` exceeds `threshold`.
/// At an infinite end: `f` decays faster than any power.
fn end_ok(f: &QuasiRational, end: &Bound, threshold: &Rat) -> bool {
    let s = f.simplify();
    let exp_part = s.exp_part();
    let decays = |sign_at_end: i64| {
        exp_part.degree().is_some_and(|d| {
            d >= 1 && {
                let lead = exp_part.lead();
                let flip = if sign_at_end < 0 && d % 2 == 1 { -1 } else { 1 };
                (lead.is_negative() && flip == 1) || (lead.is_positive() && flip == -1)
            }
        })
    };
    match end {
        Bound::PosInf => decays(1),
        Bound::NegInf => decays(-1),
        Bound::Finite(e) => {
            let total: Rat = s.power_factors().iter().filter(|p| &p.root == e).map(|p| p.exponent.clone()).sum();
            let rational_ok = s.rational_part().eval(e).is_some_and(|v| !v.is_zero());
            &total > threshold && rational_ok
        }
    }
}

impl DiffOp2 {
    /// Checks `W = P/p` (up to the sign recorded in `negated`) as functions.
    pub fn pslp_consistent(&self, data: &PslpData) -> bool {
        let p = if data.negated { -self.p() } else { self.p().clone() };
        let Ok(inv) = RatFunc::recip(&p) else { return false };
        data.w.same_function(&data.p.mul_ratfunc(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasirational::Orientation;
    use crate::ratpoly::{rat, Poly};

    #[test]
    fn jacobi_weight() {
        let (a, b) = (rat(1, 2), rat(3, 2));
        // (1 - x^2) y'' + (b - a - (a + b + 2) x) y'
        let t = DiffOp2::from_polys(
            Poly::from_ints(&[1, 0, -1]),
            Poly::new(vec![&b - &a, -(&a + &b + int(2))]),
            Poly::zero(),
        );
        let d = t.pslp_data(&Interval::jacobi()).unwrap();
        let expected =
            QuasiRational::power(int(1), a, Orientation::RootMinusX).with_power(int(-1), b, Orientation::XMinusRoot);
        assert!(d.w.ratio_constant(&expected).is_some());
        assert!(!d.negated);
        assert!(d.conditions().all());
        assert!(t.pslp_consistent(&d));
    }

    #[test]
    fn laguerre_weight() {
        // x y'' + (1 + k - x) y' has W = x^k e^{-x}
        let k = rat(3, 2);
        let t = DiffOp2::from_polys(Poly::x(), Poly::new(vec![&k + int(1), int(-1)]), Poly::zero());
        let d = t.pslp_data(&Interval::laguerre()).unwrap();
        let expected = QuasiRational::power(int(0), k, Orientation::XMinusRoot)
            .mul(&QuasiRational::exp(Poly::from_ints(&[0, -1])));
        assert!(d.w.ratio_constant(&expected).is_some());
        assert!(d.conditions().all());
    }

    #[test]
    fn negative_leading_coefficient_is_flipped() {
        let t = DiffOp2::from_polys(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, 2]), Poly::zero());
        let d = t.pslp_data(&Interval::jacobi()).unwrap();
        assert!(d.negated);
        assert!(d.w.is_positive_on(&Interval::jacobi()));
        assert!(t.pslp_consistent(&d));
    }

    #[test]
    fn nonintegrable_end_is_reported() {
        let t = DiffOp2::from_polys(Poly::from_ints(&[1, 0, -1]), Poly::from_ints(&[-5, -1]), Poly::zero());
        // W = (1-x)^2 (1+x)^{-3}
        let d = t.pslp_data(&Interval::jacobi()).unwrap();
        assert!(!d.conditions().finite_moments);
    }
}
