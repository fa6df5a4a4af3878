//! Rational factorizations `T = B A + lambda0` from a quasi-rational
//! eigenfunction `phi` and a gauge `b`:
//!
//! `A(y) = b (y' - w y)`, `B(y) = b_hat (y' - w_hat y)` with `w = phi'/phi`,
//! `b b_hat = p` and `w_hat = -w - q/p + b'/b`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::diffop::{DiffOp2, FirstOrderOp};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quadrature::{inner_product, WeightedInterval};
use crate::quasirational::QuasiRational;
use crate::ratpoly::{Poly, Rat, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorizationKind {
    /// `phi` is the lowest eigenpolynomial of `T`.
    StateDeleting,
    /// `phi_hat` is a polynomial.
    StateAdding,
    /// Neither `phi` nor `phi_hat` is a polynomial.
    Isospectral,
    /// `phi` is a polynomial but not the lowest eigenpolynomial, and
    /// `phi_hat` is not a polynomial.
    PolynomialNotLowest,
}

impl fmt::Display for FactorizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorizationKind::StateDeleting => "state-deleting",
            FactorizationKind::StateAdding => "state-adding",
            FactorizationKind::Isospectral => "isospectral",
            FactorizationKind::PolynomialNotLowest => "polynomial-not-lowest",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationData {
    pub t: DiffOp2,
    pub lambda0: Rat,
    pub phi: QuasiRational,
    pub w: RatFunc,
    pub b: RatFunc,
    pub a_op: FirstOrderOp,
    pub b_op: FirstOrderOp,
    /// `A B + lambda0`
    pub partner: DiffOp2,
    pub b_hat: RatFunc,
    pub w_hat: RatFunc,
    /// Annihilated by `B`; defined up to a constant.
    pub phi_hat: QuasiRational,
    pub kind: FactorizationKind,
}

pub fn factorize(t: &DiffOp2, phi: &QuasiRational, b: &RatFunc, lambda0: &Rat) -> Result<FactorizationData> {
    if b.is_zero() {
        return Err(Error::ZeroGauge);
    }
    let residual = t.eigen_residual(phi, lambda0);
    if !residual.is_zero() {
        return Err(Error::NotEigenfunction(residual.to_string()));
    }
    let (p, q) = (t.p(), t.q());
    let w = phi.log_derivative();
    let b_hat = p / b;
    let w_hat = &(&(-&w) - &(q / p)) + &(&b.derivative() / b);
    let a_op = FirstOrderOp::new(b.clone(), w.clone())?;
    let b_op = FirstOrderOp::new(b_hat.clone(), w_hat.clone())?;
    let rebuilt = b_op.compose(&a_op).add_scalar(lambda0);
    let diff = t.sub(&rebuilt);
    if !diff.is_zero() {
        return Err(Error::Factorization(format!("T - (BA + lambda0) = {diff}")));
    }
    let partner = a_op.compose(&b_op).add_scalar(lambda0);
    let phi_hat = QuasiRational::from_log_derivative(&w_hat)?;
    let mut f = FactorizationData {
        t: t.clone(),
        lambda0: lambda0.clone(),
        phi: phi.clone(),
        w,
        b: b.clone(),
        a_op,
        b_op,
        partner,
        b_hat,
        w_hat,
        phi_hat,
        kind: FactorizationKind::Isospectral,
    };
    f.kind = classify(&f);
    Ok(f)
}

impl FactorizationData {
    /// `(b / phi) W(phi, y)`, available when `phi` is a polynomial.
    pub fn a_wronskian_form(&self, y: &Poly) -> Option<RatFunc> {
        let phi = self.phi.as_polynomial()?;
        let wr = &(&phi * &y.derivative()) - &(&phi.derivative() * y);
        Some(&(&self.b / &RatFunc::from_poly(phi)) * &RatFunc::from_poly(wr))
    }

    /// `phi_hat` with power factors oriented to be real on `interval`.
    pub fn phi_hat_on(&self, interval: &Interval) -> Result<QuasiRational> {
        QuasiRational::from_log_derivative_on(&self.w_hat, interval)
    }

    /// The factorization of the partner with `phi_hat` and `b_hat`.
    pub fn dual(&self) -> Result<FactorizationData> {
        factorize(&self.partner, &self.phi_hat, &self.b_hat, &self.lambda0)
    }
}

/// `W_hat = W b_hat / b` and `phi_hat = 1 / (W phi b_hat)`.
pub fn dual_data(f: &FactorizationData, w: &QuasiRational) -> Result<(QuasiRational, QuasiRational)> {
    let w_hat = w.mul_ratfunc(&(&f.b_hat / &f.b)).simplify();
    let phi_hat = w.mul(&f.phi).mul_ratfunc(&f.b_hat).recip()?.simplify();
    Ok((w_hat, phi_hat))
}

fn is_lowest_eigenpolynomial(t: &DiffOp2, phi: &Poly) -> bool {
    match phi.degree() {
        None => false,
        Some(0) => true,
        Some(d) => t.max_invariant_subspace(d - 1).is_empty(),
    }
}

pub fn classify(f: &FactorizationData) -> FactorizationKind {
    let phi_poly = f.phi.as_polynomial();
    if phi_poly.as_ref().is_some_and(|p| is_lowest_eigenpolynomial(&f.t, p)) {
        FactorizationKind::StateDeleting
    } else if f.phi_hat.as_polynomial().is_some() {
        FactorizationKind::StateAdding
    } else if phi_poly.is_some() {
        FactorizationKind::PolynomialNotLowest
    } else {
        FactorizationKind::Isospectral
    }
}

/// Both sides of `int A(y)^2 W_hat = (lambda0 - lambda_j) int y^2 W` for an
/// eigenpolynomial `y` with eigenvalue `lambda_j`.
pub fn norm_relation_check(
    f: &FactorizationData,
    y: &Poly,
    lambda_j: &Rat,
    w: &QuasiRational,
    w_hat: &QuasiRational,
    interval: &Interval,
    target_rel_err: f64,
) -> Result<(f64, f64)> {
    let ay = f.a_op.apply(y);
    let lhs = if ay.is_zero() {
        0.0
    } else {
        let den_sq = RatFunc::from_poly(ay.den().pow(2));
        let wi = WeightedInterval::new(&w_hat.mul_ratfunc(&den_sq.recip()?), interval)?;
        inner_product(ay.num(), ay.num(), &wi, target_rel_err)?
    };
    let wi = WeightedInterval::new(w, interval)?;
    let rhs = crate::ratpoly::to_f64(&(&f.lambda0 - lambda_j)) * inner_product(y, y, &wi, target_rel_err)?;
    Ok((lhs, rhs))
}

/// Monic `g` with `g^2 = p`, for monic `p`.
fn monic_sqrt(p: &Poly) -> Option<Poly> {
    let d = p.degree()?;
    if d % 2 == 1 {
        return None;
    }
    let k = d / 2;
    // match coefficients from the top: p_{d-j} = sum_{i} g_{k-i} g_{k-j+i}
    let mut g = vec![Rat::zero(); k + 1];
    g[k] = Rat::from_integer(1.into());
    for j in 1..=k {
        let mut s = p.coeff(d - j);
        for i in 1..j {
            s -= &g[k - i] * &g[k - j + i];
        }
        g[k - j] = s / Rat::from_integer(2.into());
    }
    let g = Poly::new(g);
    (&g * &g == *p).then_some(g)
}

/// `b` with `b^2 = p P_kappa / P_h(kappa)`, normalized to a monic numerator
/// and denominator. `P` is only defined up to a constant, so the constant
/// factor of the square is dropped.
pub fn shape_gauge(p: &RatFunc, p_kappa: &QuasiRational, p_h: &QuasiRational) -> Result<RatFunc> {
    let ratio = p_kappa.div(p_h)?.mul_ratfunc(p);
    let f = ratio
        .as_ratfunc()
        .ok_or_else(|| Error::ShapeInvariance(format!("p P_k / P_h(k) = {} is not rational", ratio.simplify())))?;
    let lead = f.num().lead() / f.den().lead();
    let (Some(n), Some(d)) = (monic_sqrt(&f.num().monic()), monic_sqrt(&f.den().monic())) else {
        return Err(Error::ShapeInvariance(format!("p P_k / P_h(k) = {f} is not a square")));
    };
    if lead.is_negative() {
        return Err(Error::ShapeInvariance(format!("p P_k / P_h(k) = {f} is negative")));
    }
    Ok(RatFunc::ratio(n, d))
}
