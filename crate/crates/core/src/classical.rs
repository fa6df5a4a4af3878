//! Classical Jacobi polynomials for arbitrary rational parameters, their
//! operator, ladder operators, norms and the quasi-rational eigenfunctions
//! that seed the exceptional families.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::diffop::{DiffOp2, FirstOrderOp};
use crate::error::{Error, Result};
use crate::gamma::GammaRatio;
use crate::quasirational::{Orientation, QuasiRational};
use crate::ratpoly::{factorial, gen_binomial, int, Poly, Rat, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JacobiParams {
    pub alpha: Rat,
    pub beta: Rat,
}

impl JacobiParams {
    pub fn new(alpha: Rat, beta: Rat) -> Self {
        JacobiParams { alpha, beta }
    }

    /// `(alpha + da, beta + db)`
    pub fn shift(&self, da: i64, db: i64) -> Self {
        JacobiParams::new(&self.alpha + int(da), &self.beta + int(db))
    }

    /// `(beta, alpha)`
    pub fn swapped(&self) -> Self {
        JacobiParams::new(self.beta.clone(), self.alpha.clone())
    }
}

type Key = (usize, Rat, Rat);

fn cache() -> &'static RwLock<HashMap<Key, Poly>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `P_n^{(alpha, beta)}` from the finite sum
/// `sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`,
/// which is polynomial in the parameters and valid for all of them.
pub fn jacobi(n: usize, prm: &JacobiParams) -> Poly {
    let key = (n, prm.alpha.clone(), prm.beta.clone());
    if let Some(p) = cache().read().expect("jacobi cache").get(&key) {
        return p.clone();
    }
    let half = Rat::new(1.into(), 2.into());
    let u = Poly::new(vec![-half.clone(), half.clone()]);
    let v = Poly::new(vec![half.clone(), half]);
    let upow: Vec<Poly> = std::iter::successors(Some(Poly::one()), |p| Some(p * &u)).take(n + 1).collect();
    let vpow: Vec<Poly> = std::iter::successors(Some(Poly::one()), |p| Some(p * &v)).take(n + 1).collect();
    let na = &prm.alpha + int(n as i64);
    let nb = &prm.beta + int(n as i64);
    let mut acc = Poly::zero();
    for s in 0..=n {
        let c = gen_binomial(&na, n - s) * gen_binomial(&nb, s);
        if !c.is_zero() {
            acc = &acc + &(&upow[s] * &vpow[n - s]).scale(&c);
        }
    }
    cache().write().expect("jacobi cache").insert(key, acc.clone());
    acc
}

/// `T(y) = (1 - x^2) y'' + (beta - alpha - (alpha + beta + 2) x) y'`
pub fn classical_jacobi_op(prm: &JacobiParams) -> DiffOp2 {
    DiffOp2::from_polys(Poly::from_ints(&[1, 0, -1]), raising_coeff(prm), Poly::zero())
}

fn raising_coeff(prm: &JacobiParams) -> Poly {
    Poly::new(vec![&prm.beta - &prm.alpha, -(&prm.alpha + &prm.beta + int(2))])
}

/// `-n (n + alpha + beta + 1)`
pub fn classical_eigenvalue(n: usize, prm: &JacobiParams) -> Rat {
    let n = int(n as i64);
    -(&n * (&n + &prm.alpha + &prm.beta + int(1)))
}

/// `A(y) = y'`
pub fn lowering_op() -> FirstOrderOp {
    FirstOrderOp::new(RatFunc::one(), RatFunc::zero()).expect("nonzero gauge")
}

/// `B(y) = (1 - x^2) y' + (beta - alpha - (alpha + beta + 2) x) y`, which maps
/// `P_n^{(alpha+1, beta+1)}` to `-2 (n + 1) P_{n+1}^{(alpha, beta)}`.
pub fn raising_op(prm: &JacobiParams) -> FirstOrderOp {
    FirstOrderOp::from_coeffs(Poly::from_ints(&[1, 0, -1]).into(), raising_coeff(prm).into()).expect("nonzero gauge")
}

pub fn raise(prm: &JacobiParams, y: &Poly) -> Poly {
    let d = y.derivative();
    &(&Poly::from_ints(&[1, 0, -1]) * &d) + &(&raising_coeff(prm) * y)
}

pub fn lower(y: &Poly) -> Poly {
    y.derivative()
}

/// `n` raising steps applied to `1`, divided by `(-2)^n n!`.
pub fn rodrigues(n: usize, prm: &JacobiParams) -> Poly {
    let mut y = Poly::one();
    for j in (0..n).rev() {
        y = raise(&prm.shift(j as i64, j as i64), &y);
    }
    let c = factorial(n) * num_traits::pow(int(-2), n);
    y.scale(&c.recip())
}

/// The four quasi-rational eigenfunctions of the classical operator with
/// their eigenvalues, in the order `phi_1 .. phi_4`.
pub fn quasi_rational_seeds(prm: &JacobiParams, m: usize) -> [(QuasiRational, Rat); 4] {
    let (a, b) = (&prm.alpha, &prm.beta);
    let mm = int(m as i64);
    let one = int(1);
    let left = |e: &Rat| QuasiRational::power(one.clone(), e.clone(), Orientation::RootMinusX);
    let right = |e: &Rat| QuasiRational::power(int(-1), e.clone(), Orientation::XMinusRoot);
    let poly = |p: Poly| QuasiRational::from_poly(p);
    [
        (poly(jacobi(m, prm)), -(&mm * (&one + a + b + &mm))),
        (left(&-a).mul(&right(&-b)).mul(&poly(jacobi(m, &JacobiParams::new(-a, -b)))), (&one + &mm) * (a + b - &mm)),
        (left(&-a).mul(&poly(jacobi(m, &JacobiParams::new(-a, b.clone())))), (&one + b + &mm) * (a - &mm)),
        (right(&-b).mul(&poly(jacobi(m, &JacobiParams::new(a.clone(), -b)))), (&one + a + &mm) * (b - &mm)),
    ]
}

/// `(1 - x)^alpha (1 + x)^beta`
pub fn classical_weight(prm: &JacobiParams) -> QuasiRational {
    QuasiRational::power(int(1), prm.alpha.clone(), Orientation::RootMinusX).with_power(
        int(-1),
        prm.beta.clone(),
        Orientation::XMinusRoot,
    )
}

/// `N_n = 2^{a+b+1} G(a+1+n) G(b+1+n) / (n! (a+b+2n+1) G(a+b+n+1))` as an exact
/// Gamma product, for any parameters where it is finite.
pub fn classical_norm_gamma(n: usize, prm: &JacobiParams) -> Result<GammaRatio> {
    let (a, b) = (&prm.alpha, &prm.beta);
    let nn = int(n as i64);
    let s = a + b;
    let base = GammaRatio::pow2(&s + int(1)).mul_gamma(&(a + int(1) + &nn), 1)?.mul_gamma(&(b + int(1) + &nn), 1)?;
    if n == 0 {
        // (a+b+1) G(a+b+1) = G(a+b+2) keeps a + b = -1 finite
        return base.mul_gamma(&(&s + int(2)), -1);
    }
    let d = &s + int(2) * &nn + int(1);
    if d.is_zero() {
        return Err(Error::Domain("a + b + 2n + 1 = 0".into()));
    }
    base.mul_gamma(&(&s + &nn + int(1)), -1).map(|g| g.scale(&(factorial(n) * d).recip()))
}

/// `int_{-1}^{1} P_n^2 (1-x)^alpha (1+x)^beta dx` for `alpha, beta > -1`.
pub fn classical_norm(n: usize, prm: &JacobiParams) -> Result<f64> {
    if prm.alpha <= int(-1) || prm.beta <= int(-1) {
        return Err(Error::Domain(format!(
            "the Jacobi weight needs alpha, beta > -1, got ({}, {})",
            crate::ratpoly::fmt_rat(&prm.alpha),
            crate::ratpoly::fmt_rat(&prm.beta)
        )));
    }
    Ok(classical_norm_gamma(n, prm)?.to_f64())
}

/// Exact norm when it is rational (integer parameters).
pub fn classical_norm_exact(n: usize, prm: &JacobiParams) -> Option<Rat> {
    classical_norm_gamma(n, prm).ok()?.as_rational()
}

/// `2n(n+a+b)(2n+a+b-2) P_n - (2n+a+b-1)((2n+a+b)(2n+a+b-2)x + a^2-b^2) P_{n-1}
///  + 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2}`, which vanishes for `n >= 2`.
pub fn recurrence_residual(n: usize, prm: &JacobiParams) -> Poly {
    assert!(n >= 2);
    let (a, b) = (&prm.alpha, &prm.beta);
    let nn = int(n as i64);
    let s = a + b;
    let t = int(2) * &nn + &s;
    let c_n = int(2) * &nn * (&nn + &s) * (&t - int(2));
    let lin = Poly::new(vec![a * a - b * b, &t * (&t - int(2))]).scale(&(&t - int(1)));
    let c_2 = int(2) * (&nn + a - int(1)) * (&nn + b - int(1)) * &t;
    let lhs = jacobi(n, prm).scale(&c_n);
    &(&lhs - &(&lin * &jacobi(n - 1, prm))) + &jacobi(n - 2, prm).scale(&c_2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: Poly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// The five standard Jacobi identities at `(prm, m, n)`, as residual
/// polynomials that must vanish.
pub fn identity_suite(prm: &JacobiParams, m: usize, n: usize) -> Vec<IdentityCheck> {
    let p = |k: usize, q: &JacobiParams| jacobi(k, q);
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let neg_x = |y: &Poly| y.compose_affine(&int(-1), &int(0)).expect("nonzero scale");
    let mut out = vec![
        IdentityCheck { name: "P_0 = 1", residual: &p(0, prm) - &Poly::one() },
        IdentityCheck {
            name: "P_n^(a,b)(-x) = (-1)^n P_n^(b,a)(x)",
            residual: &neg_x(&p(n, prm)) - &p(n, &prm.swapped()).scale(&sign),
        },
        IdentityCheck {
            name: "(x-1) P_m' = (a+m) P_m^(a-1,b+1) - a P_m",
            residual: &(&Poly::from_ints(&[-1, 1]) * &p(m, prm).derivative())
                - &(&p(m, &prm.shift(-1, 1)).scale(&(&prm.alpha + int(m as i64))) - &p(m, prm).scale(&prm.alpha)),
        },
    ];
    let d = if n == 0 {
        p(0, prm).derivative()
    } else {
        let c = (int(1) + &prm.alpha + &prm.beta + int(n as i64)) / int(2);
        &p(n, prm).derivative() - &p(n - 1, &prm.shift(1, 1)).scale(&c)
    };
    out.push(IdentityCheck { name: "P_n' = (1+a+b+n)/2 P_{n-1}^(a+1,b+1)", residual: d });
    let prev = if n == 0 { Poly::zero() } else { p(n - 1, prm) };
    out.push(IdentityCheck {
        name: "P_n^(a,b-1) - P_n^(a-1,b) = P_{n-1}^(a,b)",
        residual: &(&p(n, &prm.shift(0, -1)) - &p(n, &prm.shift(-1, 0))) - &prev,
    });
    out
}
