//! The codimension-one families: X1-Jacobi on `(-1, 1)` and X1-Laguerre on
//! `(0, inf)`, both obtained from the general operator preserving
//! `x + 1, x^2, x^3, ...` by specialization and an affine change of variable.

use num_traits::{One, Signed, Zero};

use crate::diffop::{DiffOp2, Flag};
use crate::error::{Error, Result};
use crate::quasirational::{Orientation, QuasiRational};
use crate::ratpoly::{factorial, fmt_rat, gen_binomial, int, kernel, Poly, Rat, RatFunc};

/// `T(y) = (k2 x^2 + k1 x + k0) y'' - (x + 1)(k1 + 2 k0/x) y' + (k1 + 2 k0/x) y`,
/// the general operator preserving `x + 1, x^2, x^3, ...`.
pub fn general_codim1_op(k0: &Rat, k1: &Rat, k2: &Rat) -> Result<DiffOp2> {
    if k0.is_zero() && k1.is_zero() && k2.is_zero() {
        return Err(Error::Parameter("k0, k1, k2 are all zero".into()));
    }
    let p = Poly::new(vec![k0.clone(), k1.clone(), k2.clone()]);
    // k1 + 2 k0 / x = (k1 x + 2 k0) / x
    let s = RatFunc::ratio(Poly::new(vec![k0 * int(2), k1.clone()]), Poly::x());
    let q = -(&RatFunc::from_poly(Poly::from_ints(&[1, 1])) * &s);
    Ok(DiffOp2::new(RatFunc::from_poly(p), q, s))
}

/// `x + 1, x^2, x^3, ...`
pub fn codim1_flag() -> Flag {
    Flag::new("x+1, x^2, x^3, ...", |k| if k == 1 { Poly::from_ints(&[1, 1]) } else { Poly::monomial(int(1), k) })
}

/// Solves `T y = lambda y` inside `span(basis)`; the solution must be unique
/// up to scale.
fn eigen_in_span(t: &DiffOp2, basis: &[Poly], lambda: &Rat, what: impl Fn() -> String) -> Result<Poly> {
    let images: Vec<Poly> = basis
        .iter()
        .map(|u| {
            t.apply(u)
                .as_poly()
                .map(|tu| &tu - &u.scale(lambda))
                .ok_or_else(|| Error::Degeneracy(format!("{}: T maps {u} outside the polynomials", what())))
        })
        .collect::<Result<_>>()?;
    let rows = images.iter().filter_map(Poly::degree).max().unwrap_or(0) + 1;
    let m: Vec<Vec<Rat>> = (0..rows).map(|i| images.iter().map(|p| p.coeff(i)).collect()).collect();
    let ker = kernel(&m, basis.len());
    if ker.len() != 1 {
        return Err(Error::Degeneracy(format!("{}: eigenspace has dimension {}", what(), ker.len())));
    }
    Ok(basis.iter().zip(&ker[0]).fold(Poly::zero(), |acc, (u, c)| &acc + &u.scale(c)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct X1JacobiParams {
    alpha: Rat,
    beta: Rat,
}

impl X1JacobiParams {
    pub fn new(alpha: Rat, beta: Rat) -> Result<Self> {
        let bad =
            |why: &str| Err(Error::Parameter(format!("X1-Jacobi ({}, {}): {why}", fmt_rat(&alpha), fmt_rat(&beta))));
        if alpha == beta {
            return bad("alpha = beta");
        }
        if alpha <= int(-1) || beta <= int(-1) {
            return bad("alpha, beta must exceed -1");
        }
        if !(&alpha * &beta).is_positive() {
            return bad("alpha and beta must be nonzero with the same sign");
        }
        Ok(X1JacobiParams { alpha, beta })
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    /// `(beta - alpha) / 2`
    pub fn a(&self) -> Rat {
        (&self.beta - &self.alpha) / int(2)
    }

    /// `(beta + alpha) / (beta - alpha)`
    pub fn b(&self) -> Rat {
        (&self.beta + &self.alpha) / (&self.beta - &self.alpha)
    }

    /// `b + 1/a`
    pub fn c(&self) -> Rat {
        self.b() + self.a().recip()
    }
}

/// `u_1 = x - c`, `u_i = (x - b)^i`.
pub fn x1_jacobi_flag(prm: &X1JacobiParams) -> Flag {
    let (b, c) = (prm.b(), prm.c());
    Flag::new(format!("x - {}, (x - {})^i", fmt_rat(&c), fmt_rat(&b)), move |k| {
        if k == 1 {
            Poly::x_minus(&c)
        } else {
            Poly::x_minus(&b).pow(k as u32)
        }
    })
}

/// `(x^2 - 1) y'' + 2a ((1 - bx)/(b - x)) ((x - c) y' - y)`
pub fn x1_jacobi_op(prm: &X1JacobiParams) -> DiffOp2 {
    let (a, b, c) = (prm.a(), prm.b(), prm.c());
    let s = RatFunc::ratio(Poly::new(vec![&a * int(2), -(&a * &b * int(2))]), Poly::new(vec![b.clone(), int(-1)]));
    let q = &s * &RatFunc::from_poly(Poly::x_minus(&c));
    DiffOp2::new(RatFunc::from_poly(Poly::from_ints(&[-1, 0, 1])), q, -s)
}

/// The general operator at `k2 = 1, k1 = -2ab, k0 = a^2 (b^2 - 1)`, pulled
/// back along `x -> -a (x - b)`.
pub fn x1_jacobi_from_general(prm: &X1JacobiParams) -> Result<DiffOp2> {
    let (a, b) = (prm.a(), prm.b());
    let k0 = &a * &a * (&b * &b - int(1));
    general_codim1_op(&k0, &-(&a * &b * int(2)), &int(1))?.affine_pullback(&-&a, &(&a * &b))
}

/// `(1 - x)^alpha (1 + x)^beta / (x - b)^2`
pub fn x1_jacobi_weight(prm: &X1JacobiParams) -> QuasiRational {
    QuasiRational::power(int(1), prm.alpha.clone(), Orientation::RootMinusX)
        .with_power(int(-1), prm.beta.clone(), Orientation::XMinusRoot)
        .with_power(prm.b(), int(-2), Orientation::XMinusRoot)
}

/// `(n - 1)(alpha + beta + n)`
pub fn x1_jacobi_eigenvalue(prm: &X1JacobiParams, n: usize) -> Rat {
    let nn = int(n as i64);
    (&nn - int(1)) * (&prm.alpha + &prm.beta + &nn)
}

/// `n binom(alpha + n - 1, n)`
pub fn x1_jacobi_value_at_one(prm: &X1JacobiParams, n: usize) -> Rat {
    int(n as i64) * gen_binomial(&(&prm.alpha + int(n as i64 - 1)), n)
}

/// The degree-`n` X1-Jacobi polynomial, `n >= 1`.
pub fn x1_jacobi_poly(prm: &X1JacobiParams, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::Parameter("X1 polynomials start at n = 1".into()));
    }
    let what = || format!("X1-Jacobi ({}, {}), n = {n}", fmt_rat(&prm.alpha), fmt_rat(&prm.beta));
    let y =
        eigen_in_span(&x1_jacobi_op(prm), &x1_jacobi_flag(prm).basis_up_to(n), &x1_jacobi_eigenvalue(prm, n), what)?;
    let at_one = y.eval(&Rat::one());
    if at_one.is_zero() {
        return Err(Error::Degeneracy(format!("{} vanishes at x = 1", what())));
    }
    Ok(y.scale(&(x1_jacobi_value_at_one(prm, n) / at_one)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct X1LaguerreParams {
    k: Rat,
}

impl X1LaguerreParams {
    pub fn new(k: Rat) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::Parameter(format!("X1-Laguerre needs k > 0, got {}", fmt_rat(&k))));
        }
        Ok(X1LaguerreParams { k })
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }
}

/// `v_1 = x + k + 1`, `v_i = (x + k)^i`.
pub fn x1_laguerre_flag(prm: &X1LaguerreParams) -> Flag {
    let k = prm.k.clone();
    Flag::new(format!("x + {0} + 1, (x + {0})^i", fmt_rat(&k)), move |i| {
        if i == 1 {
            Poly::new(vec![&k + int(1), int(1)])
        } else {
            Poly::x_minus(&-&k).pow(i as u32)
        }
    })
}

/// `-x y'' + ((x - k)/(x + k)) ((x + k + 1) y' - y)`
pub fn x1_laguerre_op(prm: &X1LaguerreParams) -> DiffOp2 {
    let k = &prm.k;
    let s = RatFunc::ratio(Poly::x_minus(k), Poly::x_minus(&-k));
    let q = &s * &RatFunc::from_poly(Poly::new(vec![k + int(1), int(1)]));
    DiffOp2::new(RatFunc::from_poly(Poly::from_ints(&[0, -1])), q, -s)
}

/// The general operator at `k2 = 0, k1 = -1, k0 = k`, pulled back along `x -> x + k`.
pub fn x1_laguerre_from_general(prm: &X1LaguerreParams) -> Result<DiffOp2> {
    general_codim1_op(&prm.k, &int(-1), &int(0))?.affine_pullback(&int(1), &prm.k)
}

/// `e^{-x} x^k / (x + k)^2`
pub fn x1_laguerre_weight(prm: &X1LaguerreParams) -> QuasiRational {
    QuasiRational::power(int(0), prm.k.clone(), Orientation::XMinusRoot)
        .with_power(-&prm.k, int(-2), Orientation::XMinusRoot)
        .mul(&QuasiRational::exp(Poly::from_ints(&[0, -1])))
}

/// `n - 1`
pub fn x1_laguerre_eigenvalue(n: usize) -> Rat {
    int(n as i64 - 1)
}

/// `(-1)^n / (n - 1)!`
pub fn x1_laguerre_leading(n: usize) -> Rat {
    let s = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    s / factorial(n - 1)
}

/// The degree-`n` X1-Laguerre polynomial, `n >= 1`.
pub fn x1_laguerre_poly(prm: &X1LaguerreParams, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::Parameter("X1 polynomials start at n = 1".into()));
    }
    let what = || format!("X1-Laguerre k = {}, n = {n}", fmt_rat(&prm.k));
    let y =
        eigen_in_span(&x1_laguerre_op(prm), &x1_laguerre_flag(prm).basis_up_to(n), &x1_laguerre_eigenvalue(n), what)?;
    if y.degree() != Some(n) {
        return Err(Error::Degeneracy(format!("{} has degree {:?}", what(), y.degree())));
    }
    Ok(y.scale(&(x1_laguerre_leading(n) / y.lead())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::quadrature::{coeff_rel_error, gram_schmidt, inner_product, Normalization, WeightedInterval};
    use crate::ratpoly::rat;
    use proptest::prelude::*;

    fn p12() -> X1JacobiParams {
        X1JacobiParams::new(int(1), int(2)).unwrap()
    }

    #[test]
    fn jacobi_parameters() {
        let p = p12();
        assert_eq!((p.a(), p.b(), p.c()), (rat(1, 2), int(3), int(5)));
        assert_eq!(x1_jacobi_flag(&p).basis(1), Poly::from_ints(&[-5, 1]));
        assert!(X1JacobiParams::new(int(1), int(1)).is_err());
        assert!(X1JacobiParams::new(rat(-1, 2), int(2)).is_err());
        assert!(X1JacobiParams::new(int(0), int(2)).is_err());
        assert!(X1JacobiParams::new(int(-1), rat(-1, 2)).is_err());
        assert!(X1JacobiParams::new(rat(-1, 3), rat(-1, 2)).is_ok());
    }

    #[test]
    fn jacobi_operator_and_weight() {
        let p = p12();
        let t = x1_jacobi_op(&p);
        assert!(t.apply(&x1_jacobi_flag(&p).basis(1)).is_zero());
        assert!(t.preserves_flag(&x1_jacobi_flag(&p), 12).is_preserved());
        assert_eq!(x1_jacobi_from_general(&p).unwrap(), t);
        assert!((x1_jacobi_weight(&p).eval(0.0).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!(x1_jacobi_weight(&p).is_positive_on(&Interval::jacobi()));
        let d = t.pslp_data(&Interval::jacobi()).unwrap();
        assert!(d.negated);
        assert!(d.conditions().all());
        assert!(d.w.ratio_constant(&x1_jacobi_weight(&p)).is_some());
    }

    #[test]
    fn printed_k0_does_not_reproduce_the_operator() {
        let p = p12();
        let (a, b) = (p.a(), p.b());
        let printed = (int(1) - &b * &b) * &a;
        let op = general_codim1_op(&printed, &-(&a * &b * int(2)), &int(1))
            .unwrap()
            .affine_pullback(&-&a, &(&a * &b))
            .unwrap();
        assert_ne!(op, x1_jacobi_op(&p));
    }

    #[test]
    fn jacobi_polynomials() {
        let p = p12();
        let p1 = x1_jacobi_poly(&p, 1).unwrap();
        assert_eq!(p1, Poly::new(vec![rat(5, 4), rat(-1, 4)]));
        assert_eq!(x1_jacobi_eigenvalue(&p, 1), int(0));
        assert_eq!(x1_jacobi_eigenvalue(&p, 3), int(12));
        let t = x1_jacobi_op(&p);
        for n in 1..=10 {
            let y = x1_jacobi_poly(&p, n).unwrap();
            assert_eq!(y.degree(), Some(n));
            assert_eq!(y.eval(&int(1)), x1_jacobi_value_at_one(&p, n));
            assert_eq!(t.apply(&y), RatFunc::from_poly(y.scale(&x1_jacobi_eigenvalue(&p, n))));
        }
        assert!(x1_jacobi_poly(&p, 0).is_err());
    }

    #[test]
    fn xm_weight_at_m1_matches() {
        // xi_{a+1, b-1, 1} = P_1^{(-a-1, b-1)} has its root at b
        let p = X1JacobiParams::new(rat(3, 2), rat(1, 3)).unwrap();
        let xi =
            crate::classical::jacobi(1, &crate::classical::JacobiParams::new(-(p.alpha() + int(1)), p.beta() - int(1)));
        assert!(xi.eval(&p.b()).is_zero());
    }

    #[test]
    fn laguerre_family() {
        let p = X1LaguerreParams::new(int(2)).unwrap();
        let t = x1_laguerre_op(&p);
        assert!(t.apply(&x1_laguerre_flag(&p).basis(1)).is_zero());
        assert_eq!(x1_laguerre_poly(&p, 1).unwrap(), Poly::from_ints(&[-3, -1]));
        assert_eq!(x1_laguerre_from_general(&p).unwrap(), t);
        assert!(t.preserves_flag(&x1_laguerre_flag(&p), 12).is_preserved());
        for n in 1..=10 {
            let y = x1_laguerre_poly(&p, n).unwrap();
            assert_eq!(y.lead(), x1_laguerre_leading(n));
            assert_eq!(t.apply(&y), RatFunc::from_poly(y.scale(&x1_laguerre_eigenvalue(n))));
        }
        let d = t.pslp_data(&Interval::laguerre()).unwrap();
        assert!(d.negated);
        assert!(d.conditions().all());
        assert!(d.w.ratio_constant(&x1_laguerre_weight(&p)).is_some());
        assert!(X1LaguerreParams::new(int(0)).is_err());
    }

    #[test]
    fn general_operator() {
        let t = general_codim1_op(&int(0), &int(0), &int(1)).unwrap();
        assert_eq!(t, DiffOp2::from_polys(Poly::from_ints(&[0, 0, 1]), Poly::zero(), Poly::zero()));
        assert!(general_codim1_op(&int(0), &int(0), &int(0)).is_err());
        assert!(t.preserves_flag(&codim1_flag(), 12).is_preserved());
    }

    #[test]
    fn orthogonality_and_oracle() {
        let p = p12();
        let wi = WeightedInterval::new(&x1_jacobi_weight(&p), &Interval::jacobi()).unwrap();
        let ys: Vec<Poly> = (1..=8).map(|n| x1_jacobi_poly(&p, n).unwrap()).collect();
        for i in 0..ys.len() {
            for j in 0..i {
                let v = inner_product(&ys[i], &ys[j], &wi, 1e-13).unwrap();
                let ni = inner_product(&ys[i], &ys[i], &wi, 1e-13).unwrap();
                let nj = inner_product(&ys[j], &ys[j], &wi, 1e-13).unwrap();
                assert!(v.abs() / (ni * nj).sqrt() < 1e-10);
            }
        }
        let targets = (1..=8).map(|n| x1_jacobi_value_at_one(&p, n)).collect();
        let gs = gram_schmidt(&x1_jacobi_flag(&p), &wi, 8, &Normalization::ValueAtOne(targets)).unwrap();
        for (g, y) in gs.iter().zip(&ys) {
            assert!(coeff_rel_error(g, y) < 1e-8);
        }

        let q = X1LaguerreParams::new(int(2)).unwrap();
        let wi = WeightedInterval::new(&x1_laguerre_weight(&q), &Interval::laguerre()).unwrap();
        let targets = (1..=8).map(x1_laguerre_leading).collect();
        let gs = gram_schmidt(&x1_laguerre_flag(&q), &wi, 8, &Normalization::LeadingCoefficient(targets)).unwrap();
        for (n, g) in gs.iter().enumerate() {
            assert!(coeff_rel_error(g, &x1_laguerre_poly(&q, n + 1).unwrap()) < 1e-8);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4))]
        #[test]
        fn jacobi_eigenrelation(an in 1i64..20, bn in 1i64..20, d in 1i64..5, n in 1usize..=30) {
            prop_assume!(an != bn);
            let p = X1JacobiParams::new(rat(an, d), rat(bn, d)).unwrap();
            let y = x1_jacobi_poly(&p, n).unwrap();
            prop_assert_eq!(x1_jacobi_op(&p).apply(&y), RatFunc::from_poly(y.scale(&x1_jacobi_eigenvalue(&p, n))));
        }

        #[test]
        fn laguerre_eigenrelation(kn in 1i64..20, d in 1i64..5, n in 1usize..=30) {
            let p = X1LaguerreParams::new(rat(kn, d)).unwrap();
            let y = x1_laguerre_poly(&p, n).unwrap();
            prop_assert_eq!(x1_laguerre_op(&p).apply(&y), RatFunc::from_poly(y.scale(&x1_laguerre_eigenvalue(n))));
        }
    }
}
