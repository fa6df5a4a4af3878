//! Exceptional Xm-Jacobi polynomials, built from the isospectral
//! factorization of the classical Jacobi operator with gauge `(1 - x) xi`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::classical::{classical_norm_gamma, jacobi, JacobiParams};
use crate::diffop::{DiffOp2, FirstOrderOp, Flag};
use crate::error::{Error, Result};
use crate::gamma::GammaRatio;
use crate::interval::Interval;
use crate::quasirational::{Orientation, QuasiRational};
use crate::ratpoly::{count_real_roots, fmt_rat, gen_binomial, int, sign, Poly, Rat, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XmParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub m: usize,
}

impl XmParams {
    pub fn new(alpha: Rat, beta: Rat, m: usize) -> Self {
        XmParams { alpha, beta, m }
    }

    pub fn shift(&self, da: i64, db: i64) -> Self {
        XmParams::new(&self.alpha + int(da), &self.beta + int(db), self.m)
    }

    pub fn classical(&self) -> JacobiParams {
        JacobiParams::new(self.alpha.clone(), self.beta.clone())
    }
}

impl fmt::Display for XmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha, beta, m) = ({}, {}, {})", fmt_rat(&self.alpha), fmt_rat(&self.beta), self.m)
    }
}

/// `xi_{a,b,m} = P_m^{(-a, b)}`
pub fn xi(a: &Rat, b: &Rat, m: usize) -> Poly {
    jacobi(m, &JacobiParams::new(-a, b.clone()))
}

/// `rho_{a,b,m} = xi' / xi`
pub fn rho(a: &Rat, b: &Rat, m: usize) -> RatFunc {
    let x = xi(a, b, m);
    RatFunc::ratio(x.derivative(), x)
}

/// `xi_{alpha+1, beta-1, m}`, the denominator of the weight.
pub fn weight_xi(prm: &XmParams) -> Poly {
    xi(&(&prm.alpha + int(1)), &(&prm.beta - int(1)), prm.m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Admissible,
    /// `alpha <= -1` or `beta <= -1`
    OutOfRange,
    /// `deg xi_{alpha+1,beta-1,m} < m`
    DegenerateDegree,
    /// `xi_{alpha+1,beta-1,m}(1) = 0` or `(-1) = 0`
    BoundaryRoot,
    /// `xi_{alpha+1,beta-1,m}` vanishes inside `(-1, 1)`
    InteriorZero,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Admissible => "admissible",
            Verdict::OutOfRange => "out-of-range",
            Verdict::DegenerateDegree => "degenerate-degree",
            Verdict::BoundaryRoot => "boundary-root",
            Verdict::InteriorZero => "interior-zero",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    /// Distinct roots of `xi_{alpha+1,beta-1,m}` in `(-1, 1)`, by Sturm count.
    pub interior_roots: usize,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.verdict == Verdict::Admissible
    }
}

/// Decides admissibility from the parameter inequalities and checks the
/// answer against exact root counting of `xi_{alpha+1,beta-1,m}`.
pub fn admissible(prm: &XmParams) -> Result<Admissibility> {
    let (a, b, m) = (&prm.alpha, &prm.beta, prm.m);
    let mut reasons = Vec::new();
    if a <= &int(-1) || b <= &int(-1) {
        reasons.push("alpha and beta must exceed -1".to_string());
        return Ok(Admissibility { verdict: Verdict::OutOfRange, reasons, interior_roots: 0 });
    }
    let in_range = |r: &Rat| r.is_integer() && !r.is_negative() && r < &int(m as i64);
    let shifted = a - b - int(m as i64) + int(1);
    if b.is_zero() {
        reasons.push("beta = 0".into());
    }
    if in_range(a) {
        reasons.push(format!("alpha = {} lies in {{0, ..., m-1}}", fmt_rat(a)));
    }
    if in_range(&shifted) {
        reasons.push(format!("alpha - beta - m + 1 = {} lies in {{0, ..., m-1}}", fmt_rat(&shifted)));
    }
    let nonsingular = reasons.is_empty();
    let am1 = a - int(m as i64) + int(1);
    let no_interior = a > &int(m as i64 - 2) && sign(&am1) == sign(b);
    if nonsingular && !no_interior {
        reasons.push(format!(
            "need alpha > m - 2 and sgn(alpha - m + 1) = sgn(beta), got alpha - m + 1 = {}",
            fmt_rat(&am1)
        ));
    }

    let x = weight_xi(prm);
    let exact = if x.is_zero() || x.degree() < Some(m) {
        Verdict::DegenerateDegree
    } else if x.eval(&int(1)).is_zero() || x.eval(&int(-1)).is_zero() {
        Verdict::BoundaryRoot
    } else if count_real_roots(&x, &Interval::jacobi()) > 0 {
        Verdict::InteriorZero
    } else {
        Verdict::Admissible
    };
    let interior_roots = if x.is_zero() { 0 } else { count_real_roots(&x, &Interval::jacobi()) };
    let agree = match exact {
        Verdict::DegenerateDegree | Verdict::BoundaryRoot => !nonsingular,
        Verdict::InteriorZero => nonsingular && !no_interior,
        _ => nonsingular && no_interior,
    };
    if !agree {
        return Err(Error::Degeneracy(format!(
            "{prm}: parameter conditions and root counting disagree (exact verdict {exact})"
        )));
    }
    Ok(Admissibility { verdict: exact, reasons, interior_roots })
}

fn require_admissible(prm: &XmParams) -> Result<()> {
    let adm = admissible(prm)?;
    if adm.is_admissible() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{prm} is {}: {}", adm.verdict, adm.reasons.join("; "))))
    }
}

/// `A_{a,b,m}(y) = (1 - x) xi_{a,b,m} y' + (m - a) xi_{a+1,b+1,m} y`
pub fn isospectral_a(a: &Rat, b: &Rat, m: usize) -> Result<FirstOrderOp> {
    let c1 = &Poly::from_ints(&[1, -1]) * &xi(a, b, m);
    let c0 = xi(&(a + int(1)), &(b + int(1)), m).scale(&(int(m as i64) - a));
    FirstOrderOp::from_coeffs(c1.into(), c0.into())
}

/// `B_{a,b,m}(y) = ((1 + x) y' + (1 + b) y) / xi_{a,b,m}`
pub fn isospectral_b(a: &Rat, b: &Rat, m: usize) -> Result<FirstOrderOp> {
    let x = xi(a, b, m);
    if x.is_zero() {
        return Err(Error::Parameter(format!("xi_{{{}, {}, {m}}} vanishes identically", fmt_rat(a), fmt_rat(b))));
    }
    let inv = RatFunc::ratio(Poly::one(), x);
    FirstOrderOp::from_coeffs(&RatFunc::from_poly(Poly::from_ints(&[1, 1])) * &inv, inv.scale(&(int(1) + b)))
}

/// `T_{alpha,beta,m} = A_{alpha+1,beta-1,m} B_{alpha+1,beta-1,m} - (m - alpha - 1)(m + beta)`
pub fn xm_operator(prm: &XmParams) -> Result<DiffOp2> {
    let (a1, b1) = (&prm.alpha + int(1), &prm.beta - int(1));
    let m = prm.m;
    let mm = int(m as i64);
    let shift = (&mm - &a1) * (&mm + &prm.beta);
    Ok(isospectral_a(&a1, &b1, m)?.compose(&isospectral_b(&a1, &b1, m)?).add_scalar(&-shift))
}

/// `-(n - m)(1 + alpha + beta + n - m)`
pub fn xm_eigenvalue(prm: &XmParams, n: usize) -> Rat {
    let j = int(n as i64 - prm.m as i64);
    -(&j * (int(1) + &prm.alpha + &prm.beta + &j))
}

/// `binom(alpha + n - m, n) binom(n, m)`
pub fn xm_value_at_one(prm: &XmParams, n: usize) -> Rat {
    gen_binomial(&(&prm.alpha + int(n as i64 - prm.m as i64)), n) * gen_binomial(&int(n as i64), prm.m)
}

/// `((-1)^{m+1} / (alpha + 1 + j)) A_{alpha+1,beta-1,m} P_j^{(alpha+1,beta-1)}`, `j = n - m`.
///
/// Computed for degenerate and singular triples too; only `alpha, beta <= -1`
/// is rejected.
pub fn xm_poly(prm: &XmParams, n: usize) -> Result<Poly> {
    let m = prm.m;
    if prm.alpha <= int(-1) || prm.beta <= int(-1) {
        return Err(Error::Parameter(format!("{prm}: alpha and beta must exceed -1")));
    }
    if n < m {
        return Err(Error::Parameter(format!("{prm}: the family starts at n = m, got n = {n}")));
    }
    let j = n - m;
    let d = &prm.alpha + int(1 + j as i64);
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (a1, b1) = (&prm.alpha + int(1), &prm.beta - int(1));
    let pj = jacobi(j, &JacobiParams::new(a1.clone(), b1.clone()));
    let ay = isospectral_a(&a1, &b1, m)?.apply(&pj);
    let s = if m.is_multiple_of(2) { int(-1) } else { int(1) };
    let y = ay.as_poly().expect("A has polynomial coefficients");
    Ok(y.scale(&(s / d)))
}

/// The expanded two-term form of `xm_poly`.
pub fn xm_poly_expanded(prm: &XmParams, n: usize) -> Poly {
    let (a, b, m) = (&prm.alpha, &prm.beta, prm.m);
    let j = n - m;
    let jj = int(j as i64);
    let d = a + int(1) + &jj;
    let first = if j == 0 {
        Poly::zero()
    } else {
        let c = (int(1) + a + b + &jj) / (int(2) * &d);
        let f = &(&Poly::from_ints(&[-1, 1]) * &jacobi(m, &JacobiParams::new(-a - int(1), b - int(1))))
            * &jacobi(j - 1, &JacobiParams::new(a + int(2), b.clone()));
        f.scale(&c)
    };
    let second = (&jacobi(m, &JacobiParams::new(-a - int(2), b.clone()))
        * &jacobi(j, &JacobiParams::new(a + int(1), b - int(1))))
        .scale(&((int(1) + a - int(m as i64)) / &d));
    let s = if m % 2 == 0 { int(1) } else { int(-1) };
    (&first + &second).scale(&s)
}

/// `(1 - x)^alpha (1 + x)^beta / xi_{alpha+1,beta-1,m}^2`
pub fn xm_weight(prm: &XmParams) -> QuasiRational {
    QuasiRational::power(int(1), prm.alpha.clone(), Orientation::RootMinusX)
        .with_power(int(-1), prm.beta.clone(), Orientation::XMinusRoot)
        .mul_ratfunc(&RatFunc::ratio(Poly::one(), weight_xi(prm).pow(2)))
}

/// Flag spanned by `P_m, P_{m+1}, ...`.
pub fn xm_flag(prm: &XmParams) -> Flag {
    let p = prm.clone();
    Flag::new(format!("X_m Jacobi {prm}"), move |k| {
        xm_poly(&p, p.m + k - 1).expect("defined for admissible parameters")
    })
}

/// `((1 + alpha + k - m)(beta + m + k) / (alpha + 1 + k)^2) N^{alpha+1,beta-1}_k`
/// as a Gamma product. The classical factor is taken formally, so it can be
/// negative when `beta < 0`; the product is not.
pub fn xm_norm_gamma(prm: &XmParams, k: usize) -> Result<GammaRatio> {
    let (a, b) = (&prm.alpha, &prm.beta);
    let kk = int(k as i64);
    let mm = int(prm.m as i64);
    let d = a + int(1) + &kk;
    let c = (int(1) + a + &kk - &mm) * (b + &mm + &kk) / (&d * &d);
    Ok(classical_norm_gamma(k, &JacobiParams::new(a + int(1), b - int(1)))?.scale(&c))
}

/// `int P_{m+k}^2 W dx`.
pub fn xm_norm(prm: &XmParams, k: usize) -> Result<f64> {
    require_admissible(prm)?;
    Ok(xm_norm_gamma(prm, k)?.to_f64())
}

/// `A_hat_{alpha,beta,m}(y) = (xi_{alpha+2,beta,m} / xi_{alpha+1,beta-1,m}) (y' - rho_{alpha+2,beta,m} y)`
pub fn xm_lowering_op(prm: &XmParams) -> Result<FirstOrderOp> {
    let (a, b, m) = (&prm.alpha, &prm.beta, prm.m);
    let top = xi(&(a + int(2)), b, m);
    let bottom = weight_xi(prm);
    if top.is_zero() || bottom.is_zero() {
        return Err(Error::Parameter(format!("{prm}: xi vanishes identically")));
    }
    FirstOrderOp::new(RatFunc::ratio(top, bottom), rho(&(a + int(2)), b, m))
}

/// `B_hat_{alpha,beta,m}(y) = (1 - x^2)(xi_{alpha+1,beta-1,m} / xi_{alpha+2,beta,m})
/// [y' - (rho_{alpha+1,beta-1,m} + (alpha+1)/(1-x) - (beta+1)/(1+x)) y]`
pub fn xm_raising_op(prm: &XmParams) -> Result<FirstOrderOp> {
    let (a, b, m) = (&prm.alpha, &prm.beta, prm.m);
    let top = xi(&(a + int(2)), b, m);
    let bottom = weight_xi(prm);
    if top.is_zero() || bottom.is_zero() {
        return Err(Error::Parameter(format!("{prm}: xi vanishes identically")));
    }
    let gauge = &RatFunc::from_poly(Poly::from_ints(&[1, 0, -1])) * &RatFunc::ratio(bottom, top);
    let w = &(&rho(&(a + int(1)), &(b - int(1)), m)
        + &RatFunc::ratio(Poly::constant(a + int(1)), Poly::from_ints(&[1, -1])))
        - &RatFunc::ratio(Poly::constant(b + int(1)), Poly::from_ints(&[1, 1]));
    FirstOrderOp::new(gauge, w)
}

fn ladder_params(prm: &XmParams) -> Result<()> {
    require_admissible(prm)?;
    require_admissible(&prm.shift(1, 1))
}

/// `A_hat_{alpha,beta,m} y`, mapping `P^{alpha,beta,m}_{m+k}` to a multiple of
/// `P^{alpha+1,beta+1,m}_{m+k-1}`.
pub fn xm_lower(prm: &XmParams, y: &Poly) -> Result<Poly> {
    ladder_params(prm)?;
    let r = xm_lowering_op(prm)?.apply(y);
    r.as_poly().ok_or_else(|| Error::Domain(format!("lowering of {y} is not a polynomial")))
}

/// `B_hat_{alpha,beta,m} y`, mapping `P^{alpha+1,beta+1,m}_{m+k}` to a multiple
/// of `P^{alpha,beta,m}_{m+k+1}`.
pub fn xm_raise(prm: &XmParams, y: &Poly) -> Result<Poly> {
    ladder_params(prm)?;
    let r = xm_raising_op(prm)?.apply(y);
    r.as_poly().ok_or_else(|| Error::Domain(format!("raising of {y} is not a polynomial")))
}

/// `1/2 (1 + alpha + beta + k)`
pub fn xm_lowering_constant(prm: &XmParams, k: usize) -> Rat {
    (int(1) + &prm.alpha + &prm.beta + int(k as i64)) / int(2)
}

/// `-2 (1 + k)`
pub fn xm_raising_constant(k: usize) -> Rat {
    int(-2 * (1 + k as i64))
}

/// Whether `P_m^{(-alpha-1, beta-1)}` divides `(1 + x) y' + beta y`.
pub fn in_exceptional_subspace(prm: &XmParams, y: &Poly) -> bool {
    let img = &(&Poly::from_ints(&[1, 1]) * &y.derivative()) + &y.scale(&prm.beta);
    weight_xi(prm).divides(&img)
}

#[derive(Clone, Debug)]
pub struct XmData {
    pub params: XmParams,
    /// `xi_{alpha+1,beta-1,m}`
    pub xi: Poly,
    pub rho: RatFunc,
    pub weight: QuasiRational,
}

pub fn xm_data(prm: &XmParams) -> Result<XmData> {
    require_admissible(prm)?;
    let x = weight_xi(prm);
    Ok(XmData { params: prm.clone(), rho: RatFunc::ratio(x.derivative(), x.clone()), xi: x, weight: xm_weight(prm) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{classical_jacobi_op, classical_norm_gamma};
    use crate::factorization::{factorize, shape_gauge, FactorizationKind};
    use crate::quadrature::{inner_product, WeightedInterval};
    use crate::ratpoly::rat;

    fn p1() -> XmParams {
        XmParams::new(rat(5, 4), rat(1, 2), 2)
    }

    fn p2() -> XmParams {
        XmParams::new(rat(1, 3), rat(-1, 2), 2)
    }

    #[test]
    fn verdicts() {
        assert!(admissible(&p1()).unwrap().is_admissible());
        assert!(admissible(&p2()).unwrap().is_admissible());
        let d = admissible(&XmParams::new(rat(3, 2), rat(1, 2), 2)).unwrap();
        assert_eq!(d.verdict, Verdict::DegenerateDegree);
        assert!(d.reasons.iter().any(|r| r.contains("alpha - beta - m + 1")));
        assert_eq!(admissible(&XmParams::new(int(-2), int(0), 1)).unwrap().verdict, Verdict::OutOfRange);
        let i = admissible(&XmParams::new(rat(1, 2), rat(1, 2), 3)).unwrap();
        assert_eq!(i.verdict, Verdict::InteriorZero);
        assert!(i.interior_roots > 0);
        assert_eq!(admissible(&XmParams::new(int(1), rat(1, 2), 2)).unwrap().verdict, Verdict::BoundaryRoot);
    }

    #[test]
    fn classical_limit() {
        let p = XmParams::new(rat(2, 3), rat(3, 7), 0);
        assert_eq!(xm_operator(&p).unwrap(), classical_jacobi_op(&p.classical()));
        for n in 0..6 {
            assert_eq!(xm_poly(&p, n).unwrap(), jacobi(n, &p.classical()));
        }
        for k in 0..5 {
            let ratio = xm_norm_gamma(&p, k).unwrap().div(&classical_norm_gamma(k, &p.classical()).unwrap()).unwrap();
            assert_eq!(ratio.as_rational(), Some(int(1)));
        }
    }

    #[test]
    fn polynomials() {
        for p in [p1(), p2(), XmParams::new(rat(17, 4), rat(3, 4), 3)] {
            let t = xm_operator(&p).unwrap();
            for n in p.m..p.m + 8 {
                let y = xm_poly(&p, n).unwrap();
                assert_eq!(y.degree(), Some(n));
                assert_eq!(y.eval(&int(1)), xm_value_at_one(&p, n));
                assert_eq!(y, xm_poly_expanded(&p, n));
                assert_eq!(t.apply(&y), RatFunc::from_poly(y.scale(&xm_eigenvalue(&p, n))));
                assert!(in_exceptional_subspace(&p, &y));
            }
            // P_m is a multiple of P_m^{(-alpha-2, beta)}
            let (a, b, m) = (&p.alpha, &p.beta, p.m);
            let s = if m % 2 == 0 { int(1) } else { int(-1) };
            let c = s * (int(1) + a - int(m as i64)) / (int(1) + a);
            assert_eq!(xm_poly(&p, m).unwrap(), jacobi(m, &JacobiParams::new(-a - int(2), b.clone())).scale(&c));
            assert!(xm_flag(&p).is_degree_regular(8));
            assert!(t.preserves_flag(&xm_flag(&p), 8).is_preserved());
        }
        assert_eq!(xm_eigenvalue(&p1(), 4), rat(-19, 2));
        assert_eq!(xm_eigenvalue(&p1(), 2), int(0));
    }

    #[test]
    fn norm_examples() {
        let c = xm_norm_gamma(&p1(), 0)
            .unwrap()
            .div(&classical_norm_gamma(0, &JacobiParams::new(rat(9, 4), rat(-1, 2))).unwrap())
            .unwrap();
        assert_eq!(c.as_rational(), Some(rat(10, 81)));
        for p in [p1(), p2(), XmParams::new(rat(17, 4), rat(3, 4), 3)] {
            for k in 0..=10 {
                assert!(xm_norm(&p, k).unwrap() > 0.0, "{p} k = {k}");
            }
        }
    }

    #[test]
    fn span_has_full_rank() {
        for p in [p1(), p2(), XmParams::new(rat(17, 4), rat(3, 4), 3)] {
            let k = 8;
            let rows: Vec<Vec<Rat>> = (0..=k)
                .map(|i| {
                    let y = xm_poly(&p, p.m + i).unwrap();
                    (0..=p.m + k).map(|c| y.coeff(c)).collect()
                })
                .collect();
            assert_eq!(crate::ratpoly::rank(&rows), k + 1);
            assert_eq!(xm_flag(&p).degree_sequence(k + 1), (p.m..=p.m + k).collect::<Vec<_>>());
        }
        assert!(xm_poly(&XmParams::new(int(-1), int(0), 1), 1).is_err());
        assert!(xm_poly(&p1(), 1).is_err());
    }

    #[test]
    fn degenerate_collapse() {
        let p = XmParams::new(rat(3, 2), rat(1, 2), 2);
        for k in 0..6 {
            assert_eq!(xm_poly(&p, 2 + k).unwrap(), jacobi(k, &p.classical()).scale(&rat(3, 8)));
        }
        let w = xm_weight(&p);
        assert!(w.ratio_constant(&crate::classical::classical_weight(&p.classical())).is_some());
    }

    #[test]
    fn operator_display() {
        // T_{a,b} y - 2 rho_{a+1,b-1,m} ((1 - x^2) y' + b (1 - x) y) + m (a - b - m + 1) y
        for p in [p1(), p2(), XmParams::new(rat(17, 4), rat(3, 4), 3)] {
            let (a, b, m) = (&p.alpha, &p.beta, p.m);
            let r = rho(&(a + int(1)), &(b - int(1)), m);
            let correction = FirstOrderOp::from_coeffs(
                Poly::from_ints(&[1, 0, -1]).into(),
                Poly::from_ints(&[1, -1]).scale(b).into(),
            )
            .unwrap();
            let two_r = r.scale(&int(-2));
            let display = DiffOp2::new(
                RatFunc::from_poly(Poly::from_ints(&[1, 0, -1])),
                &RatFunc::from_poly(Poly::new(vec![b - a, -(a + b + int(2))])) + &(&two_r * correction.gauge()),
                &(&two_r * &correction.c0()) + &RatFunc::constant(int(m as i64) * (a - b - int(m as i64) + int(1))),
            );
            assert_eq!(display, xm_operator(&p).unwrap());
        }
    }

    #[test]
    fn isospectral_factorization() {
        let p = p1();
        let (a, b, m) = (&p.alpha, &p.beta, p.m);
        let t = classical_jacobi_op(&p.classical());
        let mm = int(m as i64);
        let shift = (&mm - a) * (&mm + b + int(1));
        let ba = isospectral_b(a, b, m).unwrap().compose(&isospectral_a(a, b, m).unwrap()).add_scalar(&-shift);
        assert_eq!(ba, t);
    }

    #[test]
    fn weights_match_closed_forms() {
        let iv = Interval::jacobi();
        let closed1 = crate::classical::classical_weight(&p2().classical())
            .mul_ratfunc(&RatFunc::ratio(Poly::one(), Poly::from_ints(&[-41, 2, 7]).pow(2)))
            .scale(&int(288 * 288));
        let r = xm_weight(&p2()).ratio_constant(&closed1).unwrap();
        assert_eq!(r, int(1));
        let closed2 = crate::classical::classical_weight(&p1().classical())
            .mul_ratfunc(&RatFunc::ratio(Poly::one(), Poly::from_ints(&[29, -14, 5]).pow(2)))
            .scale(&int(128 * 128));
        assert_eq!(xm_weight(&p1()).ratio_constant(&closed2).unwrap(), int(1));
        assert!(xm_weight(&p1()).is_positive_on(&iv));
    }

    #[test]
    fn norms_and_orthogonality() {
        for p in [p1(), p2()] {
            let wi = WeightedInterval::new(&xm_weight(&p), &Interval::jacobi()).unwrap();
            let ys: Vec<Poly> = (0..=8).map(|k| xm_poly(&p, p.m + k).unwrap()).collect();
            for (k, y) in ys.iter().enumerate() {
                let q = inner_product(y, y, &wi, 1e-12).unwrap();
                let n = xm_norm(&p, k).unwrap();
                assert!(n > 0.0);
                assert!((q / n - 1.0).abs() < 1e-8, "{p} k = {k}: {q} vs {n}");
                for z in &ys[..k] {
                    let v = inner_product(y, z, &wi, 1e-12).unwrap();
                    let nz = inner_product(z, z, &wi, 1e-12).unwrap();
                    assert!(v.abs() / (q * nz).sqrt() < 1e-10);
                }
            }
        }
        assert!(xm_norm(&XmParams::new(rat(3, 2), rat(1, 2), 2), 0).is_err());
    }

    #[test]
    fn ladders() {
        let p = p1();
        let up = p.shift(1, 1);
        assert!(admissible(&up).unwrap().is_admissible());
        let m = p.m;
        assert!(xm_lower(&p, &xm_poly(&p, m).unwrap()).unwrap().is_zero());
        for k in 0..6 {
            let raised = xm_raise(&p, &xm_poly(&up, m + k).unwrap()).unwrap();
            assert_eq!(raised, xm_poly(&p, m + k + 1).unwrap().scale(&xm_raising_constant(k)));
            if k >= 1 {
                let lowered = xm_lower(&p, &xm_poly(&p, m + k).unwrap()).unwrap();
                assert_eq!(lowered, xm_poly(&up, m + k - 1).unwrap().scale(&xm_lowering_constant(&p, k)));
            }
        }
        let t = xm_operator(&p).unwrap();
        let (la, ra) = (xm_lowering_op(&p).unwrap(), xm_raising_op(&p).unwrap());
        assert_eq!(ra.compose(&la), t);
        let s = &p.alpha + &p.beta + int(2);
        assert_eq!(la.compose(&ra).add_scalar(&s), xm_operator(&up).unwrap());
    }

    #[test]
    fn shape_invariant_factorization() {
        let p = p1();
        let t = xm_operator(&p).unwrap();
        let up = xm_operator(&p.shift(1, 1)).unwrap();
        let iv = Interval::jacobi();
        let pk = t.pslp_data(&iv).unwrap().p;
        let ph = up.pslp_data(&iv).unwrap().p;
        let b = shape_gauge(t.p(), &pk, &ph).unwrap();
        let expected = RatFunc::ratio(xi(&(&p.alpha + int(2)), &p.beta, p.m), weight_xi(&p));
        assert!((&b / &expected).as_constant().is_some());
        let phi = QuasiRational::from_poly(xm_poly(&p, p.m).unwrap());
        let f = factorize(&t, &phi, &b, &int(0)).unwrap();
        assert_eq!(f.kind, FactorizationKind::StateDeleting);
        let s = &p.alpha + &p.beta + int(2);
        assert_eq!(f.partner.add_scalar(&s), up);
        let expected_hat = QuasiRational::power(int(1), -(&p.alpha + int(1)), Orientation::RootMinusX)
            .with_power(int(-1), -(&p.beta + int(1)), Orientation::XMinusRoot)
            .mul_ratfunc(&RatFunc::from_poly(weight_xi(&p)));
        assert!(f.phi_hat_on(&iv).unwrap().ratio_constant(&expected_hat).is_some());
        // the isospectral route gives the same operator
        let iso = factorize(
            &classical_jacobi_op(&p.shift(1, -1).classical()),
            &crate::classical::quasi_rational_seeds(&p.shift(1, -1).classical(), p.m)[2].0,
            &RatFunc::from_poly(&Poly::from_ints(&[1, -1]) * &weight_xi(&p)),
            &-((int(p.m as i64) - &p.alpha - int(1)) * (int(p.m as i64) + &p.beta)),
        )
        .unwrap();
        assert_eq!(iso.partner, t);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn criteria_agree_with_root_counts(a in -3i64..=24, b in -3i64..=24, m in 1usize..=3) {
            let p = XmParams::new(rat(a, 4), rat(b, 4), m);
            proptest::prop_assert!(admissible(&p).is_ok());
        }

        #[test]
        fn ladder_relations(a in 0i64..=24, b in 1i64..=24, m in 1usize..=3) {
            let p = XmParams::new(rat(a, 4) + int(m as i64), rat(b, 4), m);
            proptest::prop_assume!(admissible(&p).unwrap().is_admissible());
            proptest::prop_assume!(admissible(&p.shift(1, 1)).unwrap().is_admissible());
            let up = p.shift(1, 1);
            for k in 0..3 {
                let raised = xm_raise(&p, &xm_poly(&up, m + k).unwrap()).unwrap();
                proptest::prop_assert_eq!(raised, xm_poly(&p, m + k + 1).unwrap().scale(&xm_raising_constant(k)));
                let lowered = xm_lower(&p, &xm_poly(&p, m + k + 1).unwrap()).unwrap();
                proptest::prop_assert_eq!(lowered, xm_poly(&up, m + k).unwrap().scale(&xm_lowering_constant(&p, k + 1)));
            }
        }
    }
}
