//! Second-order operators `T(y) = p y'' + q y' + r y` with rational
//! coefficients, first-order factors `A(y) = b (y' - w y)`, and the flag,
//! pole and Sturm-Liouville machinery built on them.

mod catalog;
mod flag;
mod pslp;

pub use catalog::{example, FlagExample};
pub use flag::{order_reduced_basis, Flag, FlagCertificate, FlagFailure, OrderReducedBasis};
pub use pslp::{PslpConditions, PslpData};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quasirational::QuasiRational;
use crate::ratpoly::{count_real_roots, kernel, rational_roots, squarefree_part, Poly, Rat, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp2 {
    p: RatFunc,
    q: RatFunc,
    r: RatFunc,
    /// `(p, q, r) = (pn, qn, rn) / den` over a common monic denominator.
    common: [Poly; 4],
}

impl DiffOp2 {
    pub fn new(p: RatFunc, q: RatFunc, r: RatFunc) -> Self {
        let den = Poly::lcm(&Poly::lcm(p.den(), q.den()), r.den());
        let lift = |f: &RatFunc| f.num() * &den.exact_div(f.den()).expect("lcm");
        let common = [lift(&p), lift(&q), lift(&r), den];
        DiffOp2 { p, q, r, common }
    }

    pub fn from_polys(p: Poly, q: Poly, r: Poly) -> Self {
        DiffOp2::new(p.into(), q.into(), r.into())
    }

    pub fn zero() -> Self {
        DiffOp2::new(RatFunc::zero(), RatFunc::zero(), RatFunc::zero())
    }

    /// The multiplication operator `y -> c y`.
    pub fn scalar(c: Rat) -> Self {
        DiffOp2::new(RatFunc::zero(), RatFunc::zero(), RatFunc::constant(c))
    }

    pub fn p(&self) -> &RatFunc {
        &self.p
    }

    pub fn q(&self) -> &RatFunc {
        &self.q
    }

    pub fn r(&self) -> &RatFunc {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    pub fn apply(&self, y: &Poly) -> RatFunc {
        let [pn, qn, rn, den] = &self.common;
        let d1 = y.derivative();
        let d2 = d1.derivative();
        let n = &(&(pn * &d2) + &(qn * &d1)) + &(rn * y);
        RatFunc::ratio(n, den.clone())
    }

    pub fn apply_rf(&self, y: &RatFunc) -> RatFunc {
        let d1 = y.derivative();
        let d2 = d1.derivative();
        &(&(&self.p * &d2) + &(&self.q * &d1)) + &(&self.r * y)
    }

    /// `T(phi)/phi - lambda`, which vanishes iff `T(phi) = lambda phi`.
    pub fn eigen_residual(&self, phi: &QuasiRational, lambda: &Rat) -> RatFunc {
        let w = phi.log_derivative();
        let second = &w.derivative() + &(&w * &w);
        &(&(&(&self.p * &second) + &(&self.q * &w)) + &self.r) - &RatFunc::constant(lambda.clone())
    }

    pub fn is_eigenfunction(&self, phi: &QuasiRational, lambda: &Rat) -> bool {
        !phi.is_zero() && self.eigen_residual(phi, lambda).is_zero()
    }

    pub fn add(&self, other: &DiffOp2) -> DiffOp2 {
        DiffOp2::new(&self.p + &other.p, &self.q + &other.q, &self.r + &other.r)
    }

    pub fn sub(&self, other: &DiffOp2) -> DiffOp2 {
        DiffOp2::new(&self.p - &other.p, &self.q - &other.q, &self.r - &other.r)
    }

    pub fn scale(&self, c: &Rat) -> DiffOp2 {
        DiffOp2::new(self.p.scale(c), self.q.scale(c), self.r.scale(c))
    }

    /// `T + c`
    pub fn add_scalar(&self, c: &Rat) -> DiffOp2 {
        DiffOp2::new(self.p.clone(), self.q.clone(), &self.r + &RatFunc::constant(c.clone()))
    }

    /// The operator in `x` obtained from `T` (written in `X`) by `X = s x + t`.
    pub fn affine_pullback(&self, s: &Rat, t: &Rat) -> Result<DiffOp2> {
        if s.is_zero() {
            return Err(Error::DegenerateAffine);
        }
        let s2 = s * s;
        Ok(DiffOp2::new(
            self.p.compose_affine(s, t)?.scale(&s2.recip()),
            self.q.compose_affine(s, t)?.scale(&s.recip()),
            self.r.compose_affine(s, t)?,
        ))
    }

    /// `g T g^{-1}`
    pub fn gauge_transform(&self, g: &RatFunc) -> Result<DiffOp2> {
        if g.is_zero() {
            return Err(Error::ZeroGauge);
        }
        let s = g.recip()?;
        let l1 = &s.derivative() / &s;
        let l2 = &s.derivative().derivative() / &s;
        let q = &(&self.p * &l1).scale(&Rat::from_integer(2.into())) + &self.q;
        let r = &(&(&self.p * &l2) + &(&self.q * &l1)) + &self.r;
        Ok(DiffOp2::new(self.p.clone(), q, r))
    }

    pub fn is_polynomial_operator(&self) -> bool {
        self.common[3].is_constant()
    }

    pub fn poles(&self) -> PoleSet {
        PoleSet::of_denominator(&self.common[3])
    }

    /// Splits an operator whose denominators are powers of `x` into
    /// `T_d(y) = x^d (a_d x^2 y'' + b_d x y' + c_d y)`.
    pub fn degree_decomposition(&self) -> Result<Vec<DegreeHomogeneousTerm>> {
        let laurent = |f: &RatFunc| -> Result<(i64, Poly)> {
            let den = f.den();
            let k = den.degree().unwrap_or(0);
            if *den != Poly::monomial(Rat::from_integer(1.into()), k) {
                return Err(Error::Decomposition(format!("pole away from x = 0 in the denominator {den}")));
            }
            Ok((k as i64, f.num().clone()))
        };
        let (kp, np) = laurent(&self.p)?;
        let (kq, nq) = laurent(&self.q)?;
        let (kr, nr) = laurent(&self.r)?;
        // coefficient of x^j in num / x^k
        let at = |k: i64, n: &Poly, j: i64| -> Rat {
            let i = j + k;
            if i < 0 {
                Rat::zero()
            } else {
                n.coeff(i as usize)
            }
        };
        let span = |k: i64, n: &Poly, shift: i64| -> Option<(i64, i64)> {
            n.degree().map(|deg| (-k - shift, deg as i64 - k - shift))
        };
        let ranges: Vec<(i64, i64)> =
            [span(kp, &np, 2), span(kq, &nq, 1), span(kr, &nr, 0)].into_iter().flatten().collect();
        let (Some(lo), Some(hi)) = (ranges.iter().map(|r| r.0).min(), ranges.iter().map(|r| r.1).max()) else {
            return Ok(Vec::new());
        };
        Ok((lo..=hi)
            .map(|d| DegreeHomogeneousTerm {
                d,
                alpha: at(kp, &np, d + 2),
                beta: at(kq, &nq, d + 1),
                gamma: at(kr, &nr, d),
            })
            .filter(|t| !(t.alpha.is_zero() && t.beta.is_zero() && t.gamma.is_zero()))
            .collect())
    }

    /// Largest subspace `V` of polynomials of degree `<= d` with `T(V)`
    /// polynomial and contained in `V`. Returned as a basis.
    pub fn max_invariant_subspace(&self, d: usize) -> Vec<Poly> {
        let mut basis: Vec<Poly> = (0..=d).map(|k| Poly::monomial(Rat::from_integer(1.into()), k)).collect();
        let [pn, qn, rn, den] = &self.common;
        loop {
            if basis.is_empty() {
                return basis;
            }
            // T(v_i) = N_i / den; keep the c with sum c_i N_i = den * sum e_j v_j.
            let images: Vec<Poly> = basis
                .iter()
                .map(|y| {
                    let d1 = y.derivative();
                    &(&(pn * &d1.derivative()) + &(qn * &d1)) + &(rn * y)
                })
                .collect();
            let scaled: Vec<Poly> = basis.iter().map(|v| -&(den * v)).collect();
            let rows = images.iter().chain(&scaled).filter_map(|p| p.degree()).max().map_or(0, |m| m + 1);
            let cols = images.len() + scaled.len();
            let m: Vec<Vec<Rat>> =
                (0..rows).map(|i| images.iter().chain(&scaled).map(|p| p.coeff(i)).collect()).collect();
            let ker = kernel(&m, cols);
            let mut next: Vec<Vec<Rat>> = ker
                .iter()
                .map(|v| {
                    let p = basis.iter().zip(v).fold(Poly::zero(), |acc, (b, c)| &acc + &b.scale(c));
                    (0..=d).map(|i| p.coeff(i)).collect()
                })
                .collect();
            let pivots = crate::ratpoly::rref(&mut next);
            next.truncate(pivots.len());
            let new_basis: Vec<Poly> = next.into_iter().map(Poly::new).collect();
            if new_basis.len() == basis.len() {
                return new_basis;
            }
            basis = new_basis;
        }
    }

    /// The unique operator with `T(y_i) = g_i`, by Cramer's rule on the
    /// system with rows `(y_i'', y_i', y_i)`.
    pub fn reconstruct(ys: [&Poly; 3], gs: [&Poly; 3]) -> Result<DiffOp2> {
        let rows: Vec<[Poly; 3]> = ys
            .iter()
            .map(|y| {
                let d1 = y.derivative();
                [d1.derivative(), d1, (*y).clone()]
            })
            .collect();
        let det = crate::ratpoly::det3(&rows);
        if det.is_zero() {
            return Err(Error::Singular("the three polynomials are linearly dependent".into()));
        }
        let replaced = |col: usize| {
            let m: Vec<[Poly; 3]> = rows
                .iter()
                .zip(gs)
                .map(|(row, g)| {
                    let mut r = row.clone();
                    r[col] = g.clone();
                    r
                })
                .collect();
            RatFunc::ratio(crate::ratpoly::det3(&m), det.clone())
        };
        Ok(DiffOp2::new(replaced(0), replaced(1), replaced(2)))
    }

    /// Sturm-Liouville data `P`, `W`, `R` on `interval`.
    pub fn pslp_data(&self, interval: &Interval) -> Result<PslpData> {
        PslpData::new(self, interval)
    }

    pub fn preserves_flag(&self, flag: &Flag, kmax: usize) -> FlagCertificate {
        flag::check_invariance(self, flag, kmax)
    }
}

impl fmt::Display for DiffOp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] y'' + [{}] y' + [{}] y", self.p, self.q, self.r)
    }
}

/// `A(y) = b (y' - w y)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderOp {
    gauge: RatFunc,
    logderiv: RatFunc,
}

impl FirstOrderOp {
    pub fn new(gauge: RatFunc, logderiv: RatFunc) -> Result<Self> {
        if gauge.is_zero() {
            return Err(Error::ZeroGauge);
        }
        Ok(FirstOrderOp { gauge, logderiv })
    }

    /// `y -> c1 y' + c0 y`
    pub fn from_coeffs(c1: RatFunc, c0: RatFunc) -> Result<Self> {
        if c1.is_zero() {
            return Err(Error::ZeroGauge);
        }
        let w = -(&c0 / &c1);
        Ok(FirstOrderOp { gauge: c1, logderiv: w })
    }

    pub fn gauge(&self) -> &RatFunc {
        &self.gauge
    }

    pub fn logderiv(&self) -> &RatFunc {
        &self.logderiv
    }

    /// Coefficient of `y`, i.e. `-b w`.
    pub fn c0(&self) -> RatFunc {
        -(&self.gauge * &self.logderiv)
    }

    pub fn apply(&self, y: &Poly) -> RatFunc {
        self.apply_rf(&RatFunc::from_poly(y.clone()))
    }

    pub fn apply_rf(&self, y: &RatFunc) -> RatFunc {
        &self.gauge * &(&y.derivative() - &(&self.logderiv * y))
    }

    pub fn annihilates(&self, phi: &QuasiRational) -> bool {
        phi.log_derivative() == self.logderiv
    }

    /// `self . inner` as a second-order operator.
    pub fn compose(&self, inner: &FirstOrderOp) -> DiffOp2 {
        let (b1, b0) = (&self.gauge, self.c0());
        let (a1, a0) = (&inner.gauge, inner.c0());
        let p = b1 * a1;
        let q = &(&(b1 * &a1.derivative()) + &(b1 * &a0)) + &(&b0 * a1);
        let r = &(b1 * &a0.derivative()) + &(&b0 * &a0);
        DiffOp2::new(p, q, r)
    }
}

impl fmt::Display for FirstOrderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (y' - [{}] y)", self.gauge, self.logderiv)
    }
}

/// `T_d(y) = x^d (alpha x^2 y'' + beta x y' + gamma y)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomogeneousTerm {
    pub d: i64,
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl DegreeHomogeneousTerm {
    /// `T_d(x^j) = c x^{j+d}`; returns `c`.
    pub fn monomial_factor(&self, j: i64) -> Rat {
        let j = Rat::from_integer(j.into());
        &(&j * (&j - Rat::from_integer(1.into()))) * &self.alpha + &j * &self.beta + &self.gamma
    }

    pub fn as_operator(&self) -> DiffOp2 {
        let xd = |k: i64, c: &Rat| -> RatFunc {
            let one = Rat::from_integer(1.into());
            if k >= 0 {
                RatFunc::from_poly(Poly::monomial(c.clone(), k as usize))
            } else {
                RatFunc::ratio(Poly::constant(c.clone()), Poly::monomial(one, (-k) as usize))
            }
        };
        DiffOp2::new(xd(self.d + 2, &self.alpha), xd(self.d + 1, &self.beta), xd(self.d, &self.gamma))
    }
}

/// Real poles of a rational operator: the rational ones exactly, and the
/// rest as a squarefree cofactor without rational roots together with its
/// number of real roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSet {
    pub rational: Vec<Rat>,
    pub cofactor: Poly,
    pub cofactor_real_roots: usize,
}

impl PoleSet {
    pub fn of_denominator(den: &Poly) -> Self {
        let sq = squarefree_part(den);
        let rational = rational_roots(&sq);
        let cofactor = rational.iter().fold(sq, |acc, r| acc.exact_div(&Poly::x_minus(r)).expect("root"));
        let all = Interval::new(crate::interval::Bound::NegInf, crate::interval::Bound::PosInf);
        let cofactor_real_roots = count_real_roots(&cofactor, &all);
        PoleSet { rational, cofactor, cofactor_real_roots }
    }

    pub fn real_count(&self) -> usize {
        self.rational.len() + self.cofactor_real_roots
    }

    pub fn is_empty(&self) -> bool {
        self.real_count() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};
    use proptest::prelude::*;

    fn legendre_op() -> DiffOp2 {
        DiffOp2::from_polys(Poly::from_ints(&[1, 0, -1]), Poly::from_ints(&[0, -2]), Poly::zero())
    }

    fn p2() -> Poly {
        Poly::new(vec![rat(-1, 2), int(0), rat(3, 2)])
    }

    #[test]
    fn apply_examples() {
        assert_eq!(legendre_op().apply(&p2()), RatFunc::from_poly(p2().scale(&int(-6))));
        let ex1 = DiffOp2::new(RatFunc::one(), RatFunc::ratio(Poly::constant(int(-2)), Poly::x()), RatFunc::zero());
        assert_eq!(ex1.apply(&Poly::from_ints(&[0, 0, 1])), RatFunc::constant(int(-2)));
        assert!(ex1.apply(&Poly::zero()).is_zero());
    }

    #[test]
    fn poles_examples() {
        let x = || Poly::x();
        let ex2 = DiffOp2::new(
            RatFunc::one(),
            RatFunc::ratio(Poly::from_ints(&[-2, -2]), x()),
            RatFunc::ratio(Poly::constant(int(2)), x()),
        );
        assert!(!ex2.is_polynomial_operator());
        assert_eq!(ex2.poles().rational, vec![int(0)]);
        assert!(legendre_op().is_polynomial_operator());
        assert!(legendre_op().poles().is_empty());
        let irr =
            DiffOp2::new(RatFunc::ratio(Poly::one(), Poly::from_ints(&[29, -14, 5])), RatFunc::zero(), RatFunc::zero());
        let ps = irr.poles();
        assert!(ps.rational.is_empty());
        assert_eq!(ps.cofactor_real_roots, 0);
        assert_eq!(ps.real_count(), 0);
    }

    #[test]
    fn degree_decomposition_examples() {
        // y'' - x y'
        let t = DiffOp2::from_polys(Poly::one(), Poly::from_ints(&[0, -1]), Poly::zero());
        let terms = t.degree_decomposition().unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!((terms[0].d, terms[0].alpha.clone()), (-2, int(1)));
        assert_eq!((terms[1].d, terms[1].beta.clone()), (0, int(-1)));
        assert_eq!(terms[1].monomial_factor(5), int(-5));
        assert!(DiffOp2::zero().degree_decomposition().unwrap().is_empty());
        let sum = terms.iter().fold(DiffOp2::zero(), |acc, t| acc.add(&t.as_operator()));
        assert_eq!(sum, t);
        let bad = DiffOp2::new(RatFunc::ratio(Poly::one(), Poly::from_ints(&[1, 1])), RatFunc::zero(), RatFunc::zero());
        assert!(matches!(bad.degree_decomposition(), Err(Error::Decomposition(_))));
    }

    #[test]
    fn gauge_examples() {
        let t = DiffOp2::from_polys(Poly::one(), Poly::zero(), Poly::zero());
        let g = t.gauge_transform(&RatFunc::from_poly(Poly::x())).unwrap();
        let expected = DiffOp2::new(
            RatFunc::one(),
            RatFunc::ratio(Poly::constant(int(-2)), Poly::x()),
            RatFunc::ratio(Poly::constant(int(2)), Poly::x().pow(2)),
        );
        assert_eq!(g, expected);
        assert_eq!(t.gauge_transform(&RatFunc::one()).unwrap(), t);
        let back = g.gauge_transform(&RatFunc::ratio(Poly::one(), Poly::x())).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.gauge_transform(&RatFunc::zero()), Err(Error::ZeroGauge));
    }

    #[test]
    fn reconstruct_examples() {
        let basis = [Poly::one(), Poly::x(), Poly::from_ints(&[0, 0, 1])];
        let refs = [&basis[0], &basis[1], &basis[2]];
        let images: Vec<Poly> = basis.iter().map(|y| legendre_op().apply(y).as_poly().unwrap()).collect();
        let t = DiffOp2::reconstruct(refs, [&images[0], &images[1], &images[2]]).unwrap();
        assert_eq!(t, legendre_op());
        let z = Poly::zero();
        let two = Poly::constant(int(2));
        let t = DiffOp2::reconstruct(refs, [&z, &z, &two]).unwrap();
        assert_eq!(t, DiffOp2::from_polys(Poly::one(), Poly::zero(), Poly::zero()));
        let dep = [&basis[0], &basis[0], &basis[2]];
        assert!(matches!(DiffOp2::reconstruct(dep, [&z, &z, &z]), Err(Error::Singular(_))));
    }

    #[test]
    fn composition_matches_application() {
        let a = FirstOrderOp::new(
            RatFunc::from_poly(Poly::from_ints(&[1, -1])),
            RatFunc::ratio(Poly::one(), Poly::from_ints(&[3, 1])),
        )
        .unwrap();
        let b = FirstOrderOp::from_coeffs(RatFunc::from_poly(Poly::from_ints(&[1, 1])), RatFunc::constant(rat(3, 2)))
            .unwrap();
        let ba = b.compose(&a);
        for k in 0..6 {
            let y = Poly::from_ints(&[1, 2, -1, 3, 0, 1][..=k]);
            assert_eq!(ba.apply(&y), b.apply_rf(&a.apply(&y)));
        }
    }

    #[test]
    fn invariant_subspaces() {
        assert_eq!(legendre_op().max_invariant_subspace(4).len(), 5);
        // y'' - 2y'/x keeps only span{1, x^2, x^3, ...} inside P_3
        let ex1 = DiffOp2::new(RatFunc::one(), RatFunc::ratio(Poly::constant(int(-2)), Poly::x()), RatFunc::zero());
        assert_eq!(ex1.max_invariant_subspace(3).len(), 3);
        assert_eq!(ex1.max_invariant_subspace(1).len(), 1);
    }

    #[test]
    fn affine_pullback_of_legendre() {
        // X = 2x - 1 maps (0,1) to (-1,1); eigenpolynomials map to eigenpolynomials.
        let t = legendre_op().affine_pullback(&int(2), &int(-1)).unwrap();
        let y = p2().compose_affine(&int(2), &int(-1)).unwrap();
        assert_eq!(t.apply(&y), RatFunc::from_poly(y.scale(&int(-6))));
        assert_eq!(legendre_op().affine_pullback(&int(0), &int(1)), Err(Error::DegenerateAffine));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-5i64..6, 0..7).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn apply_is_linear(y in arb_poly(), z in arb_poly(), c in -4i64..5) {
            let t = DiffOp2::new(
                RatFunc::from_poly(Poly::from_ints(&[0, 1])),
                RatFunc::ratio(Poly::from_ints(&[1, 1]), Poly::from_ints(&[0, 1])),
                RatFunc::constant(int(3)),
            );
            let lhs = t.apply(&(&y.scale(&int(c)) + &z));
            prop_assert_eq!(lhs, &t.apply(&y).scale(&int(c)) + &t.apply(&z));
        }

        #[test]
        fn reconstruct_round_trips(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let t = DiffOp2::new(
                RatFunc::from_poly(Poly::from_ints(&[1, 0, -1])),
                RatFunc::ratio(Poly::from_ints(&[2, -1]), Poly::from_ints(&[3, 1])),
                RatFunc::constant(rat(1, 2)),
            );
            prop_assume!(!crate::ratpoly::wronskian3(&a, &b, &c).is_zero());
            // (x + 3) T has polynomial images
            let scaled = DiffOp2::new(
                &RatFunc::from_poly(Poly::from_ints(&[3, 1])) * t.p(),
                &RatFunc::from_poly(Poly::from_ints(&[3, 1])) * t.q(),
                &RatFunc::from_poly(Poly::from_ints(&[3, 1])) * t.r(),
            );
            let imgs: Vec<Poly> = [&a, &b, &c].iter().map(|y| scaled.apply(y).as_poly().unwrap()).collect();
            let rec = DiffOp2::reconstruct([&a, &b, &c], [&imgs[0], &imgs[1], &imgs[2]]).unwrap();
            prop_assert_eq!(rec, scaled);
        }
    }
}
