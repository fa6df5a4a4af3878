use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::DiffOp2;
use crate::error::{Error, Result};
use crate::ratpoly::{rref, solve, Poly, Rat, RatFunc};

/// A polynomial flag `U_1 < U_2 < ...`, `U_k = span{p_1, ..., p_k}`, given by
/// a closed-form rule for the `k`-th basis element (`k >= 1`).
#[derive(Clone)]
pub struct Flag {
    name: String,
    basis: Arc<dyn Fn(usize) -> Poly + Send + Sync>,
}

impl Flag {
    pub fn new(name: impl Into<String>, basis: impl Fn(usize) -> Poly + Send + Sync + 'static) -> Self {
        Flag { name: name.into(), basis: Arc::new(basis) }
    }

    /// `1, x, x^2, ...`
    pub fn standard() -> Self {
        Flag::new("standard", |k| Poly::monomial(Rat::one(), k - 1))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self, k: usize) -> Poly {
        assert!(k >= 1, "flag bases are indexed from 1");
        (self.basis)(k)
    }

    pub fn basis_up_to(&self, kmax: usize) -> Vec<Poly> {
        (1..=kmax).map(|k| self.basis(k)).collect()
    }

    /// `n_k = deg U_k` for `k = 1..=kmax`.
    pub fn degree_sequence(&self, kmax: usize) -> Vec<usize> {
        let mut n = 0;
        (1..=kmax)
            .map(|k| {
                n = n.max(self.basis(k).degree().unwrap_or(0));
                n
            })
            .collect()
    }

    /// `l_k = n_k + 1 - k`.
    pub fn codimension_sequence(&self, kmax: usize) -> Vec<i64> {
        self.degree_sequence(kmax).iter().enumerate().map(|(i, &n)| n as i64 - i as i64).collect()
    }

    pub fn is_degree_regular(&self, kmax: usize) -> bool {
        self.degree_sequence(kmax).windows(2).all(|w| w[0] < w[1])
    }

    /// No common factor among the first `kmax` basis polynomials.
    pub fn is_primitive(&self, kmax: usize) -> bool {
        self.basis_up_to(kmax).iter().fold(Poly::zero(), |g, p| Poly::gcd(&g, p)).is_constant()
    }

    /// The flag spanned by `q p_k`.
    pub fn gauged(&self, q: Poly) -> Flag {
        let inner = self.basis.clone();
        Flag::new(format!("({q}) * {}", self.name), move |k| &q * &inner(k))
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Flag").field("name", &self.name).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagFailure {
    pub k: usize,
    /// `T(p_k)`
    pub image: RatFunc,
    /// What is left of the image after reducing by `U_k` (the image itself
    /// when it is not a polynomial).
    pub residual: RatFunc,
}

/// Outcome of checking `T(U_k) ⊂ U_k` for `k <= kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCertificate {
    pub kmax: usize,
    /// Coordinates of `T(p_k)` in `p_1, ..., p_k`, for every `k` that passed.
    pub coordinates: Vec<Vec<Rat>>,
    pub failure: Option<FlagFailure>,
}

impl FlagCertificate {
    pub fn is_preserved(&self) -> bool {
        self.failure.is_none()
    }
}

/// Echelon basis with monic elements of distinct degrees.
struct Echelon(Vec<Poly>);

impl Echelon {
    fn reduce(&self, mut g: Poly) -> Poly {
        while let Some(d) = g.degree() {
            let Some(e) = self.0.iter().find(|e| e.degree() == Some(d)) else {
                break;
            };
            g = &g - &e.scale(&g.lead());
        }
        g
    }

    fn insert(&mut self, p: Poly) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        self.0.push(r.monic());
        true
    }
}

pub(super) fn check_invariance(t: &DiffOp2, flag: &Flag, kmax: usize) -> FlagCertificate {
    let mut echelon = Echelon(Vec::new());
    let mut basis = Vec::new();
    let mut coordinates = Vec::new();
    for k in 1..=kmax {
        let pk = flag.basis(k);
        basis.push(pk.clone());
        let fail = |image: RatFunc, residual: RatFunc, coordinates: Vec<Vec<Rat>>| FlagCertificate {
            kmax,
            coordinates,
            failure: Some(FlagFailure { k, image, residual }),
        };
        if !echelon.insert(pk.clone()) {
            // dependent basis: U_k would not have dimension k
            return fail(RatFunc::from_poly(pk.clone()), RatFunc::from_poly(pk), coordinates);
        }
        let image = t.apply(&pk);
        let Some(g) = image.as_poly() else {
            return fail(image.clone(), image, coordinates);
        };
        let residual = echelon.reduce(g.clone());
        if !residual.is_zero() {
            return fail(image, residual.into(), coordinates);
        }
        let rows = basis.iter().chain([&g]).filter_map(Poly::degree).max().unwrap_or(0) + 1;
        let m: Vec<Vec<Rat>> = (0..rows).map(|i| basis.iter().map(|b| b.coeff(i)).collect()).collect();
        let rhs: Vec<Rat> = (0..rows).map(|i| g.coeff(i)).collect();
        coordinates.push(solve(&m, &rhs).expect("image lies in the span"));
    }
    FlagCertificate { kmax, coordinates, failure: None }
}

/// Normal form of a codimension-1 subspace of `P_n`:
/// `x^j + a_j x^gap` for `j < gap`, then `x^j` for `gap < j <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReducedBasis {
    pub n: usize,
    pub gap: usize,
    pub coeffs: Vec<Rat>,
    pub basis: Vec<Poly>,
}

pub fn order_reduced_basis(subspace: &[Poly], n: usize) -> Result<OrderReducedBasis> {
    if subspace.iter().any(|p| p.degree().is_some_and(|d| d > n)) {
        return Err(Error::Shape(format!("a spanning polynomial has degree above {n}")));
    }
    let mut m: Vec<Vec<Rat>> = subspace.iter().map(|p| (0..=n).map(|i| p.coeff(i)).collect()).collect();
    let pivots = rref(&mut m);
    if pivots.len() != n {
        return Err(Error::Shape(format!("subspace has dimension {} in P_{n}, expected codimension 1", pivots.len())));
    }
    let gap = (0..=n).find(|c| !pivots.contains(c)).expect("one free column");
    let coeffs = m[..gap].iter().map(|row| row[gap].clone()).collect();
    let basis = m[..n].iter().map(|row| Poly::new(row.clone())).collect();
    Ok(OrderReducedBasis { n, gap, coeffs, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, Rat};

    fn x_pow(k: usize) -> Poly {
        Poly::monomial(Rat::one(), k)
    }

    #[test]
    fn sequences() {
        let f = Flag::new("1, x^2, x^3", |k| if k == 1 { Poly::one() } else { x_pow(k) });
        assert_eq!(f.degree_sequence(4), vec![0, 2, 3, 4]);
        assert_eq!(f.codimension_sequence(4), vec![0, 1, 1, 1]);
        assert!(f.is_degree_regular(8));
        assert!(f.is_primitive(8));
        let g = Flag::new("x, x^2", x_pow);
        assert!(!g.is_primitive(8));
        assert!(Flag::standard().gauged(Poly::x()).basis(3) == x_pow(3));
    }

    #[test]
    fn order_reduced_examples() {
        let mut sub = vec![Poly::from_ints(&[1, 1])];
        sub.extend((2..=5).map(x_pow));
        let b = order_reduced_basis(&sub, 5).unwrap();
        assert_eq!((b.gap, b.coeffs.clone()), (1, vec![int(1)]));
        let sub: Vec<Poly> = (1..=5).map(x_pow).collect();
        assert_eq!(order_reduced_basis(&sub, 5).unwrap().gap, 0);
        let sub: Vec<Poly> = (0..5).map(x_pow).collect();
        assert_eq!(order_reduced_basis(&sub, 5).unwrap().gap, 5);
        let sub: Vec<Poly> = (2..=5).map(x_pow).collect();
        assert!(matches!(order_reduced_basis(&sub, 5), Err(Error::Shape(_))));
    }
}
