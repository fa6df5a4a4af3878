//! Inner products against quasi-rational weights on `(-1, 1)` and `(0, inf)`.
//!
//! A weight is split into a classical factor, integrated exactly by a matched
//! Gauss rule, and a rational factor without poles on the closed interval,
//! treated as part of the integrand. Node counts double from 32 to 4096.

mod dd;
mod gauss;

pub use dd::{rel_close, DDPoly, DD};
pub use gauss::{gauss_rule, GaussRule, RuleKind};

use num_traits::Zero;

use crate::diffop::Flag;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quasirational::{Orientation, QuasiRational};
use crate::ratpoly::{count_real_roots, fmt_rat, int, Poly, Rat, RatFunc};

pub const MIN_NODES: usize = 32;
pub const MAX_NODES: usize = 4096;

#[derive(Clone, Debug)]
pub struct WeightedInterval {
    weight: QuasiRational,
    interval: Interval,
    kind: RuleKind,
    smooth: RatFunc,
    smooth_num: DDPoly,
    smooth_den: DDPoly,
}

impl WeightedInterval {
    pub fn new(weight: &QuasiRational, interval: &Interval) -> Result<Self> {
        let s = weight.simplify();
        if s.is_zero() || !s.is_positive_on(interval) {
            return Err(Error::Domain(format!("weight {s} is not positive on {interval}")));
        }
        let exponent_at =
            |r: &Rat| -> Rat { s.power_factors().iter().filter(|f| &f.root == r).map(|f| f.exponent.clone()).sum() };
        let (kind, classical) = if *interval == Interval::jacobi() {
            if !s.exp_part().is_zero() {
                return Err(Error::Domain("exponential factor on a finite interval".into()));
            }
            let (alpha, beta) = (exponent_at(&int(1)), exponent_at(&int(-1)));
            let c = QuasiRational::power(int(1), alpha.clone(), Orientation::RootMinusX).with_power(
                int(-1),
                beta.clone(),
                Orientation::XMinusRoot,
            );
            (RuleKind::Jacobi { alpha, beta }, c)
        } else if *interval == Interval::laguerre() {
            if *s.exp_part() != Poly::from_ints(&[0, -1]) {
                return Err(Error::Domain(format!("expected the factor e^(-x), got e^({})", s.exp_part())));
            }
            let k = exponent_at(&int(0));
            let c = QuasiRational::power(int(0), k.clone(), Orientation::XMinusRoot)
                .mul(&QuasiRational::exp(Poly::from_ints(&[0, -1])));
            (RuleKind::Laguerre { k }, c)
        } else {
            return Err(Error::Domain(format!("no matched Gauss rule on {interval}")));
        };
        match &kind {
            RuleKind::Jacobi { alpha, beta } if alpha <= &int(-1) || beta <= &int(-1) => {
                return Err(Error::Domain(format!(
                    "infinite moments: endpoint exponents ({}, {})",
                    fmt_rat(alpha),
                    fmt_rat(beta)
                )))
            }
            RuleKind::Laguerre { k } if k <= &int(-1) => {
                return Err(Error::Domain(format!("infinite moments: exponent {} at 0", fmt_rat(k))))
            }
            _ => {}
        }
        let smooth = s
            .div(&classical)?
            .as_ratfunc()
            .ok_or_else(|| Error::Domain(format!("{s} is not a classical factor times a rational function")))?;
        let den = smooth.den();
        let closed_pole = [&interval.lo, &interval.hi].iter().filter_map(|b| b.finite()).any(|e| den.eval(e).is_zero());
        if closed_pole || count_real_roots(den, interval) > 0 {
            return Err(Error::Domain(format!("rational factor {smooth} has a pole on the closed interval")));
        }
        Ok(WeightedInterval {
            weight: s,
            interval: interval.clone(),
            kind,
            smooth_num: DDPoly::from_poly(smooth.num()),
            smooth_den: DDPoly::from_poly(smooth.den()),
            smooth,
        })
    }

    /// `(1 - x)^alpha (1 + x)^beta` on `(-1, 1)`.
    pub fn jacobi(alpha: Rat, beta: Rat) -> Result<Self> {
        let w = QuasiRational::power(int(1), alpha, Orientation::RootMinusX).with_power(
            int(-1),
            beta,
            Orientation::XMinusRoot,
        );
        WeightedInterval::new(&w, &Interval::jacobi())
    }

    pub fn weight(&self) -> &QuasiRational {
        &self.weight
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    /// The rational factor left after removing the classical one.
    pub fn smooth_factor(&self) -> &RatFunc {
        &self.smooth
    }

    pub fn jacobi_exponents(&self) -> Option<(Rat, Rat)> {
        match &self.kind {
            RuleKind::Jacobi { alpha, beta } => Some((alpha.clone(), beta.clone())),
            _ => None,
        }
    }

    pub fn laguerre_exponent(&self) -> Option<Rat> {
        match &self.kind {
            RuleKind::Laguerre { k } => Some(k.clone()),
            _ => None,
        }
    }

    /// `(sum w_i f g rho, sum w_i |f g rho|)` with the `n`-node rule.
    fn estimate(&self, f: &DDPoly, g: &DDPoly, n: usize) -> Result<(DD, DD)> {
        let rule = gauss_rule(&self.kind, n)?;
        let mut acc = DD::ZERO;
        let mut abs = DD::ZERO;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = *w * f.eval(*x) * g.eval(*x) * self.smooth_num.eval(*x) / self.smooth_den.eval(*x);
            acc += v;
            abs += v.abs();
        }
        Ok((acc, abs))
    }

    /// Estimates with `32, 64, ...` nodes up to `max_nodes`.
    pub fn convergence_history(&self, f: &Poly, g: &Poly, max_nodes: usize) -> Result<Vec<f64>> {
        let (f, g) = (DDPoly::from_poly(f), DDPoly::from_poly(g));
        let mut out = Vec::new();
        let mut n = MIN_NODES;
        while n <= max_nodes {
            out.push(self.estimate(&f, &g, n)?.0.to_f64());
            n *= 2;
        }
        Ok(out)
    }
}

/// `int f g W dx` in double-double, doubling the node count until two
/// successive estimates agree to `target_rel_err / 10` of `int |f g W|`.
pub fn inner_product_dd(f: &Poly, g: &Poly, wi: &WeightedInterval, target_rel_err: f64) -> Result<DD> {
    let (fd, gd) = (DDPoly::from_poly(f), DDPoly::from_poly(g));
    let (mut prev, _) = wi.estimate(&fd, &gd, MIN_NODES)?;
    let mut n = MIN_NODES;
    while n < MAX_NODES {
        n *= 2;
        let (cur, abs) = wi.estimate(&fd, &gd, n)?;
        let gap = (cur - prev).abs().to_f64();
        if gap <= target_rel_err / 10.0 * abs.to_f64() || abs.to_f64() == 0.0 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Numerical(format!(
        "inner product did not reach relative error {target_rel_err:e} with {MAX_NODES} nodes (last estimate {prev})"
    )))
}

pub fn inner_product(f: &Poly, g: &Poly, wi: &WeightedInterval, target_rel_err: f64) -> Result<f64> {
    inner_product_dd(f, g, wi, target_rel_err).map(DD::to_f64)
}

pub fn gram_matrix(basis: &[Poly], wi: &WeightedInterval, target_rel_err: f64) -> Result<Vec<Vec<DD>>> {
    let n = basis.len();
    let mut g = vec![vec![DD::ZERO; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = inner_product_dd(&basis[i], &basis[j], wi, target_rel_err)?;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// How the orthogonalized polynomials are scaled; entry `i` applies to the
/// `i`-th output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    ValueAtOne(Vec<Rat>),
    LeadingCoefficient(Vec<Rat>),
}

/// Relative accuracy requested for the Gram matrix.
const GRAM_TARGET: f64 = 1e-26;

/// Orthogonalizes the first `n_max` flag elements against the weight, in
/// double-double, and returns ascending f64 coefficient vectors.
pub fn gram_schmidt(flag: &Flag, wi: &WeightedInterval, n_max: usize, norm: &Normalization) -> Result<Vec<Vec<f64>>> {
    let targets = match norm {
        Normalization::ValueAtOne(t) | Normalization::LeadingCoefficient(t) => t,
    };
    if targets.len() < n_max {
        return Err(Error::Shape(format!("{} normalization values for {n_max} polynomials", targets.len())));
    }
    let basis = flag.basis_up_to(n_max);
    if !flag.is_degree_regular(n_max) {
        return Err(Error::Shape("flag degrees must increase strictly".into()));
    }
    let gram = gram_matrix(&basis, wi, GRAM_TARGET)?;
    let ip = |a: &[DD], b: &[DD]| -> DD {
        let mut s = DD::ZERO;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += *ai * *bj * gram[i][j];
            }
        }
        s
    };
    let mut ortho: Vec<Vec<DD>> = Vec::new();
    for i in 0..n_max {
        let mut c = vec![DD::ZERO; n_max];
        c[i] = DD::ONE;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for e in &ortho {
                let t = ip(&c, e) / ip(e, e);
                for (ck, ek) in c.iter_mut().zip(e) {
                    *ck -= t * *ek;
                }
            }
        }
        let nn = ip(&c, &c);
        if nn.to_f64() <= 1e-28 * gram[i][i].to_f64() {
            return Err(Error::Numerical(format!(
                "Gram-Schmidt lost all precision at element {}; try a smaller n_max",
                i + 1
            )));
        }
        ortho.push(c);
    }
    let dd_basis: Vec<DDPoly> = basis.iter().map(DDPoly::from_poly).collect();
    let width = basis.iter().filter_map(Poly::degree).max().unwrap_or(0) + 1;
    ortho
        .iter()
        .zip(targets)
        .map(|(c, target)| {
            let mut coeffs = vec![DD::ZERO; width];
            for (ck, b) in c.iter().zip(&dd_basis) {
                for (j, bj) in b.0.iter().enumerate() {
                    coeffs[j] += *ck * *bj;
                }
            }
            let current = match norm {
                Normalization::ValueAtOne(_) => coeffs.iter().copied().sum::<DD>(),
                Normalization::LeadingCoefficient(_) => *coeffs.iter().rev().find(|c| c.hi != 0.0).unwrap_or(&DD::ZERO),
            };
            if current.hi == 0.0 {
                return Err(Error::Numerical("normalization divides by zero".into()));
            }
            let s = DD::from_rat(target) / current;
            Ok(coeffs.iter().map(|c| (*c * s).to_f64()).collect())
        })
        .collect()
}

/// Largest `|a_i - b_i|` over coefficients, relative to the largest `|b_i|`.
pub fn coeff_rel_error(a: &[f64], b: &Poly) -> f64 {
    let n = a.len().max(b.coeffs().len());
    let bf: Vec<f64> = (0..n).map(|i| crate::ratpoly::to_f64(&b.coeff(i))).collect();
    let scale = bf.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (0..n).map(|i| (a.get(i).copied().unwrap_or(0.0) - bf[i]).abs()).fold(0.0, f64::max) / scale
}
