//! Verification suites: named checks with exact or numeric residuals.

use std::fmt;
use std::str::FromStr;

use crate::classical::{classical_jacobi_op, identity_suite, quasi_rational_seeds, JacobiParams};
use crate::diffop::example;
use crate::error::{Error, Result};
use crate::factorization::{factorize, shape_gauge, FactorizationKind};
use crate::family::Family;
use crate::quadrature::{inner_product, WeightedInterval};
use crate::ratpoly::{int, rat, Poly, RatFunc};
use crate::x1::{
    x1_jacobi_from_general, x1_jacobi_op, x1_laguerre_from_general, x1_laguerre_op, X1JacobiParams, X1LaguerreParams,
};
use crate::xm::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Factorizations,
    Orthogonality,
    Norms,
    Flags,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "factorizations" => Suite::Factorizations,
            "orthogonality" => Suite::Orthogonality,
            "norms" => Suite::Norms,
            "flags" => Suite::Flags,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// `"0"` for exact identities, a float for numeric ones, or an error.
    pub residual: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: residual {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.residual)
    }
}

fn exact(name: impl Into<String>, residual_zero: bool, residual: impl fmt::Display) -> Check {
    Check { name: name.into(), passed: residual_zero, residual: residual.to_string() }
}

fn numeric(name: impl Into<String>, value: f64, tol: f64) -> Check {
    Check { name: name.into(), passed: value.is_finite() && value <= tol, residual: format!("{value:.3e}") }
}

fn errored(name: impl Into<String>, e: &Error) -> Check {
    Check { name: name.into(), passed: false, residual: format!("error: {e}") }
}

fn poly_check(name: impl Into<String>, r: Poly) -> Check {
    exact(name, r.is_zero(), r)
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Family to check; `None` runs a default sample of every family.
    pub family: Option<Family>,
    /// Flag example for the `flags` suite.
    pub example: Option<u8>,
    /// Number of family members to check.
    pub count: usize,
    pub kmax: usize,
    /// Tolerance for numeric checks.
    pub tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { family: None, example: None, count: 9, kmax: 12, tol: 1e-8 }
    }
}

pub fn default_families() -> Vec<Family> {
    vec![
        Family::ClassicalJacobi(JacobiParams::new(rat(5, 4), rat(1, 2))),
        Family::X1Jacobi(X1JacobiParams::new(int(1), int(2)).expect("valid")),
        Family::X1Laguerre(X1LaguerreParams::new(int(2)).expect("valid")),
        Family::XmJacobi(XmParams::new(rat(5, 4), rat(1, 2), 2)),
        Family::XmJacobi(XmParams::new(rat(1, 3), rat(-1, 2), 2)),
    ]
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Vec<Check> {
    let families = opts.family.clone().map_or_else(default_families, |f| vec![f]);
    let mut out = Vec::new();
    let each = |out: &mut Vec<Check>, f: fn(&Family, &SuiteOptions) -> Vec<Check>| {
        for fam in &families {
            out.extend(f(fam, opts));
        }
    };
    if matches!(suite, Suite::Identities | Suite::All) {
        each(&mut out, identities);
    }
    if matches!(suite, Suite::Factorizations | Suite::All) {
        each(&mut out, factorizations);
    }
    if matches!(suite, Suite::Orthogonality | Suite::All) {
        each(&mut out, orthogonality);
    }
    if matches!(suite, Suite::Norms | Suite::All) {
        each(&mut out, norms);
    }
    if matches!(suite, Suite::Flags | Suite::All) {
        match opts.example {
            Some(i) => out.extend(flag_example(i, opts.kmax)),
            None if opts.family.is_none() => (1..=5).for_each(|i| out.extend(flag_example(i, opts.kmax))),
            None => {}
        }
        if opts.example.is_none() || opts.family.is_some() {
            each(&mut out, family_flag);
        }
    }
    out
}

fn label(fam: &Family) -> String {
    let ps: Vec<String> = fam.params().iter().map(|(k, v)| format!("{k}={}", crate::ratpoly::fmt_rat(v))).collect();
    format!("{fam}({})", ps.join(","))
}

fn identities(fam: &Family, opts: &SuiteOptions) -> Vec<Check> {
    let l = label(fam);
    let t = match fam.operator() {
        Ok(t) => t,
        Err(e) => return vec![errored(format!("{l} operator"), &e)],
    };
    let mut out = Vec::new();
    let n0 = fam.first_degree();
    for n in n0..n0 + opts.count {
        let name = format!("{l} eigenrelation n={n}");
        match fam.poly(n) {
            Ok(y) => {
                let r = &t.apply(&y) - &RatFunc::from_poly(y.scale(&fam.eigenvalue(n)));
                out.push(exact(name, r.is_zero(), r));
            }
            Err(e) => out.push(errored(name, &e)),
        }
    }
    match fam {
        Family::ClassicalJacobi(p) => {
            for n in 0..opts.count.min(11) {
                for c in identity_suite(p, 2, n) {
                    out.push(exact(format!("{l} {} n={n}", c.name), c.holds(), &c.residual));
                }
            }
        }
        Family::XmJacobi(p) => {
            for n in p.m..p.m + opts.count {
                if let Ok(y) = xm_poly(p, n) {
                    out.push(exact(format!("{l} divisibility n={n}"), in_exceptional_subspace(p, &y), "-"));
                    out.push(poly_check(
                        format!("{l} value at 1, n={n}"),
                        Poly::constant(y.eval(&int(1)) - xm_value_at_one(p, n)),
                    ));
                }
            }
            let up = p.shift(1, 1);
            if admissible(&up).is_ok_and(|a| a.is_admissible()) && admissible(p).is_ok_and(|a| a.is_admissible()) {
                for k in 0..opts.count.min(11) {
                    let lhs = xm_poly(&up, p.m + k).and_then(|y| xm_raise(p, &y));
                    let rhs = xm_poly(p, p.m + k + 1).map(|y| y.scale(&xm_raising_constant(k)));
                    push_poly_eq(&mut out, format!("{l} raising k={k}"), lhs, rhs);
                    if k >= 1 {
                        let lhs = xm_poly(p, p.m + k).and_then(|y| xm_lower(p, &y));
                        let rhs = xm_poly(&up, p.m + k - 1).map(|y| y.scale(&xm_lowering_constant(p, k)));
                        push_poly_eq(&mut out, format!("{l} lowering k={k}"), lhs, rhs);
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn push_poly_eq(out: &mut Vec<Check>, name: String, lhs: Result<Poly>, rhs: Result<Poly>) {
    match lhs.and_then(|a| rhs.map(|b| &a - &b)) {
        Ok(r) => out.push(poly_check(name, r)),
        Err(e) => out.push(errored(name, &e)),
    }
}

fn op_check(name: String, lhs: Result<crate::diffop::DiffOp2>, rhs: Result<crate::diffop::DiffOp2>) -> Check {
    match lhs.and_then(|a| rhs.map(|b| a.sub(&b))) {
        Ok(d) => exact(name, d.is_zero(), if d.is_zero() { "0".to_string() } else { d.to_string() }),
        Err(e) => errored(name, &e),
    }
}

fn factorizations(fam: &Family, _opts: &SuiteOptions) -> Vec<Check> {
    let l = label(fam);
    let mut out = Vec::new();
    match fam {
        Family::ClassicalJacobi(p) => {
            let t = classical_jacobi_op(p);
            let seeds = quasi_rational_seeds(p, 0);
            let name = format!("{l} state-deleting T = BA + lambda0");
            match factorize(&t, &seeds[0].0, &RatFunc::one(), &seeds[0].1) {
                Ok(f) => {
                    out.push(exact(name, f.kind == FactorizationKind::StateDeleting, f.kind));
                    let s = &p.alpha + &p.beta + int(2);
                    out.push(op_check(
                        format!("{l} partner AB + lambda0 = T_(alpha+1,beta+1) - (alpha+beta+2)"),
                        Ok(f.partner.clone()),
                        Ok(classical_jacobi_op(&p.shift(1, 1)).add_scalar(&-s)),
                    ));
                }
                Err(e) => out.push(errored(name, &e)),
            }
        }
        Family::XmJacobi(p) => {
            let (a, b, m) = (&p.alpha, &p.beta, p.m);
            let mm = int(m as i64);
            let lambda0 = -((&mm - a) * (&mm + b + int(1)));
            out.push(op_check(
                format!("{l} isospectral B A + lambda0 = T_(alpha,beta)"),
                isospectral_b(a, b, m).and_then(|bo| Ok(bo.compose(&isospectral_a(a, b, m)?).add_scalar(&lambda0))),
                Ok(classical_jacobi_op(&p.classical())),
            ));
            let q = p.shift(1, -1);
            let seed = quasi_rational_seeds(&q.classical(), m)[2].0.clone();
            let gauge = RatFunc::from_poly(&Poly::from_ints(&[1, -1]) * &weight_xi(p));
            let lq = -((&mm - &q.alpha) * (&mm + &q.beta + int(1)));
            out.push(op_check(
                format!("{l} isospectral partner A B + lambda0 = T_(alpha,beta,m)"),
                factorize(&classical_jacobi_op(&q.classical()), &seed, &gauge, &lq).map(|f| f.partner),
                xm_operator(p),
            ));
            out.push(op_check(
                format!("{l} state-deleting B_hat A_hat = T_(alpha,beta,m)"),
                xm_raising_op(p).and_then(|r| Ok(r.compose(&xm_lowering_op(p)?))),
                xm_operator(p),
            ));
            let s = a + b + int(2);
            out.push(op_check(
                format!("{l} state-adding A_hat B_hat + alpha+beta+2 = T_(alpha+1,beta+1,m)"),
                xm_lowering_op(p).and_then(|lo| Ok(lo.compose(&xm_raising_op(p)?).add_scalar(&s))),
                xm_operator(&p.shift(1, 1)),
            ));
            let name = format!("{l} shape-invariant gauge from P, P_kappa, P_h");
            out.push(match shape_invariant(p) {
                Ok(kind) => exact(name, kind == FactorizationKind::StateDeleting, kind),
                Err(e) => errored(name, &e),
            });
        }
        Family::X1Jacobi(p) => out.push(op_check(
            format!("{l} pullback of the general codimension-1 operator"),
            x1_jacobi_from_general(p),
            Ok(x1_jacobi_op(p)),
        )),
        Family::X1Laguerre(p) => out.push(op_check(
            format!("{l} pullback of the general codimension-1 operator"),
            x1_laguerre_from_general(p),
            Ok(x1_laguerre_op(p)),
        )),
    }
    out
}

fn shape_invariant(p: &XmParams) -> Result<FactorizationKind> {
    let iv = crate::interval::Interval::jacobi();
    let t = xm_operator(p)?;
    let up = xm_operator(&p.shift(1, 1))?;
    let b = shape_gauge(t.p(), &t.pslp_data(&iv)?.p, &up.pslp_data(&iv)?.p)?;
    let phi = crate::quasirational::QuasiRational::from_poly(xm_poly(p, p.m)?);
    let f = factorize(&t, &phi, &b, &int(0))?;
    if f.partner.add_scalar(&(&p.alpha + &p.beta + int(2))) != up {
        return Err(Error::ShapeInvariance("partner is not the shifted operator".into()));
    }
    Ok(f.kind)
}

fn weighted(fam: &Family) -> Result<WeightedInterval> {
    if !fam.has_positive_weight()? {
        return Err(Error::Parameter(format!("{} has no positive weight", label(fam))));
    }
    WeightedInterval::new(&fam.weight(), &fam.interval())
}

fn orthogonality(fam: &Family, opts: &SuiteOptions) -> Vec<Check> {
    let l = label(fam);
    let tol = opts.tol.min(1e-10);
    let setup = || -> Result<(WeightedInterval, Vec<Poly>, Vec<f64>)> {
        let wi = weighted(fam)?;
        let n0 = fam.first_degree();
        let ys = (n0..n0 + opts.count).map(|n| fam.poly(n)).collect::<Result<Vec<_>>>()?;
        let norms = ys.iter().map(|y| inner_product(y, y, &wi, tol * 0.1)).collect::<Result<Vec<_>>>()?;
        Ok((wi, ys, norms))
    };
    let (wi, ys, norms) = match setup() {
        Ok(s) => s,
        Err(e) => return vec![errored(format!("{l} orthogonality"), &e)],
    };
    let n0 = fam.first_degree();
    let mut out = Vec::new();
    for i in 0..ys.len() {
        for j in 0..i {
            let name = format!("{l} <y_{}, y_{}>", n0 + i, n0 + j);
            match inner_product(&ys[i], &ys[j], &wi, tol * 0.1) {
                Ok(v) => out.push(numeric(name, v.abs() / (norms[i] * norms[j]).sqrt(), tol)),
                Err(e) => out.push(errored(name, &e)),
            }
        }
    }
    out
}

fn norms(fam: &Family, opts: &SuiteOptions) -> Vec<Check> {
    let l = label(fam);
    let wi = match weighted(fam) {
        Ok(w) => w,
        Err(e) => return vec![errored(format!("{l} norms"), &e)],
    };
    let n0 = fam.first_degree();
    let mut out = Vec::new();
    for n in n0..n0 + opts.count {
        let Some(closed) = fam.norm(n) else { return out };
        let name = format!("{l} norm n={n}");
        let q = fam.poly(n).and_then(|y| inner_product(&y, &y, &wi, opts.tol * 0.01));
        match (q, closed) {
            (Ok(q), Ok(c)) => out.push(numeric(name, (q / c - 1.0).abs(), opts.tol)),
            (Err(e), _) | (_, Err(e)) => out.push(errored(name, &e)),
        }
    }
    out
}

fn flag_example(i: u8, kmax: usize) -> Vec<Check> {
    match example(i) {
        Ok(ex) => ex
            .operators
            .iter()
            .map(|(name, t)| {
                let cert = t.preserves_flag(&ex.flag, kmax);
                let residual = match &cert.failure {
                    None => "0".to_string(),
                    Some(f) => format!("k={}: {}", f.k, f.residual),
                };
                exact(
                    format!("example {i} ({}) preserved by {name} up to k={kmax}", ex.flag.name()),
                    cert.is_preserved(),
                    residual,
                )
            })
            .collect(),
        Err(e) => vec![errored(format!("example {i}"), &e)],
    }
}

fn family_flag(fam: &Family, opts: &SuiteOptions) -> Vec<Check> {
    let l = label(fam);
    match fam.operator() {
        Ok(t) => {
            let cert = t.preserves_flag(&fam.flag(), opts.kmax);
            let residual = cert.failure.as_ref().map_or("0".to_string(), |f| format!("k={}: {}", f.k, f.residual));
            vec![exact(format!("{l} flag preserved up to k={}", opts.kmax), cert.is_preserved(), residual)]
        }
        Err(e) => vec![errored(format!("{l} flag"), &e)],
    }
}
