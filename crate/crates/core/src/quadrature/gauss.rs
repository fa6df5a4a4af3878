//! Gauss-Jacobi and Gauss-Laguerre rules: Golub-Welsch eigenvalues in f64,
//! then Newton polishing and Christoffel weights in double-double.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::dd::DD;
use crate::error::{Error, Result};
use crate::gamma::GammaRatio;
use crate::ratpoly::{fmt_rat, int, Rat};

/// The classical factor a rule integrates exactly against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    /// `(1 - x)^alpha (1 + x)^beta` on `(-1, 1)`
    Jacobi { alpha: Rat, beta: Rat },
    /// `x^k e^{-x}` on `(0, inf)`
    Laguerre { k: Rat },
}

#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<DD>,
    pub weights: Vec<DD>,
}

impl RuleKind {
    fn validate(&self) -> Result<()> {
        let bad = |r: &Rat| r <= &int(-1);
        match self {
            RuleKind::Jacobi { alpha, beta } if bad(alpha) || bad(beta) => Err(Error::Domain(format!(
                "Gauss-Jacobi needs exponents > -1, got ({}, {})",
                fmt_rat(alpha),
                fmt_rat(beta)
            ))),
            RuleKind::Laguerre { k } if bad(k) => {
                Err(Error::Domain(format!("Gauss-Laguerre needs k > -1, got {}", fmt_rat(k))))
            }
            _ => Ok(()),
        }
    }

    /// Total mass of the measure.
    fn mass(&self) -> f64 {
        match self {
            RuleKind::Jacobi { alpha, beta } => {
                let s = alpha + beta;
                GammaRatio::pow2(&s + int(1))
                    .mul_gamma(&(alpha + int(1)), 1)
                    .and_then(|g| g.mul_gamma(&(beta + int(1)), 1))
                    .and_then(|g| g.mul_gamma(&(&s + int(2)), -1))
                    .map(|g| g.to_f64())
                    .expect("exponents > -1")
            }
            RuleKind::Laguerre { k } => GammaRatio::gamma(&(k + int(1))).expect("k > -1").to_f64(),
        }
    }

    /// Recurrence coefficients `a_0..a_{n-1}` and `b_1..b_n` of the monic
    /// orthogonal polynomials, `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`.
    fn recurrence(&self, n: usize) -> (Vec<DD>, Vec<DD>) {
        match self {
            RuleKind::Jacobi { alpha, beta } => {
                let (a, b) = (DD::from_rat(alpha), DD::from_rat(beta));
                let s = a + b;
                let diag = (0..n)
                    .map(|k| {
                        if k == 0 {
                            (b - a) / (s + 2.0)
                        } else {
                            let t = s + 2.0 * k as f64;
                            (b * b - a * a) / (t * (t + 2.0))
                        }
                    })
                    .collect();
                let off = (1..=n)
                    .map(|k| {
                        let kf = k as f64;
                        if k == 1 {
                            (a + 1.0) * (b + 1.0) * 4.0 / ((s + 2.0).sqr() * (s + 3.0))
                        } else {
                            let t = s + 2.0 * kf;
                            DD::new(4.0 * kf) * (a + kf) * (b + kf) * (s + kf) / (t.sqr() * (t + 1.0) * (t - 1.0))
                        }
                    })
                    .collect();
                (diag, off)
            }
            RuleKind::Laguerre { k } => {
                let kk = DD::from_rat(k);
                let diag = (0..n).map(|j| kk + (2 * j + 1) as f64).collect();
                let off = (1..=n).map(|j| (kk + j as f64) * j as f64).collect();
                (diag, off)
            }
        }
    }
}

/// Symmetric tridiagonal eigenvalues by implicit QL; `e[i]` couples `i` and `i+1`.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    e.resize(n, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Numerical("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

struct Eval {
    p: DD,
    dp: DD,
    /// `sum_{k<n} q_k^2` with `q_0 = 1`, orthonormal up to `sqrt(mass)`
    sum: DD,
    /// stored values are true values times `2^-scale`
    scale: i32,
}

fn evaluate(x: DD, diag: &[DD], sqrt_off: &[DD]) -> Eval {
    let n = diag.len();
    // orthonormal q_k (up to the mass) and derivative, then p_n up to a constant
    let (mut q0, mut q1) = (DD::ZERO, DD::ONE);
    let (mut d0, mut d1) = (DD::ZERO, DD::ZERO);
    let mut sum = DD::ONE;
    let mut scale = 0;
    for k in 0..n {
        let back = if k == 0 { DD::ZERO } else { sqrt_off[k - 1] };
        let t = x - diag[k];
        let qn = t * q1 - back * q0;
        let dn = t * d1 + q1 - back * d0;
        if k + 1 == n {
            return Eval { p: qn, dp: dn, sum, scale };
        }
        let inv = DD::ONE / sqrt_off[k];
        (q0, q1) = (q1, qn * inv);
        (d0, d1) = (d1, dn * inv);
        sum += q1.sqr();
        if q1.hi.abs() > 1e150 {
            q0 = q0.ldexp(-500);
            q1 = q1.ldexp(-500);
            d0 = d0.ldexp(-500);
            d1 = d1.ldexp(-500);
            sum = sum.ldexp(-1000);
            scale += 500;
        }
    }
    Eval { p: q1, dp: d1, sum, scale }
}

fn build(kind: &RuleKind, n: usize) -> Result<GaussRule> {
    kind.validate()?;
    if n == 0 {
        return Err(Error::Numerical("a Gauss rule needs at least one node".into()));
    }
    let (diag, off) = kind.recurrence(n);
    let sqrt_off: Vec<DD> = off.iter().map(|b| b.sqrt()).collect();
    let approx = tridiagonal_eigenvalues(
        diag.iter().map(|a| a.to_f64()).collect(),
        sqrt_off[..n - 1].iter().map(|b| b.to_f64()).collect(),
    )?;
    let mass = kind.mass();
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for x0 in approx {
        let mut x = DD::new(x0);
        for _ in 0..4 {
            let ev = evaluate(x, &diag, &sqrt_off);
            let step = ev.p / ev.dp;
            x -= step;
            if step.abs().hi <= 1e-31 * x.abs().hi.max(1e-300) {
                break;
            }
        }
        let ev = evaluate(x, &diag, &sqrt_off);
        if !x.is_finite() || !ev.sum.is_finite() {
            return Err(Error::Numerical(format!("Gauss rule with {n} nodes lost precision")));
        }
        nodes.push(x);
        weights.push((DD::new(mass) / ev.sum).ldexp(-2 * ev.scale));
    }
    Ok(GaussRule { nodes, weights })
}

type RuleCache = Mutex<HashMap<(RuleKind, usize), Arc<GaussRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-node rule, cached per `(kind, n)`.
pub fn gauss_rule(kind: &RuleKind, n: usize) -> Result<Arc<GaussRule>> {
    let key = (kind.clone(), n);
    if let Some(r) = cache().lock().expect("rule cache").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build(kind, n)?);
    cache().lock().expect("rule cache").insert(key, rule.clone());
    Ok(rule)
}
