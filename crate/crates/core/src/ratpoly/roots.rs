//! Sturm sequences, real root counting and exact rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{sign, Poly, Rat};
use crate::interval::{Bound, Interval};

/// `p / gcd(p, p')`, made monic. Zero stays zero.
pub fn squarefree_part(p: &Poly) -> Poly {
    if p.is_constant() {
        return p.monic();
    }
    let g = Poly::gcd(p, &p.derivative());
    p.exact_div(&g).expect("gcd divides").monic()
}

/// Classical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone()];
    if p.is_constant() {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps signs and tames coefficient growth.
        let l = r.lead().abs();
        seq.push(-&r.scale(&l.recip()));
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn variations(seq: &[Poly], at: &Bound) -> usize {
    match at {
        Bound::Finite(x) => sign_changes(seq.iter().map(|p| sign(&p.eval(x)))),
        Bound::PosInf => sign_changes(seq.iter().map(|p| sign(&p.lead()))),
        Bound::NegInf => sign_changes(seq.iter().map(|p| {
            let s = sign(&p.lead());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        })),
    }
}

/// Number of distinct real roots of `p` in the open interval.
///
/// Panics on the zero polynomial, which has no finite root count.
pub fn count_real_roots(p: &Poly, interval: &Interval) -> usize {
    assert!(!p.is_zero(), "the zero polynomial vanishes everywhere");
    let mut s = squarefree_part(p);
    for end in [&interval.lo, &interval.hi] {
        if let Bound::Finite(a) = end {
            if s.eval(a).is_zero() {
                s = s.exact_div(&Poly::x_minus(a)).expect("root");
            }
        }
    }
    if s.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(&s);
    variations(&seq, &interval.lo).saturating_sub(variations(&seq, &interval.hi))
}

/// Distinct rational roots of `p` in increasing order.
///
/// A root `u/v` of a primitive integer polynomial has `v | lead`, so
/// `root * lead` is an integer; real roots are isolated by Sturm bisection
/// until the bracket is narrower than `1/lead`, then the single candidate is
/// tested exactly.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    let s = squarefree_part(p);
    if s.is_constant() {
        return Vec::new();
    }
    let den_lcm = s.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = s.coeffs().iter().map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer()).collect();
    let lead = ints.last().expect("nonconstant").abs();
    let width_limit = Rat::new(BigInt::one(), lead.clone());
    let cauchy =
        s.coeffs()[..s.coeffs().len() - 1].iter().map(|c| c.abs()).fold(Rat::zero(), |m, c| if c > m { c } else { m })
            + Rat::one();

    let seq = sturm_sequence(&s);
    let count = |a: &Rat, b: &Rat| {
        variations(&seq, &Bound::Finite(a.clone())).saturating_sub(variations(&seq, &Bound::Finite(b.clone())))
    };
    let mut roots = Vec::new();
    let lo = -cauchy.clone();
    if s.eval(&lo).is_zero() {
        roots.push(lo.clone());
    }
    // Sturm counts roots in (a, b]; an explicit stack keeps it iterative.
    let mut stack = vec![(lo, cauchy)];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if &b - &a < width_limit {
            // Candidates k/lead in (a, b].
            let lead_r = Rat::from_integer(lead.clone());
            let mut k = (&a * &lead_r).floor() + Rat::one();
            while k <= &b * &lead_r {
                let cand = &k / &lead_r;
                if s.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                k += Rat::one();
            }
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    roots.sort();
    roots.dedup();
    roots
}
