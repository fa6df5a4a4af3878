//! Exact rational scalars, dense univariate polynomials and rational
//! functions over Q, plus the small amount of exact linear algebra and real
//! root counting the rest of the crate needs.

mod linalg;
mod poly;
mod ratfunc;
mod roots;

pub use linalg::{kernel, rank, rref, solve};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{count_real_roots, rational_roots, squarefree_part, sturm_sequence};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Integer value of `r`, if it is one.
pub fn as_integer(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Integer value of `r` as an `i64`, if it is one and fits.
pub fn as_i64(r: &Rat) -> Option<i64> {
    as_integer(r).and_then(|n| n.to_i64())
}

/// Parses `"5/4"`, `"-1/2"`, `"3"`, `"0.25"` or `"-1.5e-3"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("{whole}{frac}0").parse::<BigInt>().map_err(|_| err())? / 10;
    let ten = BigInt::from(10);
    let scale = exponent - frac.len() as i32;
    let mut value = Rat::from_integer(all);
    if scale >= 0 {
        value *= Rat::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rat::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// `p/q` for non-integers, plain integer otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rising factorial `t (t+1) ... (t+k-1)`.
pub fn pochhammer(t: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut f = t.clone();
    for _ in 0..k {
        acc *= &f;
        f += Rat::one();
    }
    acc
}

/// Generalized binomial coefficient `t (t-1) ... (t-k+1) / k!`.
pub fn gen_binomial(t: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut f = t.clone();
    for i in 1..=k {
        acc *= &f;
        acc /= int(i as i64);
        f -= Rat::one();
    }
    acc
}

pub fn factorial(k: usize) -> Rat {
    pochhammer(&Rat::one(), k)
}

/// Wronskian of three polynomials, `det [[y, y', y''] per row]`.
///
/// With this ordering `W(1, x, x^2) = 2`. Reversing the columns to
/// `(y'', y', y)` only flips the sign.
pub fn wronskian3(y1: &Poly, y2: &Poly, y3: &Poly) -> Poly {
    let rows: Vec<[Poly; 3]> = [y1, y2, y3]
        .iter()
        .map(|y| {
            let d1 = y.derivative();
            let d2 = d1.derivative();
            [(*y).clone(), d1, d2]
        })
        .collect();
    det3(&rows)
}

pub(crate) fn det3(m: &[[Poly; 3]]) -> Poly {
    let minor = |a: &Poly, b: &Poly, c: &Poly, d: &Poly| &(a * d) - &(b * c);
    let t0 = &m[0][0] * &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
    let t1 = &m[0][1] * &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
    let t2 = &m[0][2] * &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
    &(&t0 - &t1) + &t2
}

pub(crate) fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
