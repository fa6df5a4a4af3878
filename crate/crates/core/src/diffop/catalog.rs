//! Small flags with known invariance behaviour, used as fixtures and by the
//! command line `verify flags --example N`.

use super::{DiffOp2, Flag};
use crate::error::{Error, Result};
use crate::ratpoly::{int, Poly, RatFunc};

pub struct FlagExample {
    pub description: &'static str,
    pub flag: Flag,
    pub operators: Vec<(&'static str, DiffOp2)>,
    /// Whether the flag is exceptional (primitive and preserved by an
    /// operator that does not preserve the standard flag).
    pub exceptional: bool,
}

fn x_pow(k: usize) -> Poly {
    Poly::monomial(int(1), k)
}

fn over(num: Poly, den: Poly) -> RatFunc {
    RatFunc::ratio(num, den)
}

/// Probabilists' Hermite polynomial `He_n`, the eigenpolynomials of `y'' - x y'`.
pub fn hermite(n: usize) -> Poly {
    let (mut a, mut b) = (Poly::zero(), Poly::one());
    for k in 0..n {
        let next = &(&Poly::x() * &b) - &a.scale(&int(k as i64));
        a = b;
        b = next;
    }
    b
}

/// `y_{2k-1} = x^{2k-1} - (2k-1) x`, `y_{2k} = x^{2k} - k x^2`.
pub fn codim2_basis(n: usize) -> Poly {
    let nn = n as i64;
    if n % 2 == 1 {
        &x_pow(n) - &Poly::monomial(int(nn), 1)
    } else {
        &x_pow(n) - &Poly::monomial(int(nn / 2), 2)
    }
}

pub fn example(i: u8) -> Result<FlagExample> {
    let x = Poly::x;
    let c = |v: i64| RatFunc::constant(int(v));
    Ok(match i {
        1 => FlagExample {
            description: "1, x^2, x^3, ... (semi-stable codimension 1)",
            flag: Flag::new("1, x^2, x^3, ...", |k| if k == 1 { Poly::one() } else { x_pow(k) }),
            operators: vec![("y'' - 2y'/x", DiffOp2::new(c(1), over(Poly::constant(int(-2)), x()), c(0)))],
            exceptional: true,
        },
        2 => FlagExample {
            description: "x + 1, x^2, x^3, ... (stable codimension 1)",
            flag: Flag::new("x+1, x^2, x^3, ...", |k| if k == 1 { Poly::from_ints(&[1, 1]) } else { x_pow(k) }),
            operators: vec![(
                "y'' - 2(1 + 1/x)y' + (2/x)y",
                DiffOp2::new(c(1), over(Poly::from_ints(&[-2, -2]), x()), over(Poly::constant(int(2)), x())),
            )],
            exceptional: true,
        },
        3 => FlagExample {
            description: "He_1, He_2, ... (not exceptional: y'' - xy' also keeps the standard flag)",
            flag: Flag::new("He_1, He_2, ...", hermite),
            operators: vec![("y'' - xy'", DiffOp2::from_polys(Poly::one(), Poly::from_ints(&[0, -1]), Poly::zero()))],
            exceptional: false,
        },
        4 => FlagExample {
            description: "x, x^2, x^3, ... (imprimitive, gauge of the standard flag by x)",
            flag: Flag::new("x, x^2, x^3, ...", x_pow),
            operators: vec![(
                "y'' - 2y'/x + 2y/x^2",
                DiffOp2::new(c(1), over(Poly::constant(int(-2)), x()), over(Poly::constant(int(2)), x_pow(2))),
            )],
            exceptional: false,
        },
        5 => {
            let xx1 = Poly::from_ints(&[-1, 0, 1]);
            FlagExample {
                description: "1, y_3, y_4, ... (semi-stable codimension 2)",
                flag: Flag::new("1, y_3, y_4, ...", |k| if k == 1 { Poly::one() } else { codim2_basis(k + 1) }),
                operators: vec![
                    ("T1 = y'' + x(1 - 4/(x^2-1))y'", {
                        // x (x^2 - 5) / (x^2 - 1)
                        DiffOp2::new(c(1), over(Poly::from_ints(&[0, -5, 0, 1]), xx1.clone()), c(0))
                    }),
                    ("T2 = xy'' - 2(1 + 2/(x^2-1))y'", {
                        // -2 (x^2 + 1) / (x^2 - 1)
                        DiffOp2::new(RatFunc::from_poly(x()), over(Poly::from_ints(&[-2, 0, -2]), xx1.clone()), c(0))
                    }),
                    ("T3 = (x^2-1)y'' - 2xy'", DiffOp2::from_polys(xx1, Poly::from_ints(&[0, -2]), Poly::zero())),
                ],
                exceptional: true,
            }
        }
        _ => return Err(Error::Parameter(format!("no flag example {i}; choose 1..=5"))),
    })
}
