//! Uniform access to the four polynomial families.

use std::fmt;

use crate::classical::{
    classical_eigenvalue, classical_jacobi_op, classical_norm, classical_weight, jacobi, JacobiParams,
};
use crate::diffop::{DiffOp2, Flag};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quasirational::QuasiRational;
use crate::ratpoly::{int, Poly, Rat};
use crate::x1::*;
use crate::xm::{admissible, xm_eigenvalue, xm_flag, xm_norm, xm_operator, xm_poly, xm_weight, XmParams};

#[derive(Clone, Debug)]
pub enum Family {
    ClassicalJacobi(JacobiParams),
    X1Jacobi(X1JacobiParams),
    X1Laguerre(X1LaguerreParams),
    XmJacobi(XmParams),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ClassicalJacobi(_) => "classical-jacobi",
            Family::X1Jacobi(_) => "x1-jacobi",
            Family::X1Laguerre(_) => "x1-laguerre",
            Family::XmJacobi(_) => "xm-jacobi",
        }
    }

    /// Named parameters, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, Rat)> {
        match self {
            Family::ClassicalJacobi(p) => vec![("alpha", p.alpha.clone()), ("beta", p.beta.clone())],
            Family::X1Jacobi(p) => vec![("alpha", p.alpha().clone()), ("beta", p.beta().clone())],
            Family::X1Laguerre(p) => vec![("k", p.k().clone())],
            Family::XmJacobi(p) => {
                vec![("alpha", p.alpha.clone()), ("beta", p.beta.clone()), ("m", int(p.m as i64))]
            }
        }
    }

    /// Smallest degree in the family.
    pub fn first_degree(&self) -> usize {
        match self {
            Family::ClassicalJacobi(_) => 0,
            Family::X1Jacobi(_) | Family::X1Laguerre(_) => 1,
            Family::XmJacobi(p) => p.m,
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            Family::X1Laguerre(_) => Interval::laguerre(),
            _ => Interval::jacobi(),
        }
    }

    pub fn operator(&self) -> Result<DiffOp2> {
        match self {
            Family::ClassicalJacobi(p) => Ok(classical_jacobi_op(p)),
            Family::X1Jacobi(p) => Ok(x1_jacobi_op(p)),
            Family::X1Laguerre(p) => Ok(x1_laguerre_op(p)),
            Family::XmJacobi(p) => xm_operator(p),
        }
    }

    pub fn eigenvalue(&self, n: usize) -> Rat {
        match self {
            Family::ClassicalJacobi(p) => classical_eigenvalue(n, p),
            Family::X1Jacobi(p) => x1_jacobi_eigenvalue(p, n),
            Family::X1Laguerre(_) => x1_laguerre_eigenvalue(n),
            Family::XmJacobi(p) => xm_eigenvalue(p, n),
        }
    }

    pub fn poly(&self, n: usize) -> Result<Poly> {
        if n < self.first_degree() {
            return Err(Error::Parameter(format!("{self} starts at n = {}, got {n}", self.first_degree())));
        }
        match self {
            Family::ClassicalJacobi(p) => Ok(jacobi(n, p)),
            Family::X1Jacobi(p) => x1_jacobi_poly(p, n),
            Family::X1Laguerre(p) => x1_laguerre_poly(p, n),
            Family::XmJacobi(p) => xm_poly(p, n),
        }
    }

    pub fn weight(&self) -> QuasiRational {
        match self {
            Family::ClassicalJacobi(p) => classical_weight(p),
            Family::X1Jacobi(p) => x1_jacobi_weight(p),
            Family::X1Laguerre(p) => x1_laguerre_weight(p),
            Family::XmJacobi(p) => xm_weight(p),
        }
    }

    /// The flag whose `k`-th element is the `k`-th family member.
    pub fn flag(&self) -> Flag {
        match self {
            Family::ClassicalJacobi(_) => Flag::standard(),
            Family::X1Jacobi(p) => x1_jacobi_flag(p),
            Family::X1Laguerre(p) => x1_laguerre_flag(p),
            Family::XmJacobi(p) => xm_flag(p),
        }
    }

    /// Closed-form `int y_n^2 W dx`, where one is known.
    pub fn norm(&self, n: usize) -> Option<Result<f64>> {
        match self {
            Family::ClassicalJacobi(p) => Some(classical_norm(n, p)),
            Family::XmJacobi(p) => Some(xm_norm(p, n - p.m)),
            _ => None,
        }
    }

    /// Whether the weight defines a positive measure with finite moments.
    pub fn has_positive_weight(&self) -> Result<bool> {
        match self {
            Family::ClassicalJacobi(p) => Ok(p.alpha > int(-1) && p.beta > int(-1)),
            Family::XmJacobi(p) => Ok(admissible(p)?.is_admissible()),
            _ => Ok(true),
        }
    }
}
