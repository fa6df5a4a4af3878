//! Exact construction and verification of classical Jacobi, X1-Jacobi,
//! X1-Laguerre and Xm-Jacobi orthogonal polynomials.
//!
//! Everything algebraic is done over the rationals: polynomials, rational
//! functions, second-order operators, their rational (Darboux)
//! factorizations, flag invariance and admissibility. Only integrals against
//! the weights are numerical, and those use Gauss rules matched to the
//! classical part of each weight.

pub mod classical;
pub mod diffop;
pub mod error;
pub mod factorization;
pub mod family;
pub mod gamma;
pub mod interval;
pub mod quadrature;
pub mod quasirational;
pub mod ratpoly;
pub mod suites;
pub mod x1;
pub mod xm;

pub use classical::JacobiParams;
pub use diffop::{DiffOp2, FirstOrderOp, Flag, FlagCertificate, PslpData};
pub use error::{Error, Result};
pub use factorization::{FactorizationData, FactorizationKind};
pub use family::Family;
pub use interval::{Bound, Interval};
pub use quasirational::{Orientation, PowerFactor, QuasiRational};
pub use ratpoly::{Poly, Rat, RatFunc};
pub use x1::{X1JacobiParams, X1LaguerreParams};
pub use xm::{Admissibility, Verdict, XmParams};
