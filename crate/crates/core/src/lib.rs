//! Exact computer algebra for Stokes manifolds of rank-two polynomial
//! connections and their cluster-algebra structure.
//!
//! The algebra kernel in [`exactalg`] is generic over the coefficient type;
//! the aliases below fix it to arbitrary-precision rationals, which is what
//! every other module uses.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cluster;
pub mod error;
pub mod exactalg;
pub mod formcalc;
pub mod poisson;
pub mod polygon;
pub mod slncore;
pub mod stokes2;
pub mod ugaglia;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact rational scalar.
pub type Q = BigRational;
/// Laurent polynomial over `Q`.
pub type Poly = exactalg::Polynomial<Q>;
/// Rational function over `Q`.
pub type Rf = exactalg::RationalFunction<Q>;
/// Dense matrix of rational functions.
pub type MatrixRF = exactalg::Matrix<Rf>;
/// Dense matrix of exact rationals.
pub type MatrixQ = exactalg::Matrix<Q>;
/// First-order jet over `Q`.
pub type JetQ = exactalg::Jet<Q>;
/// Dense matrix of jets.
pub type MatrixJet = exactalg::Matrix<JetQ>;
