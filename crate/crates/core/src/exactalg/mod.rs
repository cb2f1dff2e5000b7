//! Exact sparse Laurent polynomial and rational-function arithmetic, and
//! dense matrices over any field.

mod jet;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod rational;
mod scalar;
mod var;

pub use jet::Jet;
pub use matrix::{Matrix, ADJUGATE_MAX};
pub use monomial::Monomial;
pub use parse::parse_rf;
pub use poly::{scalar_pow, Polynomial};
pub use rational::RationalFunction;
pub use scalar::{q, qi, Field, Scalar};
pub use var::{natural_cmp, vars, Var};

use std::collections::HashMap;

use crate::error::Result;

/// Arithmetic operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Applies a binary (or unary, for `Neg`) field operation.
pub fn rf_arith<C: Scalar>(
    op: RfOp,
    f: &RationalFunction<C>,
    g: &RationalFunction<C>,
) -> Result<RationalFunction<C>> {
    Ok(match op {
        RfOp::Add => f.add(g),
        RfOp::Sub => f.sub(g),
        RfOp::Mul => f.mul(g),
        RfOp::Div => f.div(g)?,
        RfOp::Neg => f.neg(),
    })
}

/// Exact equality of rational functions.
pub fn rf_equal<C: Scalar>(f: &RationalFunction<C>, g: &RationalFunction<C>) -> bool {
    f.rf_equal(g)
}

/// Value and gradient of `f` at `point` with respect to `coords`.
pub fn jet_at<C: Scalar>(
    f: &RationalFunction<C>,
    point: &HashMap<Var, C>,
    coords: &[Var],
) -> Result<Jet<C>> {
    let value = f.eval_at(point)?;
    let present = f.variables();
    let mut grad = Vec::with_capacity(coords.len());
    for v in coords {
        if present.contains(v) {
            grad.push(f.differentiate(*v).eval_at(point)?);
        } else {
            grad.push(C::zero());
        }
    }
    Ok(Jet::new(value, grad))
}
