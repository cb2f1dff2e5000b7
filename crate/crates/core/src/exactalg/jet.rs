//! First-order jets: a value together with its gradient.

use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A value and its gradient with respect to a fixed list of coordinates.
///
/// An empty gradient stands for the zero gradient of any length, so
/// constants need not know the number of coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<C: Scalar> {
    pub value: C,
    pub grad: Vec<C>,
}

impl<C: Scalar> Jet<C> {
    pub fn new(value: C, grad: Vec<C>) -> Self {
        Jet { value, grad }
    }

    pub fn constant(value: C) -> Self {
        Jet {
            value,
            grad: Vec::new(),
        }
    }

    /// The `k`-th coordinate of `dim` coordinates, with value `value`.
    pub fn coordinate(value: C, k: usize, dim: usize) -> Self {
        let mut grad = vec![C::zero(); dim];
        grad[k] = C::one();
        Jet { value, grad }
    }

    /// Partial derivative along coordinate `k`.
    pub fn partial(&self, k: usize) -> C {
        self.grad.get(k).cloned().unwrap_or_else(C::zero)
    }

    fn zip_grad<F: Fn(&C, &C) -> C>(a: &[C], b: &[C], f: F) -> Vec<C> {
        let n = a.len().max(b.len());
        let z = C::zero();
        (0..n)
            .map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect()
    }
}

impl<C: Scalar> Add for Jet<C> {
    type Output = Jet<C>;
    fn add(self, rhs: Self) -> Self {
        Jet {
            value: self.value + rhs.value,
            grad: Self::zip_grad(&self.grad, &rhs.grad, |a, b| a.clone() + b.clone()),
        }
    }
}

impl<C: Scalar> Sub for Jet<C> {
    type Output = Jet<C>;
    fn sub(self, rhs: Self) -> Self {
        Jet {
            value: self.value - rhs.value,
            grad: Self::zip_grad(&self.grad, &rhs.grad, |a, b| a.clone() - b.clone()),
        }
    }
}

impl<C: Scalar> Mul for Jet<C> {
    type Output = Jet<C>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        let (u, v) = (&self.value, &rhs.value);
        let grad = Self::zip_grad(&self.grad, &rhs.grad, |a, b| {
            a.clone() * v.clone() + u.clone() * b.clone()
        });
        Jet {
            value: u.clone() * v.clone(),
            grad,
        }
    }
}

impl<C: Scalar> Neg for Jet<C> {
    type Output = Jet<C>;
    fn neg(self) -> Self {
        Jet {
            value: -self.value,
            grad: self.grad.into_iter().map(|g| -g).collect(),
        }
    }
}

impl<C: Scalar> Field for Jet<C> {
    fn zero() -> Self {
        Jet::constant(C::zero())
    }
    fn one() -> Self {
        Jet::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(|g| g.is_zero())
    }
    fn is_one(&self) -> bool {
        self.value.is_one() && self.grad.iter().all(|g| g.is_zero())
    }
    fn is_constant(&self) -> bool {
        self.grad.iter().all(|g| g.is_zero())
    }
    fn try_inv(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = C::one() / self.value.clone();
        let f = -(inv.clone() * inv.clone());
        Ok(Jet {
            value: inv,
            grad: self.grad.iter().map(|g| g.clone() * f.clone()).collect(),
        })
    }
    fn from_int(n: i64) -> Self {
        Jet::constant(C::from_i64(n).expect("integer embedding"))
    }
}
