//! The SL₂ jump generators and Pauli-type matrices.

use crate::error::Result;
use crate::exactalg::{Field, Matrix};

fn m2<T: Field>(a: T, b: T, c: T, d: T) -> Matrix<T> {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2 shape")
}

/// `D(x) = diag(x⁻¹, x)`.
pub fn d_matrix<T: Field>(x: &T) -> Result<Matrix<T>> {
    Ok(m2(x.try_inv()?, T::zero(), T::zero(), x.clone()))
}

/// `V(y) = [[0, −y], [y⁻¹, 0]]`; note `V(y)⁻¹ = V(−y)`.
pub fn v_matrix<T: Field>(y: &T) -> Result<Matrix<T>> {
    Ok(m2(T::zero(), -y.clone(), y.try_inv()?, T::zero()))
}

/// `A = [[0, 1], [−1, −1]]`, of order three.
pub fn a_matrix<T: Field>() -> Matrix<T> {
    m2(T::zero(), T::one(), -T::one(), -T::one())
}

/// `σ₃ = diag(1, −1)`.
pub fn sigma3<T: Field>() -> Matrix<T> {
    m2(T::one(), T::zero(), T::zero(), -T::one())
}

/// `σ₊ = E₁₂`.
pub fn sigma_plus<T: Field>() -> Matrix<T> {
    m2(T::zero(), T::one(), T::zero(), T::zero())
}

/// `σ₋ = E₂₁`.
pub fn sigma_minus<T: Field>() -> Matrix<T> {
    m2(T::zero(), T::zero(), T::one(), T::zero())
}

/// The upper unitriangular matrix `[[1, s], [0, 1]]`.
pub fn upper<T: Field>(s: &T) -> Matrix<T> {
    m2(T::one(), s.clone(), T::zero(), T::one())
}

/// The lower unitriangular matrix `[[1, 0], [s, 1]]`.
pub fn lower<T: Field>(s: &T) -> Matrix<T> {
    m2(T::one(), T::zero(), s.clone(), T::one())
}

/// `diag(λ, λ⁻¹)`.
pub fn lambda_matrix<T: Field>(l: &T) -> Result<Matrix<T>> {
    Ok(m2(l.clone(), T::zero(), T::zero(), l.try_inv()?))
}
