//! SL_n Cartan data and the Fock–Goncharov triangle matrices `A₁, A₂, A₃`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{qi, Matrix, Var};
use crate::{MatrixQ, MatrixRF, Rf};

/// A triple of positive integers `(a, b, c)` with `a + b + c = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TripleIndex {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl TripleIndex {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        TripleIndex { a, b, c }
    }

    /// `(b, c, a)`.
    pub fn bca(self) -> Self {
        TripleIndex::new(self.b, self.c, self.a)
    }

    /// `(c, a, b)`.
    pub fn cab(self) -> Self {
        TripleIndex::new(self.c, self.a, self.b)
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.a, self.b, self.c)
    }
}

/// All triples for `n`, ordered lexicographically.
pub fn triples(n: usize) -> Vec<TripleIndex> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n {
            if a + b < n {
                out.push(TripleIndex::new(a, b, n - a - b));
            }
        }
    }
    out
}

/// Variables `x{abc}` for the triples of `n`.
pub fn triple_vars(n: usize, prefix: &str) -> BTreeMap<TripleIndex, Var> {
    triples(n)
        .into_iter()
        .map(|t| (t, Var::new(&format!("{prefix}{t}"))))
        .collect()
}

/// Diagonal integer data of `SL_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData {
    pub n: usize,
    /// Simple roots `α_i = E_ii − E_{i+1,i+1}`, as diagonals.
    pub alpha: Vec<Vec<i64>>,
    /// Dual elements `h_i = (n−i)·1_i ⊕ (−i)·1_{n−i}`, as diagonals.
    pub h: Vec<Vec<i64>>,
    /// Antidiagonal signed permutation `P_{a,n+1−a} = (−1)^a`.
    pub p: MatrixQ,
    /// `σ = diag(1, −1, 1, …)`.
    pub sigma: Vec<i64>,
}

impl CartanData {
    /// `α_i` for `i = 1..n−1`.
    pub fn alpha(&self, i: usize) -> &[i64] {
        &self.alpha[i - 1]
    }

    /// `h_i` for `i = 1..n−1`.
    pub fn h(&self, i: usize) -> &[i64] {
        &self.h[i - 1]
    }

    /// `Tr(α_i h_k)`.
    pub fn pairing(&self, i: usize, k: usize) -> i64 {
        self.alpha(i)
            .iter()
            .zip(self.h(k))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `𝔾_{jk} = Tr(h_j h_k)`.
    pub fn gram(&self, j: usize, k: usize) -> i64 {
        self.h(j).iter().zip(self.h(k)).map(|(a, b)| a * b).sum()
    }
}

/// The Cartan data of `SL_n`, with the duality `Tr(α_i h_k) = n δ_ik`
/// validated.
pub fn cartan_data(n: usize) -> Result<CartanData> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("SL_{n} needs n >= 2")));
    }
    let alpha = (1..n)
        .map(|i| {
            let mut d = vec![0; n];
            d[i - 1] = 1;
            d[i] = -1;
            d
        })
        .collect();
    let h = (1..n)
        .map(|i| {
            (0..n)
                .map(|r| if r < i { (n - i) as i64 } else { -(i as i64) })
                .collect()
        })
        .collect();
    let p = Matrix::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            qi(if (r + 1) % 2 == 0 { 1 } else { -1 })
        } else {
            qi(0)
        }
    });
    let sigma = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    let cd = CartanData {
        n,
        alpha,
        h,
        p,
        sigma,
    };
    for i in 1..n {
        for k in 1..n {
            let expect = if i == k { n as i64 } else { 0 };
            if cd.pairing(i, k) != expect {
                return Err(Error::InvalidArgument(format!(
                    "Tr(alpha_{i} h_{k}) = {}",
                    cd.pairing(i, k)
                )));
            }
        }
    }
    Ok(cd)
}

/// The plain antidiagonal permutation matrix.
pub fn antidiagonal<T: crate::exactalg::Field>(n: usize) -> Matrix<T> {
    Matrix::from_fn(
        n,
        n,
        |r, c| if r + c == n - 1 { T::one() } else { T::zero() },
    )
}

/// `diag(x^{e_1}, …, x^{e_n})`.
pub fn diag_power(x: &Rf, e: &[i64]) -> Result<MatrixRF> {
    Ok(Matrix::diag(
        e.iter()
            .map(|&k| x.pow(k as i32))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Which of the three triangle matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    A1,
    A2,
    A3,
}

impl Which {
    pub fn from_index(i: usize) -> Result<Which> {
        match i {
            1 => Ok(Which::A1),
            2 => Ok(Which::A2),
            3 => Ok(Which::A3),
            _ => Err(Error::InvalidArgument(format!("no A_{i}"))),
        }
    }
}

/// Reading of the triangle-matrix formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AConvention {
    /// Index the factor of `N_k` at step `i` by `x_{k, i−k+1, n−i−1}`
    /// instead of `x_{n−i−1, i−k+1, k}`.
    pub reversed_triple: bool,
    /// Close with the plain antidiagonal permutation instead of the signed
    /// one.
    pub plain_p: bool,
}

impl AConvention {
    /// The reading under which `A₁A₂A₃ = 1`.
    pub const WORKING: AConvention = AConvention {
        reversed_triple: true,
        plain_p: true,
    };
    /// The formula exactly as typeset.
    pub const PRINTED: AConvention = AConvention {
        reversed_triple: false,
        plain_p: false,
    };
}

/// `A_which(x)` in the working convention.
pub fn a_matrix(n: usize, which: Which, x: &BTreeMap<TripleIndex, Rf>) -> Result<MatrixRF> {
    a_matrix_with(n, which, x, AConvention::WORKING)
}

/// `A₁(x) = σ (∏_{k=n−1}^{1} N_k) P` with
/// `N_k = (∏_{k≤i≤n−2} x_t^{−h_{i+1}} F_i) F_{n−1}` and `F_i = 1 + E_{i+1,i}`;
/// `A₂`, `A₃` substitute `x_{bca}`, `x_{cab}`.
pub fn a_matrix_with(
    n: usize,
    which: Which,
    x: &BTreeMap<TripleIndex, Rf>,
    conv: AConvention,
) -> Result<MatrixRF> {
    let cd = cartan_data(n)?;
    let lookup = |t: TripleIndex| -> Result<Rf> {
        let key = match which {
            Which::A1 => t,
            Which::A2 => t.bca(),
            Which::A3 => t.cab(),
        };
        x.get(&key)
            .cloned()
            .ok_or_else(|| Error::UnknownVariable(format!("x{key}")))
    };
    let f = |i: usize| -> MatrixRF {
        let mut m = Matrix::identity(n);
        m.set(i, i - 1, Rf::one());
        m
    };
    let mut prod: MatrixRF = Matrix::identity(n);
    for k in (1..n).rev() {
        let mut nk: MatrixRF = Matrix::identity(n);
        for i in k..n - 1 {
            let t = if conv.reversed_triple {
                TripleIndex::new(k, i - k + 1, n - i - 1)
            } else {
                TripleIndex::new(n - i - 1, i - k + 1, k)
            };
            let e: Vec<i64> = cd.h(i + 1).iter().map(|v| -v).collect();
            nk = nk.mul(&diag_power(&lookup(t)?, &e)?)?.mul(&f(i))?;
        }
        nk = nk.mul(&f(n - 1))?;
        prod = prod.mul(&nk)?;
    }
    let sigma = Matrix::diag(cd.sigma.iter().map(|&s| Rf::int(s)).collect());
    let p: MatrixRF = if conv.plain_p {
        antidiagonal(n)
    } else {
        cd.p.map(|e| Rf::constant(e.clone()))
    };
    sigma.mul(&prod)?.mul(&p)
}

/// `M* = P M P⁻¹` with the antidiagonal permutation `P`.
pub fn star_matrix(m: &MatrixRF, n: usize) -> Result<MatrixRF> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "star of a {}x{} matrix with n = {n}",
            m.rows(),
            m.cols()
        )));
    }
    let p: MatrixRF = antidiagonal(n);
    p.mul(m)?.mul(&p.inverse()?)
}

/// `d*` for a diagonal given as a vector: the reversal.
pub fn star_diag(d: &[i64]) -> Vec<i64> {
    d.iter().rev().cloned().collect()
}
