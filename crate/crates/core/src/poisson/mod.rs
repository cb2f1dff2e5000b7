//! Poisson brackets with rational-function structure matrices.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rf, Matrix, Var};
use crate::{MatrixQ, Rf, Q};

/// A bivector `Σ_{i<j} π_ij ∂_i ∧ ∂_j` on an ordered coordinate list.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    coords: Vec<Var>,
    pi: BTreeMap<(usize, usize), Rf>,
}

/// JSON form of a [`PoissonStructure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoissonJson {
    pub coords: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

impl PoissonStructure {
    /// The zero structure on `coords`.
    pub fn new(coords: Vec<Var>) -> Self {
        PoissonStructure {
            coords,
            pi: BTreeMap::new(),
        }
    }

    /// Sets `{coords[i], coords[j]} = value`, storing the skew partner.
    pub fn set(&mut self, i: usize, j: usize, value: Rf) {
        if i == j {
            return;
        }
        let (key, v) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.neg())
        };
        if v.is_zero() {
            self.pi.remove(&key);
        } else {
            self.pi.insert(key, v);
        }
    }

    /// Log-canonical structure `{v_i, v_j} = c_ij v_i v_j`.
    pub fn log_canonical(coords: Vec<Var>, c: &MatrixQ) -> Result<Self> {
        let n = coords.len();
        if c.rows() != n || c.cols() != n {
            return Err(Error::ShapeMismatch("coefficient matrix size".into()));
        }
        let mut p = PoissonStructure::new(coords);
        for i in 0..n {
            for j in i + 1..n {
                let cij = c.get(i, j).clone();
                if cij != Q::from_integer(0.into()) {
                    let v = Rf::constant(cij)
                        .mul(&Rf::var(p.coords[i]))
                        .mul(&Rf::var(p.coords[j]));
                    p.set(i, j, v);
                }
            }
        }
        Ok(p)
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of a coordinate.
    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.coords.iter().position(|c| *c == v)
    }

    /// `{coords[i], coords[j]}`.
    pub fn entry(&self, i: usize, j: usize) -> Rf {
        if i == j {
            return Rf::zero();
        }
        if i < j {
            self.pi.get(&(i, j)).cloned().unwrap_or_else(Rf::zero)
        } else {
            self.pi
                .get(&(j, i))
                .map(|v| v.neg())
                .unwrap_or_else(Rf::zero)
        }
    }

    /// Nonzero stored entries `(i, j, π_ij)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rf)> {
        self.pi.iter().map(|(&(i, j), v)| (i, j, v))
    }

    fn check_vars(&self, f: &Rf) -> Result<()> {
        for v in f.variables() {
            if !self.coords.contains(&v) {
                return Err(Error::UnknownVariable(v.name().to_string()));
            }
        }
        Ok(())
    }

    /// Partial derivatives of `f` along every coordinate.
    pub fn gradient(&self, f: &Rf) -> Result<Vec<Rf>> {
        self.check_vars(f)?;
        let present = f.variables();
        Ok(self
            .coords
            .iter()
            .map(|v| {
                if present.contains(v) {
                    f.differentiate(*v)
                } else {
                    Rf::zero()
                }
            })
            .collect())
    }

    /// Bracket of two gradients.
    pub fn bracket_gradients(&self, df: &[Rf], dg: &[Rf]) -> Rf {
        let mut acc = Rf::zero();
        for (&(i, j), p) in &self.pi {
            let t = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
            if !t.is_zero() {
                acc = acc.add(&p.mul(&t));
            }
        }
        acc
    }

    /// `{f, g} = Σ_{i<j} π_ij (∂_i f ∂_j g − ∂_j f ∂_i g)`.
    pub fn bracket(&self, f: &Rf, g: &Rf) -> Result<Rf> {
        let df = self.gradient(f)?;
        let dg = self.gradient(g)?;
        Ok(self.bracket_gradients(&df, &dg))
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Rf, g: &Rf, h: &Rf) -> Result<Rf> {
        let a = self.bracket(f, &self.bracket(g, h)?)?;
        let b = self.bracket(g, &self.bracket(h, f)?)?;
        let c = self.bracket(h, &self.bracket(f, g)?)?;
        Ok(a.add(&b).add(&c))
    }

    /// True when `f` Poisson-commutes with every coordinate.
    pub fn is_casimir(&self, f: &Rf) -> Result<bool> {
        let df = self.gradient(f)?;
        for i in 0..self.dim() {
            let mut acc = Rf::zero();
            for j in 0..self.dim() {
                if df[j].is_zero() {
                    continue;
                }
                let p = self.entry(j, i);
                if !p.is_zero() {
                    acc = acc.add(&p.mul(&df[j]));
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Structure matrix evaluated at a point.
    pub fn matrix_at(&self, point: &HashMap<Var, Q>) -> Result<MatrixQ> {
        let n = self.dim();
        let mut m: MatrixQ = Matrix::zeros(n, n);
        for (&(i, j), p) in &self.pi {
            let v = p.eval_at(point)?;
            m.set(j, i, -v.clone());
            m.set(i, j, v);
        }
        Ok(m)
    }

    /// Rank of the structure matrix at a point.
    pub fn rank_at(&self, point: &HashMap<Var, Q>) -> Result<usize> {
        self.matrix_at(point)?.rank()
    }

    pub fn to_json(&self) -> PoissonJson {
        PoissonJson {
            coords: self.coords.iter().map(|v| v.name().to_string()).collect(),
            entries: self
                .pi
                .iter()
                .map(|(&(i, j), v)| (i, j, v.to_string()))
                .collect(),
        }
    }

    pub fn from_json(j: &PoissonJson) -> Result<Self> {
        let mut p = PoissonStructure::new(j.coords.iter().map(|s| Var::new(s)).collect());
        for (i, k, s) in &j.entries {
            if *i >= p.dim() || *k >= p.dim() {
                return Err(Error::Parse(format!("entry ({i}, {k}) out of range")));
            }
            p.set(*i, *k, parse_rf(s)?);
        }
        Ok(p)
    }
}

/// Coordinate names of the Flaschka–Newell structure: `s1..s_{2K+2}, lambda`.
pub fn fn_coords(k: usize) -> Vec<Var> {
    let mut c: Vec<Var> = (1..=2 * k + 2)
        .map(|j| Var::new(&format!("s{j}")))
        .collect();
    c.push(Var::new("lambda"));
    c
}

/// The Flaschka–Newell bracket on `(s_1, …, s_{2K+2}, λ)`:
/// `{s_j, s_l} = δ_{j,l−1} − δ_{j,1}δ_{l,2K+2}/λ² + (−1)^{j−l+1} s_j s_l`
/// for `j < l`, and `{s_j, λ} = (−1)^j s_j λ`.
pub fn fn_structure(k: usize) -> Result<PoissonStructure> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    let coords = fn_coords(k);
    let n = 2 * k + 2;
    let lam = Rf::var(coords[n]);
    let mut p = PoissonStructure::new(coords.clone());
    for j in 1..=n {
        let sj = Rf::var(coords[j - 1]);
        for l in j + 1..=n {
            let sl = Rf::var(coords[l - 1]);
            let sign = if (l - j + 1) % 2 == 0 { 1 } else { -1 };
            let mut v = sj.mul(&sl).scale(&Q::from_integer(sign.into()));
            if l == j + 1 {
                v = v.add(&Rf::one());
            }
            if j == 1 && l == n {
                v = v.sub(&lam.pow(-2)?);
            }
            p.set(j - 1, l - 1, v);
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        p.set(j - 1, n, sj.mul(&lam).scale(&Q::from_integer(sign.into())));
    }
    Ok(p)
}
