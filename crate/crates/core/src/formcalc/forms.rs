//! One-forms, two-forms and log-canonical forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rf, Matrix, Var};
use crate::poisson::PoissonStructure;
use crate::{MatrixQ, MatrixRF, Rf, Q};

/// A matrix-valued one-form `Σ_v M_v dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    size: usize,
    components: BTreeMap<Var, MatrixRF>,
}

impl OneForm {
    /// The zero form on `size × size` matrices.
    pub fn zero(size: usize) -> Self {
        OneForm {
            size,
            components: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Sets the coefficient of `dv`.
    pub fn set(&mut self, v: Var, m: MatrixRF) -> Result<()> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::ShapeMismatch("one-form component size".into()));
        }
        if m.is_zero() {
            self.components.remove(&v);
        } else {
            self.components.insert(v, m);
        }
        Ok(())
    }

    /// Coefficient of `dv` (zero when absent).
    pub fn component(&self, v: Var) -> MatrixRF {
        self.components
            .get(&v)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size, self.size))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Var, &MatrixRF)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// Which Maurer–Cartan form to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `M⁻¹ dM`.
    Left,
    /// `dM M⁻¹`.
    Right,
}

/// The Maurer–Cartan form of an invertible matrix function.
pub fn maurer_cartan(m: &MatrixRF, side: Side) -> Result<OneForm> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(
            "Maurer-Cartan form of a non-square matrix".into(),
        ));
    }
    let inv = m.inverse()?;
    let mut vars: Vec<Var> = m.entries().iter().flat_map(|e| e.variables()).collect();
    vars.sort();
    vars.dedup();
    let mut form = OneForm::zero(m.rows());
    for v in vars {
        let dm = m.map(|e| e.differentiate(v));
        let c = match side {
            Side::Left => inv.mul(&dm)?,
            Side::Right => dm.mul(&inv)?,
        };
        form.set(v, c)?;
    }
    Ok(form)
}

/// A scalar two-form `Σ_{a<b} c_ab da ∧ db`.
///
/// Pairs are stored with the first variable smaller in [`Var`] order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TwoForm {
    coefficients: BTreeMap<(Var, Var), Rf>,
}

impl TwoForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Adds `c · da ∧ db`.
    pub fn add_term(&mut self, a: Var, b: Var, c: &Rf) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b {
            ((a, b), c.clone())
        } else {
            ((b, a), c.neg())
        };
        let next = match self.coefficients.get(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if next.is_zero() {
            self.coefficients.remove(&key);
        } else {
            self.coefficients.insert(key, next);
        }
    }

    /// Coefficient of `da ∧ db` (skew in the arguments).
    pub fn coefficient(&self, a: Var, b: Var) -> Rf {
        if a == b {
            return Rf::zero();
        }
        if a < b {
            self.coefficients
                .get(&(a, b))
                .cloned()
                .unwrap_or_else(Rf::zero)
        } else {
            self.coefficients
                .get(&(b, a))
                .map(|c| c.neg())
                .unwrap_or_else(Rf::zero)
        }
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coefficients {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> TwoForm {
        let mut out = TwoForm::zero();
        for (&(a, b), v) in &self.coefficients {
            out.add_term(a, b, &v.scale(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (Var, Var, &Rf)> {
        self.coefficients.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// Variables carrying a nonzero coefficient.
    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .coefficients
            .keys()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v.dedup();
        v
    }

    /// JSON form with variables in name order.
    pub fn to_json(&self) -> TwoFormJson {
        let vars = self.variables();
        let idx = |v: Var| vars.iter().position(|x| *x == v).expect("listed variable");
        let mut entries: Vec<(usize, usize, String)> = self
            .coefficients
            .iter()
            .map(|(&(a, b), c)| {
                let (i, j) = (idx(a), idx(b));
                if i < j {
                    (i, j, c.to_string())
                } else {
                    (j, i, c.neg().to_string())
                }
            })
            .collect();
        entries.sort();
        TwoFormJson {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            entries,
        }
    }

    pub fn from_json(j: &TwoFormJson) -> Result<TwoForm> {
        let vars: Vec<Var> = j.vars.iter().map(|s| Var::new(s)).collect();
        let mut out = TwoForm::zero();
        for (i, k, s) in &j.entries {
            let (a, b) = match (vars.get(*i), vars.get(*k)) {
                (Some(a), Some(b)) => (*a, *b),
                _ => return Err(Error::Parse(format!("entry ({i}, {k}) out of range"))),
            };
            out.add_term(a, b, &parse_rf(s)?);
        }
        Ok(out)
    }
}

/// JSON form of a [`TwoForm`]: sparse `(i, j, coefficient)` triples, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFormJson {
    pub vars: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

/// `Tr(A ∧ B)`: the coefficient of `da ∧ db` is `Tr(A_a B_b) − Tr(A_b B_a)`.
pub fn wedge_trace(a: &OneForm, b: &OneForm) -> Result<TwoForm> {
    if a.size != b.size {
        return Err(Error::ShapeMismatch("one-form sizes differ".into()));
    }
    let mut out = TwoForm::zero();
    for (&va, ma) in &a.components {
        for (&vb, mb) in &b.components {
            if va == vb {
                continue;
            }
            let t = ma.mul(mb)?.trace()?;
            out.add_term(va, vb, &t);
        }
    }
    Ok(out)
}

/// A constant-coefficient form `Σ_{i<j} ω_ij dlog v_i ∧ dlog v_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCanonicalForm {
    pub vars: Vec<Var>,
    pub omega: MatrixQ,
}

/// JSON form of a [`LogCanonicalForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogCanonicalJson {
    pub vars: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

impl LogCanonicalForm {
    /// Builds a form from a skew matrix.
    pub fn new(vars: Vec<Var>, omega: MatrixQ) -> Result<Self> {
        let n = vars.len();
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::ShapeMismatch("form matrix size".into()));
        }
        if omega.transpose() != omega.neg() {
            return Err(Error::InvalidArgument("form matrix is not skew".into()));
        }
        Ok(LogCanonicalForm { vars, omega })
    }

    pub fn scale(&self, c: &Q) -> LogCanonicalForm {
        LogCanonicalForm {
            vars: self.vars.clone(),
            omega: self.omega.map(|x| x.clone() * c.clone()),
        }
    }

    pub fn to_json(&self) -> LogCanonicalJson {
        let n = self.vars.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.omega.get(i, j);
                if *c != Q::from_integer(0.into()) {
                    entries.push((i, j, c.to_string()));
                }
            }
        }
        LogCanonicalJson {
            vars: self.vars.iter().map(|v| v.name().to_string()).collect(),
            entries,
        }
    }

    pub fn from_json(j: &LogCanonicalJson) -> Result<Self> {
        let vars: Vec<Var> = j.vars.iter().map(|s| Var::new(s)).collect();
        let n = vars.len();
        let mut omega: MatrixQ = Matrix::zeros(n.max(1), n.max(1));
        for (i, k, s) in &j.entries {
            if *i >= n || *k >= n {
                return Err(Error::Parse(format!("entry ({i}, {k}) out of range")));
            }
            let c = parse_rf::<Q>(s)?
                .as_constant()
                .ok_or_else(|| Error::Parse(format!("non-constant coefficient {s}")))?;
            omega.set(*k, *i, -c.clone());
            omega.set(*i, *k, c);
        }
        LogCanonicalForm::new(vars, omega)
    }
}

/// Extracts the constant matrix `c_ij = coefficient(v_i, v_j) · v_i · v_j`.
pub fn to_log_canonical(omega: &TwoForm, vars: &[Var]) -> Result<LogCanonicalForm> {
    let n = vars.len();
    for (a, b, _) in omega.terms() {
        if !vars.contains(&a) || !vars.contains(&b) {
            let missing = if vars.contains(&a) { b } else { a };
            return Err(Error::UnknownVariable(missing.name().to_string()));
        }
    }
    let mut m: MatrixQ = Matrix::zeros(n.max(1), n.max(1));
    for i in 0..n {
        for j in i + 1..n {
            let c = omega
                .coefficient(vars[i], vars[j])
                .mul(&Rf::var(vars[i]))
                .mul(&Rf::var(vars[j]));
            let k = c.as_constant().ok_or_else(|| Error::NotLogCanonical {
                first: vars[i].name().to_string(),
                second: vars[j].name().to_string(),
                residual: c.to_string(),
            })?;
            m.set(j, i, -k.clone());
            m.set(i, j, k);
        }
    }
    Ok(LogCanonicalForm {
        vars: vars.to_vec(),
        omega: m,
    })
}

/// The log-canonical bracket `{v_i, v_j} = (Ω^{−t})_ij v_i v_j`.
pub fn poisson_from_form(l: &LogCanonicalForm) -> Result<PoissonStructure> {
    let p = l
        .omega
        .inverse()
        .map_err(|_| Error::DegenerateForm)?
        .transpose();
    PoissonStructure::log_canonical(l.vars.clone(), &p)
}
