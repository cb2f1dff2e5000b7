//! The Stokes graph of the Frobenius-type connection `Ψ' = (U + V/z)Ψ`, its
//! log-canonical two-form and the comparison with the Ugaglia bracket.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::Report;
use crate::error::{Error, Result};
use crate::exactalg::{jet_at, q, qi, Field, Matrix, Monomial, Var};
use crate::formcalc::{
    sequence_two_form, sequence_two_form_at, to_log_canonical, LogCanonicalForm,
};
use crate::poisson::PoissonStructure;
use crate::slncore::{
    a_matrix, antidiagonal, cartan_data, diag_power, star_diag, triples, CartanData, TripleIndex,
    Which,
};
use crate::{MatrixQ, MatrixRF, Rf, Q};

/// Coordinates of the Ugaglia graph. The jumps are written in square roots
/// `X_abc`, `Z_j` of `x_abc = X_abc²`, `z_j = Z_j²` so that every half
/// exponent is a Laurent monomial; `c_j` are the toric variables. The log
/// coordinates are `ξ_abc = log x_abc`, `ζ_j = log z_j`, `γ_j = log c_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct UgagliaCoords {
    pub n: usize,
    pub triples: Vec<TripleIndex>,
    pub x: Vec<Var>,
    pub z: Vec<Var>,
    pub c: Vec<Var>,
}

impl UgagliaCoords {
    pub fn new(n: usize) -> Self {
        let ts = triples(n);
        UgagliaCoords {
            n,
            x: ts.iter().map(|t| Var::new(&format!("X{t}"))).collect(),
            z: (1..n).map(|j| Var::new(&format!("Z{j}"))).collect(),
            c: (1..=n / 2).map(|j| Var::new(&format!("c{j}"))).collect(),
            triples: ts,
        }
    }

    /// `X…, Z…, c…` in order.
    pub fn vars(&self) -> Vec<Var> {
        self.x
            .iter()
            .chain(&self.z)
            .chain(&self.c)
            .cloned()
            .collect()
    }

    /// Names of the log coordinates `ξ…, ζ…, γ…` in the same order.
    pub fn log_vars(&self) -> Vec<Var> {
        let xi = self.triples.iter().map(|t| Var::new(&format!("xi{t}")));
        let zeta = (1..self.n).map(|j| Var::new(&format!("zeta{j}")));
        let gamma = (1..=self.n / 2).map(|j| Var::new(&format!("gamma{j}")));
        xi.chain(zeta).chain(gamma).collect()
    }

    /// `d log v = scale · d(log coordinate)` for each variable.
    pub fn log_scales(&self) -> Vec<Q> {
        let half = q(1, 2);
        let k = self.x.len() + self.z.len();
        (0..k + self.c.len())
            .map(|i| if i < k { half.clone() } else { qi(1) })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.x.len() + self.z.len() + self.c.len()
    }

    fn x_map(&self) -> BTreeMap<TripleIndex, Rf> {
        self.triples
            .iter()
            .zip(&self.x)
            .map(|(t, v)| (*t, Rf::var_pow(*v, 2)))
            .collect()
    }
}

/// Jumps of the graph with vertices `q₀, q₁` (Stokes rays), `f₀, f₁`
/// (triangle matrices), `s` and `β` (local monodromy at `z = 0`).
#[derive(Clone, Debug)]
pub struct UgagliaGraph {
    pub coords: UgagliaCoords,
    /// Sign with `Q A₁ D A₃^{−t} Qᵗ` having diagonal `ε`.
    pub eps: i64,
    pub a1: MatrixRF,
    pub a2: MatrixRF,
    pub a3: MatrixRF,
    pub d: MatrixRF,
    pub q: MatrixRF,
    pub s: MatrixRF,
    pub m0: MatrixRF,
    /// Jump on the ray at `β`: `diag(M₀)⁻¹`.
    pub lambda: MatrixRF,
    pub c0: MatrixRF,
}

fn even_sqrt(f: &Rf) -> Option<Rf> {
    let (m, c) = f.as_polynomial()?.as_term()?;
    if c != qi(1) || m.pairs().iter().any(|&(_, e)| e % 2 != 0) {
        return None;
    }
    Some(Rf::monomial(
        qi(1),
        Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (v, e / 2))),
    ))
}

/// Builds every jump of the graph for `n ≥ 2`.
pub fn build_ugaglia(n: usize) -> Result<UgagliaGraph> {
    let coords = UgagliaCoords::new(n);
    let cd = cartan_data(n)?;
    let x = coords.x_map();
    let a1 = a_matrix(n, Which::A1, &x)?;
    let a2 = a_matrix(n, Which::A2, &x)?;
    let a3 = a_matrix(n, Which::A3, &x)?;
    let mut d: MatrixRF = Matrix::identity(n);
    for (j, zv) in coords.z.iter().enumerate() {
        d = d.mul(&diag_power(&Rf::var_pow(*zv, 2), cd.alpha(j + 1))?)?;
    }
    let p: MatrixRF = antidiagonal(n);
    let core = a1.mul(&d)?.mul(&a3.inv_transpose()?)?;
    let g = p.mul(&core)?.mul(&p.transpose())?;
    if !g.is_upper_triangular() {
        return Err(Error::TriangularityViolated(format!(
            "P A1 D A3^-t P^t = {g}"
        )));
    }
    let diag = g.diagonal();
    let eps = if even_sqrt(&diag[0]).is_some() { 1 } else { -1 };
    let roots = diag
        .iter()
        .map(|e| {
            even_sqrt(&e.scale(&qi(eps))).ok_or_else(|| {
                Error::TriangularityViolated(format!(
                    "diagonal entry {e} is not ±(square monomial)"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let e = Matrix::diag(roots.iter().map(|r| r.inv()).collect::<Result<Vec<_>>>()?);
    let qm = e.mul(&p)?;
    let s = qm
        .mul(&core)?
        .mul(&qm.transpose())?
        .inverse()?
        .scale(&Rf::int(eps));
    if !s.is_upper_unitriangular() {
        return Err(Error::TriangularityViolated(format!("S = {s}")));
    }
    let m0 = d.inverse()?.mul(&a2)?.mul(&d)?.mul(&a2.inv_transpose()?)?;
    if !m0.is_lower_triangular() {
        return Err(Error::TriangularityViolated(format!("M0 = {m0}")));
    }
    let md = m0.diagonal();
    for i in 0..n {
        for j in i + 1..n {
            if md[i] == md[j] {
                return Err(Error::ResonantEigenvalues);
            }
        }
    }
    let lambda = Matrix::diag(md.iter().map(|m| m.inv()).collect::<Result<Vec<_>>>()?);
    let mi = m0.inverse()?;
    let mut ev: MatrixRF = Matrix::identity(n);
    for j in 0..n {
        let lj = lambda.get(j, j).clone();
        let mut v = vec![Rf::zero(); n];
        v[j] = Rf::one();
        for i in j + 1..n {
            let mut acc = Rf::zero();
            for l in j..i {
                acc = acc.add(&mi.get(i, l).mul(&v[l]));
            }
            v[i] = acc.div(&lj.sub(mi.get(i, i)))?;
        }
        for (i, vi) in v.into_iter().enumerate() {
            ev.set(i, j, vi);
        }
    }
    let mut toric = vec![Rf::one(); n];
    for (j, cv) in coords.c.iter().enumerate() {
        toric[j] = Rf::var(*cv);
        toric[n - 1 - j] = Rf::var_pow(*cv, -1);
    }
    let c0 = ev.mul(&Matrix::diag(toric))?;
    Ok(UgagliaGraph {
        coords,
        eps,
        a1,
        a2,
        a3,
        d,
        q: qm,
        s,
        m0,
        lambda,
        c0,
    })
}

/// Named counterclockwise jump sequences, one per vertex.
pub type VertexSequences<T> = Vec<(&'static str, Vec<Matrix<T>>)>;

/// The independent jumps of the graph; every other jump is an inverse or
/// transpose of one of these.
struct Jumps<T: Field> {
    s: Matrix<T>,
    q: Matrix<T>,
    a1: Matrix<T>,
    a2: Matrix<T>,
    a3: Matrix<T>,
    d: Matrix<T>,
    m0: Matrix<T>,
    lambda: Matrix<T>,
    c0: Matrix<T>,
}

impl<T: Field> Jumps<T> {
    fn sequences(&self) -> Result<VertexSequences<T>> {
        let Jumps {
            s,
            q: qm,
            a1,
            a2,
            a3,
            d,
            m0,
            lambda,
            c0,
        } = self;
        Ok(vec![
            (
                "q0",
                vec![
                    s.clone(),
                    qm.clone(),
                    a1.clone(),
                    d.clone(),
                    a3.inv_transpose()?,
                    qm.transpose(),
                ],
            ),
            (
                "q1",
                vec![
                    s.inv_transpose()?,
                    qm.inv_transpose()?,
                    a1.inv_transpose()?,
                    d.inverse()?,
                    a3.clone(),
                    qm.inverse()?,
                ],
            ),
            ("f0", vec![a3.inverse()?, a2.inverse()?, a1.inverse()?]),
            ("f1", vec![a3.transpose(), a2.transpose(), a1.transpose()]),
            (
                "s",
                vec![
                    a2.clone(),
                    d.clone(),
                    a2.inv_transpose()?,
                    m0.inverse()?,
                    d.inverse()?,
                ],
            ),
            (
                "beta",
                vec![m0.clone(), c0.clone(), lambda.clone(), c0.inverse()?],
            ),
        ])
    }

    fn try_map<U: Field>(&self, f: impl Fn(&Matrix<T>) -> Result<Matrix<U>>) -> Result<Jumps<U>> {
        Ok(Jumps {
            s: f(&self.s)?,
            q: f(&self.q)?,
            a1: f(&self.a1)?,
            a2: f(&self.a2)?,
            a3: f(&self.a3)?,
            d: f(&self.d)?,
            m0: f(&self.m0)?,
            lambda: f(&self.lambda)?,
            c0: f(&self.c0)?,
        })
    }
}

impl UgagliaGraph {
    fn jumps(&self) -> Jumps<Rf> {
        Jumps {
            s: self.s.clone(),
            q: self.q.clone(),
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            a3: self.a3.clone(),
            d: self.d.clone(),
            m0: self.m0.clone(),
            lambda: self.lambda.clone(),
            c0: self.c0.clone(),
        }
    }

    /// Counterclockwise jump sequences at each vertex, outward oriented.
    pub fn vertices(&self) -> Result<VertexSequences<Rf>> {
        self.jumps().sequences()
    }

    /// The vertex sequences as jets at `pt` over [`UgagliaCoords::vars`].
    pub fn vertices_at(&self, pt: &HashMap<Var, Q>) -> Result<VertexSequences<crate::JetQ>> {
        let vars = self.coords.vars();
        self.jumps()
            .try_map(|m| m.try_map(|e| jet_at(e, pt, &vars)))?
            .sequences()
    }

    /// The off-diagonal Stokes entries `s_ij`, `i < j`, keyed by `(i, j)`.
    pub fn stokes_entries(&self) -> BTreeMap<(usize, usize), Rf> {
        let n = self.coords.n;
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                out.insert((i + 1, j + 1), self.s.get(i, j).clone());
            }
        }
        out
    }
}

/// `Λ = (−1)^{n+1} ∏ z_j^{α_j − α_j*} ∏ x_abc^{h_b − h_b*}` as the diagonal
/// of a matrix over `X`, `Z`.
pub fn evals_closed_form(coords: &UgagliaCoords, cd: &CartanData) -> Result<Vec<Rf>> {
    let n = coords.n;
    let exps = evals_exponents(coords, cd);
    let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
    let vars: Vec<Var> = coords.x.iter().chain(&coords.z).cloned().collect();
    Ok(exps
        .iter()
        .map(|row| {
            let m = Monomial::from_pairs(vars.iter().zip(row).map(|(v, &e)| (*v, 2 * e as i32)));
            Rf::monomial(qi(sign), m)
        })
        .collect())
}

/// Integer exponents of `log m_j` in `(ξ…, ζ…)`, one row per eigenvalue.
pub fn evals_exponents(coords: &UgagliaCoords, cd: &CartanData) -> Vec<Vec<i64>> {
    let n = coords.n;
    (0..n)
        .map(|j| {
            let mut row = Vec::new();
            for t in &coords.triples {
                let h = cd.h(t.b);
                row.push(h[j] - star_diag(h)[j]);
            }
            for i in 1..n {
                let a = cd.alpha(i);
                row.push(a[j] - star_diag(a)[j]);
            }
            row
        })
        .collect()
}

fn heaviside(x: i64) -> i64 {
    i64::from(x > 0)
}

/// The integers `F_{ijk;i'j'k'}` of `ω_f`.
pub fn f_coefficients(n: usize) -> Result<BTreeMap<(TripleIndex, TripleIndex), i64>> {
    let cd = cartan_data(n)?;
    let g = |a: usize, b: usize| {
        if a == 0 || b == 0 || a >= n || b >= n {
            0
        } else {
            cd.gram(a, b)
        }
    };
    let ts = triples(n);
    let mut out = BTreeMap::new();
    for &t in &ts {
        for &u in &ts {
            let (di, dj, dk) = (
                u.a as i64 - t.a as i64,
                u.b as i64 - t.b as i64,
                u.c as i64 - t.c as i64,
            );
            let v = (g(t.a, n - u.b) - g(u.a, n - t.b)) * heaviside(di * dj)
                + (g(t.b, n - u.c) - g(u.b, n - t.c)) * heaviside(dj * dk)
                + (g(t.c, n - u.a) - g(u.c, n - t.a)) * heaviside(dk * di);
            out.insert((t, u), v);
        }
    }
    Ok(out)
}

fn trace_prod(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The assembly `2ω_f + 2ω_{q₀} + ω_β + ω_s` over `(ξ, ζ, γ)`, with each
/// `dμ_j` expanded through the eigenvalue exponents.
pub fn ugaglia_form(n: usize) -> Result<LogCanonicalForm> {
    let cd = cartan_data(n)?;
    let coords = UgagliaCoords::new(n);
    let nt = coords.triples.len();
    let nz = n - 1;
    let dim = coords.dim();
    let mut w = vec![vec![Q::from_integer(0.into()); dim]; dim];
    let mut add = |i: usize, j: usize, c: Q| {
        w[i][j] += c.clone();
        w[j][i] -= c;
    };
    let h = |i: usize| cd.h(i).to_vec();
    let hs = |i: usize| star_diag(cd.h(i));
    for ((t, u), v) in f_coefficients(n)? {
        let p = coords.triples.iter().position(|x| *x == t).expect("triple");
        let r = coords.triples.iter().position(|x| *x == u).expect("triple");
        add(p, r, qi(2 * v));
    }
    for j in 1..n {
        for (p, t) in coords.triples.iter().enumerate() {
            let sum: Vec<i64> = h(t.a).iter().zip(hs(t.c)).map(|(a, b)| a + b).collect();
            add(nt + j - 1, p, qi(2 * trace_prod(cd.alpha(j), &sum)));
            add(p, nt + j - 1, qi(2 * trace_prod(cd.alpha(j), &hs(t.b))));
        }
    }
    for (p, t) in coords.triples.iter().enumerate() {
        for (r, u) in coords.triples.iter().enumerate() {
            let v = trace_prod(&hs(t.c), &h(u.a)) - trace_prod(&h(t.a), &hs(u.c));
            add(p, r, qi(v));
        }
    }
    let mu = evals_exponents(&coords, &cd);
    for j in 0..n / 2 {
        for (r, &e) in mu[j].iter().enumerate() {
            if e != 0 {
                add(nt + nz + j, r, qi(4 * e));
            }
        }
    }
    let m = Matrix::from_rows(w)?;
    LogCanonicalForm::new(coords.log_vars(), m)
}

/// `Ω(Σ)` computed from the jumps, over `(ξ, ζ, γ)`. For `n ≤ 3` it is
/// computed symbolically; otherwise at `points` seeded random points, each
/// of which must give the same constant matrix.
pub fn graph_form(g: &UgagliaGraph, points: usize, seed: u64) -> Result<LogCanonicalForm> {
    let coords = &g.coords;
    let vars = coords.vars();
    let sc = coords.log_scales();
    let rescale = |m: &MatrixQ| {
        Matrix::from_fn(m.rows(), m.cols(), |i, j| {
            m.get(i, j).clone() * sc[i].clone() * sc[j].clone()
        })
    };
    if coords.n <= 3 {
        let mut total = crate::formcalc::TwoForm::zero();
        for (_, seq) in g.vertices()? {
            total = total.add(&sequence_two_form(&seq)?);
        }
        let l = to_log_canonical(&total, &vars)?;
        return LogCanonicalForm::new(coords.log_vars(), rescale(&l.omega));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Option<MatrixQ> = None;
    for _ in 0..points.max(1) {
        let pt = random_point(&mut rng, &vars);
        let w = form_at(g, &pt)?;
        let m = Matrix::from_fn(w.rows(), w.cols(), |i, j| {
            w.get(i, j).clone() * pt[&vars[i]].clone() * pt[&vars[j]].clone()
        });
        let m = rescale(&m);
        match &found {
            None => found = Some(m),
            Some(f) if *f == m => {}
            Some(f) => {
                return Err(Error::NotLogCanonical {
                    first: "point".into(),
                    second: "point".into(),
                    residual: format!("{f} vs {m}"),
                })
            }
        }
    }
    LogCanonicalForm::new(coords.log_vars(), found.expect("at least one point"))
}

fn random_point(rng: &mut ChaCha8Rng, vars: &[Var]) -> HashMap<Var, Q> {
    vars.iter()
        .map(|v| {
            let a: i64 = rng.gen_range(2..=9);
            let b: i64 = rng.gen_range(2..=9);
            (*v, q(a, b))
        })
        .collect()
}

fn form_at(g: &UgagliaGraph, pt: &HashMap<Var, Q>) -> Result<MatrixQ> {
    let dim = g.coords.dim();
    let mut total: MatrixQ = Matrix::zeros(dim, dim);
    for (_, jets) in g.vertices_at(pt)? {
        total = total.add(&sequence_two_form_at(&jets, dim)?)?;
    }
    Ok(total)
}

/// The Ugaglia bracket on `s_ij`, `i < j ≤ n`.
pub fn ugaglia_bracket(n: usize) -> Result<PoissonStructure> {
    if n < 2 {
        return Err(Error::InvalidArgument("n >= 2".into()));
    }
    let pairs = stokes_pairs(n);
    let coords: Vec<Var> = pairs.iter().map(|&(i, j)| s_var(i, j)).collect();
    let mut p = PoissonStructure::new(coords);
    for (a, &pa) in pairs.iter().enumerate() {
        for (b, &pb) in pairs.iter().enumerate().skip(a + 1) {
            let v = ug_pair(pa, pb, &|i, j| Rf::var(s_var(i, j)));
            if !v.is_zero() {
                p.set(a, b, v);
            }
        }
    }
    Ok(p)
}

/// Index pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn stokes_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

fn s_var(i: usize, j: usize) -> Var {
    Var::new(&format!("s{i}{j}"))
}

/// `{s_ik, s_jl}_U` with `s` supplied by `s(i, j)` for `i < j`.
fn ug_pair(p: (usize, usize), r: (usize, usize), s: &dyn Fn(usize, usize) -> Rf) -> Rf {
    let ((i, k), (j, l)) = (p, r);
    let two = |f: Rf| f.scale(&qi(2));
    if p == r {
        return Rf::zero();
    }
    if i == j {
        return if k < l {
            two(s(k, l)).sub(&s(i, k).mul(&s(i, l)))
        } else {
            ug_pair(r, p, s).neg()
        };
    }
    if k == l {
        return if i < j {
            two(s(i, j)).sub(&s(i, k).mul(&s(j, k)))
        } else {
            ug_pair(r, p, s).neg()
        };
    }
    if k == j {
        return s(i, k).mul(&s(k, l)).sub(&two(s(i, l)));
    }
    if l == i {
        return ug_pair(r, p, s).neg();
    }
    if (i < k && k < j && j < l) || (i < j && j < l && l < k) {
        return Rf::zero();
    }
    if (j < l && l < i && i < k) || (j < i && i < k && k < l) {
        return Rf::zero();
    }
    if i < j && j < k && k < l {
        return two(s(i, j).mul(&s(k, l)).sub(&s(i, l).mul(&s(j, k))));
    }
    ug_pair(r, p, s).neg()
}

/// The bracket of two functions of `X, Z, c` under the constant bivector
/// `Π` over the log coordinates.
fn log_bracket(pi: &MatrixQ, coords: &UgagliaCoords, f: &Rf, g: &Rf) -> Rf {
    let vars = coords.vars();
    let sc = coords.log_scales();
    let grad = |h: &Rf| -> Vec<Rf> {
        vars.iter()
            .zip(&sc)
            .map(|(v, s)| h.differentiate(*v).mul(&Rf::var(*v)).scale(s))
            .collect()
    };
    let (df, dg) = (grad(f), grad(g));
    let mut acc = Rf::zero();
    for a in 0..vars.len() {
        if df[a].is_zero() {
            continue;
        }
        for b in 0..vars.len() {
            let c = pi.get(a, b);
            if c.is_zero() || dg[b].is_zero() {
                continue;
            }
            acc = acc.add(&df[a].mul(&dg[b]).scale(c));
        }
    }
    acc
}

fn log_bracket_at(
    pi: &MatrixQ,
    coords: &UgagliaCoords,
    f: &Rf,
    g: &Rf,
    pt: &HashMap<Var, Q>,
) -> Result<Q> {
    let vars = coords.vars();
    let sc = coords.log_scales();
    let grad = |h: &Rf| -> Result<Vec<Q>> {
        vars.iter()
            .zip(&sc)
            .map(|(v, s)| Ok(h.differentiate(*v).eval_at(pt)? * pt[v].clone() * s.clone()))
            .collect()
    };
    let (df, dg) = (grad(f)?, grad(g)?);
    let mut acc = qi(0);
    for a in 0..vars.len() {
        for b in 0..vars.len() {
            acc += pi.get(a, b).clone() * df[a].clone() * dg[b].clone();
        }
    }
    Ok(acc)
}

/// Constant ratio `lhs / rhs` when `lhs = r·rhs` for a rational `r`.
fn constant_ratio(lhs: &Rf, rhs: &Rf) -> Option<Q> {
    if rhs.is_zero() {
        return None;
    }
    lhs.div(rhs).ok()?.as_constant()
}

/// Compares the bracket induced by `Ω(Σ)` on the Stokes entries with `−8`
/// times the Ugaglia bracket, together with the structural checks on the
/// jumps. Symbolic for `n ≤ 3`, at `points` seeded random points otherwise.
pub fn verify_ugaglia(n: usize, points: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("ugaglia");
    r.param("n", n);
    let symbolic = n <= 3;
    r.param("mode", if symbolic { "symbolic" } else { "pointwise" });
    if !symbolic {
        r.param("points", points).param("seed", seed);
    }
    let g = build_ugaglia(n)?;
    let cd = cartan_data(n)?;
    r.convention("H", "H(x) = 1 for x > 0, H(x) = 0 otherwise")
        .convention("q0 cyclic order", "S, Q, A1, D, A3^-t, Q^t")
        .convention("s cyclic order", "A2, D, A2^-t, M0^-1, D^-1")
        .convention("beta cyclic order", "M0, C0, Lambda, C0^-1")
        .convention("M", "M0 = D^-1 A2 D A2^-t")
        .convention("Lambda", "diag(M0)^-1")
        .convention(
            "triangle matrices",
            "N_k factors indexed by x_{k, i-k+1, n-i-1}, closed with the plain antidiagonal P",
        );
    r.pass("S upper unitriangular");
    r.datum("eps", g.eps);
    if symbolic {
        for (name, seq) in g.vertices()? {
            let prod = Matrix::product(seq.iter())?;
            let ok = prod.as_scalar_constant().is_some();
            r.check(&format!("vertex {name} closes"), ok, || prod.to_string());
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        let pt = random_point(&mut rng, &g.coords.vars());
        for (name, seq) in g.vertices_at(&pt)? {
            let vals: Vec<MatrixQ> = seq.iter().map(|m| m.map(|e| e.value.clone())).collect();
            let prod = Matrix::product(vals.iter())?;
            let ok = prod.as_scalar_constant().is_some();
            r.check(&format!("vertex {name} closes"), ok, || prod.to_string());
        }
    }
    r.check("M0 lower triangular", g.m0.is_lower_triangular(), || {
        g.m0.to_string()
    });
    let md = g.m0.diagonal();
    let ev = evals_closed_form(&g.coords, &cd)?;
    let direct = md.iter().zip(&ev).all(|(a, b)| a == b);
    r.check("diag(M0) equals the eigenvalue closed form", direct, || {
        format!("diag(M0) = [{}], closed form = [{}]", join(&md), join(&ev))
    });
    let inverse_match = md
        .iter()
        .zip(&ev)
        .all(|(a, b)| a.inv().map(|x| x == *b).unwrap_or(false));
    r.diagnostic(
        "diag(M0)^-1 equals the eigenvalue closed form",
        inverse_match,
        None,
    );
    let symmetric = (0..n).all(|j| md[j].mul(&md[n - 1 - j]).is_one());
    r.check("m_j m_{n+1-j} = 1", symmetric, || join(&md));
    let printed_q = printed_q_matrix(&g.coords, &cd)?;
    r.diagnostic(
        "printed closed form of Q equals the solved Q",
        printed_q == g.q,
        None,
    );

    let form = graph_form(&g, points, seed)?;
    r.datum("omega", matrix_json(&form.omega));
    let det = form.omega.det()?;
    r.datum("omega_det", det.to_string());
    r.check("Omega nondegenerate", !det.is_zero(), || "det = 0".into());
    let printed = ugaglia_form(n)?;
    r.datum("printed_omega", matrix_json(&printed.omega));
    r.diagnostic(
        "printed assembly 2w_f + 2w_q0 + w_beta + w_s equals Omega",
        printed.omega == form.omega,
        None,
    );
    if det.is_zero() {
        return Ok(r.finish());
    }
    let pi = form.omega.inverse()?.transpose();
    let s = g.stokes_entries();
    let pairs = stokes_pairs(n);
    let ug = |a: (usize, usize), b: (usize, usize)| ug_pair(a, b, &|i, j| s[&(i, j)].clone());
    let minus8 = qi(-8);
    let mut ratios: Vec<Option<Q>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let pts: Vec<HashMap<Var, Q>> = if symbolic {
        Vec::new()
    } else {
        (0..points)
            .map(|_| random_point(&mut rng, &g.coords.vars()))
            .collect()
    };
    for (a, &pa) in pairs.iter().enumerate() {
        for &pb in pairs.iter().skip(a + 1) {
            let name = format!("{{s{}{}, s{}{}}} = -8 Ugaglia", pa.0, pa.1, pb.0, pb.1);
            let rhs = ug(pa, pb);
            if symbolic {
                let lhs = log_bracket(&pi, &g.coords, &s[&pa], &s[&pb]);
                let ratio = constant_ratio(&lhs, &rhs);
                ratios.push(ratio.clone());
                let diff = lhs.sub(&rhs.scale(&minus8));
                r.check(&name, diff.is_zero(), || match &ratio {
                    Some(q) => format!("observed ratio {q}"),
                    None => format!("residual {diff}"),
                });
            } else {
                let mut bad = None;
                let mut ratio: Option<Q> = None;
                let mut consistent = true;
                for pt in &pts {
                    let lhs = log_bracket_at(&pi, &g.coords, &s[&pa], &s[&pb], pt)?;
                    let rv = rhs.eval_at(pt)?;
                    if !rv.is_zero() {
                        let q = lhs.clone() / rv.clone();
                        match &ratio {
                            None => ratio = Some(q),
                            Some(x) if *x == q => {}
                            Some(_) => consistent = false,
                        }
                    } else if !lhs.is_zero() {
                        consistent = false;
                    }
                    if lhs != rv.clone() * minus8.clone() && bad.is_none() {
                        bad = Some((lhs, rv));
                    }
                }
                let ratio = ratio.filter(|_| consistent);
                ratios.push(ratio.clone());
                match bad {
                    None => r.pass(&name),
                    Some((l, v)) => r.fail(
                        &name,
                        &match &ratio {
                            Some(q) => format!("observed ratio {q}"),
                            None => format!("{l} vs -8*{v}"),
                        },
                    ),
                }
            }
        }
    }
    let nonzero: Vec<&Q> = ratios.iter().flatten().collect();
    if let Some(first) = nonzero.first() {
        if nonzero.len() == ratios.len() && nonzero.iter().all(|q| q == first) {
            r.datum("observed_ratio", first.to_string());
        }
    }
    for j in 0..n / 2 {
        let m = &md[j];
        let mut ok = true;
        for pa in &pairs {
            let v = if symbolic {
                log_bracket(&pi, &g.coords, m, &s[pa]).is_zero()
            } else {
                pts.iter()
                    .map(|pt| log_bracket_at(&pi, &g.coords, m, &s[pa], pt))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .all(|x| x.is_zero())
            };
            ok &= v;
        }
        r.check(
            &format!("m{} is a Casimir on the Stokes entries", j + 1),
            ok,
            || "nonzero bracket".into(),
        );
    }
    let no_gamma = s
        .values()
        .all(|f| g.coords.c.iter().all(|c| !f.variables().contains(c)));
    r.check(
        "Stokes entries do not involve the toric variables",
        no_gamma,
        || "toric variable present".into(),
    );
    Ok(r.finish())
}

fn join(v: &[Rf]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn matrix_json(m: &MatrixQ) -> serde_json::Value {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into()
}

/// `Q = (−1)^{(n+1)/2} ∏ x_abc^{½(h_c* + h_a)} ∏ z_j^{α_j/2} P` with the signed
/// permutation; `(−1)^{(n+1)/2}` is read as `(−1)^{⌊(n+1)/2⌋}`.
pub fn printed_q_matrix(coords: &UgagliaCoords, cd: &CartanData) -> Result<MatrixRF> {
    let n = coords.n;
    let mut m: MatrixRF = Matrix::identity(n);
    for (t, xv) in coords.triples.iter().zip(&coords.x) {
        let e: Vec<i64> = cd
            .h(t.a)
            .iter()
            .zip(star_diag(cd.h(t.c)))
            .map(|(a, b)| a + b)
            .collect();
        m = m.mul(&diag_power(&Rf::var(*xv), &e)?)?;
    }
    for (j, zv) in coords.z.iter().enumerate() {
        m = m.mul(&diag_power(&Rf::var(*zv), cd.alpha(j + 1))?)?;
    }
    let sign = if n.div_ceil(2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let p = cd.p.map(|e| Rf::constant(e.clone()));
    Ok(m.mul(&p)?.scale(&Rf::int(sign)))
}
