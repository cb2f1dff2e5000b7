//! The jump graph Σ₀ of a triangulation and the Stokes matrices it forces.

use std::collections::BTreeMap;

use super::sl2::{a_matrix, d_matrix, lambda_matrix, lower, upper, v_matrix};
use crate::error::{Error, Result};
use crate::exactalg::{qi, Matrix, Monomial, Var};
use crate::formcalc::{Edge, JumpGraph};
use crate::polygon::Triangulation;
use crate::{MatrixRF, Rf};

/// Stokes data `S₁..S_{2K+2}`, `Λ = diag(λ, λ⁻¹)` and the parameters
/// `s₁..s_{2K+2}`, `λ` as functions of the triangulation's variables.
#[derive(Clone, Debug, PartialEq)]
pub struct StokesData {
    pub k: usize,
    pub s_mats: Vec<MatrixRF>,
    pub lambda_mat: MatrixRF,
    pub s: Vec<Rf>,
    pub lambda: Rf,
}

impl StokesData {
    /// Builds the data from parameters, with `S_j` upper unitriangular for
    /// odd `j` and lower unitriangular for even `j`.
    pub fn from_params(k: usize, s: Vec<Rf>, lambda: Rf) -> Result<Self> {
        if s.len() != 2 * k + 2 {
            return Err(Error::ShapeMismatch(format!(
                "K = {k} needs {} Stokes parameters",
                2 * k + 2
            )));
        }
        let s_mats = s
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { upper(x) } else { lower(x) })
            .collect();
        Ok(StokesData {
            k,
            s_mats,
            lambda_mat: lambda_matrix(&lambda)?,
            s,
            lambda,
        })
    }

    /// The parameters followed by `λ`.
    pub fn params(&self) -> Vec<Rf> {
        let mut out = self.s.clone();
        out.push(self.lambda.clone());
        out
    }

    /// `F = S₁⋯S_{2K+2}·Λ`.
    pub fn monodromy(&self) -> Result<MatrixRF> {
        Matrix::product(self.s_mats.iter().chain([&self.lambda_mat]))
    }
}

/// Parameter names `s1..s{2K+2}, lambda` in order.
pub fn param_names(k: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=2 * k + 2).map(|j| format!("s{j}")).collect();
    out.push("lambda".into());
    out
}

/// Edges and counterclockwise orders of Σ₀ without the Stokes rays.
struct Skeleton {
    edges: Vec<Edge<Rf>>,
    rotation: Vec<Vec<usize>>,
}

fn perimeter_jump(t: &Triangulation, x: &BTreeMap<usize, Rf>, j: usize) -> Result<MatrixRF> {
    let n = t.n();
    if j == 1 {
        v_matrix(&Rf::var(t.var(1)).inv()?)
    } else if j == n || j.is_multiple_of(2) {
        d_matrix(&x[&j])
    } else {
        v_matrix(&x[&j].inv()?)
    }
}

fn skeleton(t: &Triangulation, signs: &[i64]) -> Result<Skeleton> {
    let n = t.n();
    let x = t.x_variables();
    let mut edges = Vec::new();
    for j in 1..=n {
        let jump = perimeter_jump(t, &x, j)?.scale(&Rf::int(signs[j - 1]));
        edges.push(Edge {
            label: format!("p{j}"),
            tail: j - 1,
            head: Some(j % n),
            jump,
        });
    }
    let mut diag_edge = BTreeMap::new();
    for d in t.diagonals() {
        if !d.touches(d.tail) {
            return Err(Error::OrientationInvalid);
        }
        diag_edge.insert((d.a, d.b), edges.len());
        edges.push(Edge {
            label: format!("d{}", d.index),
            tail: d.tail - 1,
            head: Some(d.head() - 1),
            jump: v_matrix(&Rf::var(t.var(d.index)))?,
        });
    }
    let triangles = t.triangles();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n + triangles.len()];
    let mut tri_edge = BTreeMap::new();
    for (ti, tri) in triangles.iter().enumerate() {
        for &corner in tri {
            tri_edge.insert((*tri, corner), edges.len());
            rotation[n + ti].push(edges.len());
            edges.push(Edge {
                label: format!("a{}.{corner}", ti + 1),
                tail: corner - 1,
                head: Some(n + ti),
                jump: a_matrix(),
            });
        }
    }
    let succ = |v: usize| v % n + 1;
    let pred = |v: usize| (v + n - 2) % n + 1;
    for v in 1..=n {
        let rot = &mut rotation[v - 1];
        rot.push(v - 1);
        let mut u = succ(v);
        let mut w = succ(u);
        loop {
            let key = (v.min(w), v.max(w));
            let is_diag = diag_edge.contains_key(&key);
            if is_diag || w == pred(v) {
                let mut tri = [v, u, w];
                tri.sort();
                let e = tri_edge.get(&(tri, v)).ok_or_else(|| {
                    Error::InvalidTriangulation(format!("missing triangle {tri:?}"))
                })?;
                rot.push(*e);
                if w == pred(v) {
                    break;
                }
                rot.push(diag_edge[&key]);
                u = w;
            }
            w = succ(w);
        }
        rot.push(pred(v) - 1);
    }
    Ok(Skeleton { edges, rotation })
}

/// The inverse of the counterclockwise product of the bounded jumps at `v`.
fn raw_stokes(sk: &Skeleton, v: usize) -> Result<MatrixRF> {
    let mut p = Matrix::identity(2);
    for &e in &sk.rotation[v] {
        let ed = &sk.edges[e];
        let j = if ed.tail == v {
            ed.jump.clone()
        } else {
            ed.jump.inverse()?
        };
        p = p.mul(&j)?;
    }
    p.inverse()
}

fn unit_sign(m: &MatrixRF) -> Option<i64> {
    let a = m.get(0, 0);
    if a != m.get(1, 1) {
        return None;
    }
    if a.is_one() {
        Some(1)
    } else if a.neg().is_one() {
        Some(-1)
    } else {
        None
    }
}

/// Solves the vertex relations of `t` with its own orientation.
fn solve(t: &Triangulation) -> Result<(StokesData, JumpGraph<Rf>)> {
    let n = t.n();
    let sk = skeleton(t, &vec![1; n])?;
    let mut sigma = Vec::with_capacity(n);
    for v in 1..n {
        let raw = raw_stokes(&sk, v - 1)?;
        let tri = if v % 2 == 1 {
            raw.is_upper_triangular()
        } else {
            raw.is_lower_triangular()
        };
        let sg = unit_sign(&raw)
            .filter(|_| tri)
            .ok_or_else(|| Error::TriangularityViolated(format!("S{v} = {raw}")))?;
        sigma.push(sg);
    }
    let mut signs = Vec::with_capacity(n);
    let mut acc = 1;
    for &sg in &sigma {
        acc *= sg;
        signs.push(acc);
    }
    signs.push(1);
    let mut sk = skeleton(t, &signs)?;
    let mut s_mats = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut rays = Vec::with_capacity(n);
    for v in 1..=n {
        let m = raw_stokes(&sk, v - 1)?;
        if v < n {
            let ok = if v % 2 == 1 {
                m.is_upper_unitriangular()
            } else {
                m.is_lower_unitriangular()
            };
            if !ok {
                return Err(Error::TriangularityViolated(format!("S{v} = {m}")));
            }
            s.push(if v % 2 == 1 {
                m.get(0, 1).clone()
            } else {
                m.get(1, 0).clone()
            });
            s_mats.push(m.clone());
        }
        rays.push(m);
    }
    let last = &rays[n - 1];
    let lambda = last.get(0, 0).clone();
    if !last.get(0, 1).is_zero() || lambda.is_zero() || *last.get(1, 1) != lambda.inv()? {
        return Err(Error::TriangularityViolated(format!("S{n}Λ = {last}")));
    }
    let sn = last.get(1, 0).div(&lambda)?;
    s_mats.push(lower(&sn));
    s.push(sn);
    for (v, m) in rays.into_iter().enumerate() {
        let e = sk.edges.len();
        sk.edges.push(Edge {
            label: format!("s{}", v + 1),
            tail: v,
            head: None,
            jump: m,
        });
        sk.rotation[v].insert(0, e);
    }
    let graph = JumpGraph::new(sk.edges, sk.rotation)?;
    let data = StokesData {
        k: t.k(),
        s_mats,
        lambda_mat: lambda_matrix(&lambda)?,
        s,
        lambda,
    };
    Ok((data, graph))
}

/// The jump graph Σ₀ of `t` with the solved Stokes rays attached. The ray at
/// `v_{2K+2}` carries `S_{2K+2}Λ`; perimeter jumps carry the signs that make
/// every Stokes matrix unitriangular.
pub fn build_sigma0(t: &Triangulation) -> Result<JumpGraph<Rf>> {
    match solve(t) {
        Ok((_, g)) => Ok(g),
        Err(Error::TriangularityViolated(_)) => Err(Error::OrientationInvalid),
        Err(e) => Err(e),
    }
}

/// Every diagonal orientation of `t` (as tails, in diagonal order) for
/// which the Stokes solve produces alternating unitriangular matrices.
pub fn valid_orientations(t: &Triangulation) -> Result<Vec<Vec<usize>>> {
    let ds = t.diagonals().to_vec();
    let mut out = Vec::new();
    for bits in 0u64..(1 << ds.len()) {
        let tails: Vec<usize> = ds
            .iter()
            .enumerate()
            .map(|(i, d)| if bits >> i & 1 == 0 { d.a } else { d.b })
            .collect();
        let cand = t.with_orientations(&tails)?;
        match solve(&cand) {
            Ok(_) => out.push(tails),
            Err(Error::TriangularityViolated(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Solves for the Stokes data of `t`. When the given orientation violates
/// triangularity the orientations are searched in a fixed order.
pub fn stokes_matrices(t: &Triangulation) -> Result<StokesData> {
    match solve(t) {
        Ok((d, _)) => Ok(d),
        Err(Error::TriangularityViolated(msg)) => {
            let first = valid_orientations(t)?
                .into_iter()
                .next()
                .ok_or(Error::TriangularityViolated(msg))?;
            Ok(solve(&t.with_orientations(&first)?)?.0)
        }
        Err(e) => Err(e),
    }
}

fn y(i: usize) -> Var {
    Var::new(&format!("y{i}"))
}

fn mono(pairs: Vec<(Var, i32)>) -> Rf {
    Rf::monomial(qi(1), Monomial::from_pairs(pairs))
}

/// The closed-form Stokes parameters of the fan triangulation in `y₁..y_{2K}`:
/// `s₁ = −y₁⁻²`, `s_{2k} = (1+y_{2k}²)∏_{j≤2k} y_j^{(−1)^{j+1}2}`,
/// `s_{2k+1} = −(1+y_{2k+1}²)∏_{j≤2k+1} y_j^{(−1)^j 2}`,
/// `s_{2K+1} = −∏_{j≤2K} y_j^{(−1)^j 2}`,
/// `s_{2K+2} = y₁²(1+y₂²(1+y₃²(⋯(1+y_{2K}²))))∏_j y_{2j}⁻⁴` and
/// `λ = (−1)^K ∏_j y_{2j}²`.
pub fn prop1_parametrization(k: usize) -> Result<StokesData> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    let sq = |i: usize| Rf::var_pow(y(i), 2);
    let one = Rf::one();
    let alt = |upto: usize, odd_sign: i32| {
        mono(
            (1..=upto)
                .map(|j| {
                    (
                        y(j),
                        if j % 2 == 1 {
                            2 * odd_sign
                        } else {
                            -2 * odd_sign
                        },
                    )
                })
                .collect(),
        )
    };
    let mut s = vec![Rf::var_pow(y(1), -2).neg()];
    for l in 2..=2 * k {
        if l % 2 == 0 {
            s.push(one.add(&sq(l)).mul(&alt(l, 1)));
        } else {
            s.push(one.add(&sq(l)).mul(&alt(l, -1)).neg());
        }
    }
    s.push(alt(2 * k, -1).neg());
    let mut nest = one.clone();
    for j in (2..=2 * k).rev() {
        nest = one.add(&sq(j).mul(&nest));
    }
    let evens_inv4 = mono((1..=k).map(|j| (y(2 * j), -4)).collect());
    s.push(sq(1).mul(&nest).mul(&evens_inv4));
    let lambda = mono((1..=k).map(|j| (y(2 * j), 2)).collect());
    let lambda = if k.is_multiple_of(2) {
        lambda
    } else {
        lambda.neg()
    };
    StokesData::from_params(k, s, lambda)
}

/// Checks `S₁⋯S_{2K+2}·Λ = 1` exactly.
pub fn monodromy_check(sd: &StokesData) -> bool {
    sd.monodromy().map(|m| m.is_identity()).unwrap_or(false)
}
