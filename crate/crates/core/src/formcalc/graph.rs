//! Jump graphs and their standard two-form.

use std::collections::BTreeMap;

use super::forms::TwoForm;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Var};
use crate::{MatrixQ, MatrixRF, Q};

/// An oriented edge carrying a jump matrix. A ray has no head vertex.
#[derive(Clone, Debug)]
pub struct Edge<T: Field> {
    pub label: String,
    pub tail: usize,
    pub head: Option<usize>,
    pub jump: Matrix<T>,
}

/// How a vertex product closes up.
#[derive(Clone, Debug, PartialEq)]
pub enum VertexRelation<T> {
    /// The counterclockwise product is the identity.
    Identity,
    /// The product is a constant multiple `c·1` with `c ≠ 1`.
    Scalar(T),
}

/// An embedded graph given by counterclockwise half-edge orders, with jump
/// matrices on the oriented edges.
///
/// Traversing edge `e` out of a vertex contributes `J(e)` when `e` starts
/// there and `J(e)⁻¹` otherwise. At every vertex the counterclockwise
/// product of these contributions is validated to be a constant multiple of
/// the identity; constant multiples do not affect the two-form because they
/// have vanishing differential.
#[derive(Clone, Debug)]
pub struct JumpGraph<T: Field> {
    edges: Vec<Edge<T>>,
    rotation: Vec<Vec<usize>>,
    relations: Vec<VertexRelation<T>>,
}

impl<T: Field> JumpGraph<T> {
    /// Builds and validates a graph. `rotation[v]` lists the edges incident
    /// to `v` in counterclockwise order.
    pub fn new(edges: Vec<Edge<T>>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let size = edges
            .first()
            .map(|e| e.jump.rows())
            .ok_or_else(|| Error::InvalidArgument("graph without edges".into()))?;
        for e in &edges {
            if !e.jump.is_square() || e.jump.rows() != size {
                return Err(Error::ShapeMismatch(format!("jump on edge {}", e.label)));
            }
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &e in rot {
                let ok = edges
                    .get(e)
                    .is_some_and(|ed| ed.tail == v || ed.head == Some(v));
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "edge {e} listed at vertex {v} is not incident"
                    )));
                }
            }
        }
        let mut g = JumpGraph {
            edges,
            rotation,
            relations: Vec::new(),
        };
        for v in 0..g.rotation.len() {
            let prod = Matrix::product(g.vertex_jumps(v)?.iter())?;
            let rel = if prod.is_identity() {
                VertexRelation::Identity
            } else {
                match prod.as_scalar_constant() {
                    Some(c) => VertexRelation::Scalar(c),
                    None => return Err(Error::VertexRelationViolated { vertex: v }),
                }
            };
            g.relations.push(rel);
        }
        Ok(g)
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Counterclockwise edge order at `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// How the product at `v` closes up.
    pub fn relation(&self, v: usize) -> &VertexRelation<T> {
        &self.relations[v]
    }

    /// Jump matrices met counterclockwise around `v`, oriented outward.
    pub fn vertex_jumps(&self, v: usize) -> Result<Vec<Matrix<T>>> {
        self.rotation[v]
            .iter()
            .map(|&e| {
                let ed = &self.edges[e];
                if ed.tail == v {
                    Ok(ed.jump.clone())
                } else {
                    ed.jump.inverse()
                }
            })
            .collect()
    }

    /// The same graph with the cyclic order at `v` started `shift` places
    /// later.
    pub fn rotated(&self, v: usize, shift: usize) -> Self {
        let mut g = self.clone();
        let r = &mut g.rotation[v];
        if !r.is_empty() {
            let k = shift % r.len();
            r.rotate_left(k);
        }
        g
    }
}

/// Accumulates `Σ_k Tr(K_{[1:k]}⁻¹ dK_{[1:k]} ∧ J_k⁻¹ dJ_k)` for one vertex,
/// given the jump values and their left Maurer–Cartan components.
fn vertex_sum<S: Field, K: Ord + Clone>(
    values: &[Matrix<S>],
    forms: &[BTreeMap<K, Matrix<S>>],
    out: &mut BTreeMap<(K, K), S>,
) -> Result<()> {
    let mut theta: BTreeMap<K, Matrix<S>> = BTreeMap::new();
    let n = values.len();
    for k in 0..n.saturating_sub(1) {
        let j = &values[k];
        if k > 0 && !theta.is_empty() {
            let jinv = j.inverse()?;
            let mut next = BTreeMap::new();
            for (key, m) in &theta {
                next.insert(key.clone(), jinv.mul(m)?.mul(j)?);
            }
            theta = next;
        }
        for (key, m) in &forms[k] {
            let entry = match theta.remove(key) {
                Some(old) => old.add(m)?,
                None => m.clone(),
            };
            theta.insert(key.clone(), entry);
        }
        if k == 0 {
            continue;
        }
        for (ka, ma) in &theta {
            for (kb, mb) in &forms[k] {
                if ka == kb {
                    continue;
                }
                let t = ma.mul(mb)?.trace()?;
                if t.is_zero() {
                    continue;
                }
                let (key, t) = if ka < kb {
                    ((ka.clone(), kb.clone()), t)
                } else {
                    ((kb.clone(), ka.clone()), -t)
                };
                let next = match out.remove(&key) {
                    Some(old) => old + t,
                    None => t,
                };
                if !next.is_zero() {
                    out.insert(key, next);
                }
            }
        }
    }
    Ok(())
}

fn symbolic_left_forms(m: &MatrixRF) -> Result<BTreeMap<Var, MatrixRF>> {
    let mut vars: Vec<Var> = m.entries().iter().flat_map(|e| e.variables()).collect();
    vars.sort();
    vars.dedup();
    let mut out = BTreeMap::new();
    if vars.is_empty() {
        return Ok(out);
    }
    let inv = m.inverse()?;
    for v in vars {
        let c = inv.mul(&m.map(|e| e.differentiate(v)))?;
        if !c.is_zero() {
            out.insert(v, c);
        }
    }
    Ok(out)
}

/// The standard two-form of a jump graph with rational-function jumps.
pub fn graph_two_form(g: &JumpGraph<crate::Rf>) -> Result<TwoForm> {
    let mut out = TwoForm::zero();
    for v in 0..g.vertex_count() {
        out = out.add(&sequence_two_form(&g.vertex_jumps(v)?)?);
    }
    Ok(out)
}

/// Per-vertex contribution to the standard two-form at a point.
///
/// The jumps are jets whose gradients are taken with respect to `dim`
/// coordinates; the result is the skew coefficient matrix `W` with
/// `Ω = Σ_{i<j} W_ij dx_i ∧ dx_j`.
pub fn vertex_two_form_at(g: &JumpGraph<crate::JetQ>, v: usize, dim: usize) -> Result<MatrixQ> {
    sequence_two_form_at(&g.vertex_jumps(v)?, dim)
}

/// The vertex term `Σ_k Tr(K_{[1:k]}⁻¹ dK_{[1:k]} ∧ J_k⁻¹ dJ_k)` of a
/// counterclockwise sequence of jet-valued jumps, as a skew coefficient
/// matrix over `dim` coordinates.
pub fn sequence_two_form_at(jets: &[crate::MatrixJet], dim: usize) -> Result<MatrixQ> {
    let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    let values: Vec<MatrixQ> = jets.iter().map(|m| m.map(|e| e.value.clone())).collect();
    let mut forms = Vec::with_capacity(jets.len());
    for (m, val) in jets.iter().zip(&values) {
        let inv = val.inverse()?;
        let mut f = BTreeMap::new();
        for k in 0..dim {
            let dm: MatrixQ = m.map(|e| e.partial(k));
            if dm.is_zero() {
                continue;
            }
            f.insert(k, inv.mul(&dm)?);
        }
        forms.push(f);
    }
    vertex_sum(&values, &forms, &mut acc)?;
    let mut w: MatrixQ = Matrix::zeros(dim, dim);
    for ((i, j), c) in acc {
        w.set(j, i, -c.clone());
        w.set(i, j, c);
    }
    Ok(w)
}

/// The vertex term of a counterclockwise sequence of rational-function
/// jumps.
pub fn sequence_two_form(values: &[MatrixRF]) -> Result<TwoForm> {
    let mut acc: BTreeMap<(Var, Var), crate::Rf> = BTreeMap::new();
    let forms = values
        .iter()
        .map(symbolic_left_forms)
        .collect::<Result<Vec<_>>>()?;
    vertex_sum(values, &forms, &mut acc)?;
    let mut out = TwoForm::zero();
    for ((a, b), c) in acc {
        out.add_term(a, b, &c);
    }
    Ok(out)
}

/// The standard two-form of a jet-valued jump graph at a point, as a skew
/// coefficient matrix over `dim` coordinates.
pub fn graph_two_form_at(g: &MatrixJetGraph, dim: usize) -> Result<MatrixQ> {
    let mut w: MatrixQ = Matrix::zeros(dim, dim);
    for v in 0..g.vertex_count() {
        w = w.add(&vertex_two_form_at(g, v, dim)?)?;
    }
    Ok(w)
}

/// A jump graph whose jumps are jets.
pub type MatrixJetGraph = JumpGraph<crate::JetQ>;
