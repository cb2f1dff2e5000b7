//! Quivers, quiver mutation, Y-seed mutation and type-A recognition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Var;
use crate::Rf;

/// A quiver without loops or 2-cycles, stored as its skew adjacency matrix:
/// `b[k][l]` is the number of arrows `k → l` minus the number `l → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    labels: Vec<Var>,
    b: Vec<Vec<i64>>,
}

/// JSON form of a [`Quiver`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

impl Quiver {
    /// Builds a quiver from a skew integer matrix.
    pub fn new(labels: Vec<Var>, b: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("adjacency matrix size".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(Error::InvalidArgument(
                        "adjacency matrix is not skew".into(),
                    ));
                }
            }
        }
        Ok(Quiver { labels, b })
    }

    pub fn labels(&self) -> &[Var] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The adjacency matrix.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn entry(&self, k: usize, l: usize) -> i64 {
        self.b[k][l]
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k >= self.len() {
            Err(Error::BadVertex(k))
        } else {
            Ok(())
        }
    }

    /// The quiver with every arrow at `v` reversed.
    pub fn reverse_at(&self, v: usize) -> Result<Quiver> {
        self.check_vertex(v)?;
        let mut b = self.b.clone();
        for k in 0..self.len() {
            b[v][k] = -b[v][k];
            b[k][v] = -b[k][v];
        }
        Ok(Quiver {
            labels: self.labels.clone(),
            b,
        })
    }

    /// The opposite quiver.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            labels: self.labels.clone(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// The same arrows on new labels.
    pub fn relabeled(&self, labels: Vec<Var>) -> Result<Quiver> {
        Quiver::new(labels, self.b.clone())
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            labels: self.labels.iter().map(|v| v.name().to_string()).collect(),
            matrix: self.b.clone(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Quiver> {
        Quiver::new(
            j.labels.iter().map(|s| Var::new(s)).collect(),
            j.matrix.clone(),
        )
    }
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Quiver mutation at vertex `k`:
/// `μ_k(B)_{st} = −B_{st}` if `k ∈ {s, t}`, otherwise
/// `B_{st} + sign(B_{sk}) [B_{sk} B_{kt}]₊`.
pub fn quiver_mutation(q: &Quiver, k: usize) -> Result<Quiver> {
    q.check_vertex(k)?;
    let n = q.len();
    let b = &q.b;
    let mut out = vec![vec![0i64; n]; n];
    for s in 0..n {
        for t in 0..n {
            out[s][t] = if s == k || t == k {
                -b[s][t]
            } else {
                b[s][t] + b[s][k].signum() * pos(b[s][k] * b[k][t])
            };
        }
    }
    Ok(Quiver {
        labels: q.labels.clone(),
        b: out,
    })
}

/// A quiver together with a y-variable at each vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub quiver: Quiver,
    pub y: Vec<Rf>,
}

impl Seed {
    pub fn new(quiver: Quiver, y: Vec<Rf>) -> Result<Self> {
        if y.len() != quiver.len() {
            return Err(Error::ShapeMismatch("one y-variable per vertex".into()));
        }
        if y.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidArgument("y-variables must be nonzero".into()));
        }
        Ok(Seed { quiver, y })
    }

    /// The seed whose y-variables are the vertex labels.
    pub fn initial(quiver: Quiver) -> Seed {
        let y = quiver.labels.iter().map(|v| Rf::var(*v)).collect();
        Seed { quiver, y }
    }
}

/// Y-seed mutation at `k`:
/// `y_k ↦ y_k⁻¹` and `y_i ↦ y_i y_k^{[B_ik]₊} (1 + y_k)^{−B_ik}` for `i ≠ k`.
pub fn y_seed_mutation(s: &Seed, k: usize) -> Result<Seed> {
    s.quiver.check_vertex(k)?;
    let yk = &s.y[k];
    let one_plus = Rf::one().add(yk);
    let mut y = Vec::with_capacity(s.y.len());
    for (i, yi) in s.y.iter().enumerate() {
        if i == k {
            y.push(yk.inv()?);
            continue;
        }
        let bik = s.quiver.b[i][k];
        if bik == 0 {
            y.push(yi.clone());
            continue;
        }
        let v = yi
            .mul(&yk.pow(pos(bik) as i32)?)
            .mul(&one_plus.pow(-bik as i32)?);
        y.push(v);
    }
    Ok(Seed {
        quiver: quiver_mutation(&s.quiver, k)?,
        y,
    })
}

/// Mutation at `k` conjugated by arrow reversal at `v`: `τ_v μ_k τ_v`.
pub fn conjugated_quiver_mutation(q: &Quiver, k: usize, v: usize) -> Result<Quiver> {
    quiver_mutation(&q.reverse_at(v)?, k)?.reverse_at(v)
}

/// Y-seed mutation in the conjugated frame: the variable at `v` is
/// inverted, the seed quiver is `−τ_v(B)`, the ordinary Y-seed mutation is
/// applied at `k`, and the variable at `v` is inverted back. The returned
/// quiver is `τ_v μ_k(τ_v B)`.
pub fn conjugated_y_seed_mutation(s: &Seed, k: usize, v: usize) -> Result<Seed> {
    s.quiver.check_vertex(k)?;
    s.quiver.check_vertex(v)?;
    let mut y = s.y.clone();
    y[v] = y[v].inv()?;
    let hat = Seed {
        quiver: s.quiver.reverse_at(v)?.opposite(),
        y,
    };
    let mut m = y_seed_mutation(&hat, k)?;
    m.y[v] = m.y[v].inv()?;
    Ok(Seed {
        quiver: conjugated_quiver_mutation(&s.quiver, k, v)?,
        y: m.y,
    })
}

/// The path quiver `A_n` on the given labels; `forward[i]` orients the edge
/// between vertices `i` and `i+1` as `i → i+1`.
pub fn dynkin_a(labels: Vec<Var>, forward: &[bool]) -> Result<Quiver> {
    let n = labels.len();
    if n == 0 || forward.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "A_{n} needs {} orientations, got {}",
            n.saturating_sub(1),
            forward.len()
        )));
    }
    let mut b = vec![vec![0i64; n]; n];
    for (i, &f) in forward.iter().enumerate() {
        let s = if f { 1 } else { -1 };
        b[i][i + 1] = s;
        b[i + 1][i] = -s;
    }
    Quiver::new(labels, b)
}

/// Default labels `y1..yn`.
pub fn default_labels(n: usize) -> Vec<Var> {
    (1..=n).map(|i| Var::new(&format!("y{i}"))).collect()
}

/// A recognized type-A quiver: the vertices along the path and the
/// orientation of each path edge (`true` when it points along the path).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinA {
    pub path: Vec<usize>,
    pub forward: Vec<bool>,
}

/// Recognizes quivers whose underlying graph is a simple path with simple
/// arrows. The path starts at its smaller endpoint.
pub fn is_dynkin_a(q: &Quiver) -> Option<DynkinA> {
    let n = q.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(DynkinA {
            path: vec![0],
            forward: vec![],
        });
    }
    let b = &q.b;
    if b.iter().flatten().any(|x| x.abs() > 1) {
        return None;
    }
    let deg: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| b[i][j] != 0).count())
        .collect();
    let edges: usize = deg.iter().sum::<usize>() / 2;
    if edges != n - 1 || deg.iter().any(|&d| d == 0 || d > 2) {
        return None;
    }
    let start = (0..n).find(|&i| deg[i] == 1)?;
    let mut path = vec![start];
    let mut forward = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = start;
    while path.len() < n {
        let next = (0..n).find(|&j| j != prev && b[cur][j] != 0)?;
        forward.push(b[cur][next] > 0);
        prev = cur;
        cur = next;
        if path.contains(&cur) {
            return None;
        }
        path.push(cur);
    }
    Some(DynkinA { path, forward })
}
