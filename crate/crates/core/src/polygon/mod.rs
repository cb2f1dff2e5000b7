//! Triangulations of the `2(K+1)`-gon, diagonal flips, flip classification,
//! the quiver of a triangulation and the x-variable dictionary.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cluster::Quiver;
use crate::error::{Error, Result};
use crate::exactalg::{qi, Monomial, Var};
use crate::Rf;

/// An internal diagonal `{a, b}` (1-based, `a < b`) carrying `y_index`,
/// oriented from `tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagonal {
    pub a: usize,
    pub b: usize,
    pub index: usize,
    pub tail: usize,
}

impl Diagonal {
    /// The endpoint other than `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn head(&self) -> usize {
        self.other(self.tail)
    }
}

/// A full triangulation of the polygon with vertices `v_1..v_{2K+2}`.
///
/// The distinguished perimeter edge `v_1 → v_2` carries `y_1`; diagonals
/// carry `y_2..y_{2K}`. Every flip advances the generation counter, which
/// renames all variables (`y3` becomes `y3_t1`, then `y3_t2`, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    k: usize,
    generation: u32,
    diagonals: Vec<Diagonal>,
}

/// Which of the four flip situations a quadrilateral is in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipCase {
    /// `4 −` the number of quadrilateral sides on the perimeter.
    pub case: u8,
    /// Quadrilateral vertices in cyclic order.
    pub quadrilateral: [usize; 4],
    pub flipped: (usize, usize),
}

/// JSON form of a [`Triangulation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    #[serde(rename = "K")]
    pub k: usize,
    pub diagonals: Vec<[usize; 2]>,
    pub labels: BTreeMap<String, String>,
    pub orientations: BTreeMap<String, usize>,
    pub distinguished_edge: [usize; 2],
}

/// Name of `y_index` in generation `g`.
pub fn label_name(index: usize, generation: u32) -> String {
    if generation == 0 {
        format!("y{index}")
    } else {
        format!("y{index}_t{generation}")
    }
}

fn parse_label(s: &str) -> Option<(usize, u32)> {
    let rest = s.strip_prefix('y')?;
    match rest.split_once("_t") {
        Some((i, g)) => Some((i.parse().ok()?, g.parse().ok()?)),
        None => Some((rest.parse().ok()?, 0)),
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    if [c, d].contains(&a) || [c, d].contains(&b) {
        return false;
    }
    let inside = |x: usize| x > a && x < b;
    inside(c) != inside(d)
}

impl Triangulation {
    /// Validates and builds a triangulation.
    pub fn new(k: usize, generation: u32, mut diagonals: Vec<Diagonal>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidTriangulation("K must be positive".into()));
        }
        let n = 2 * k + 2;
        if diagonals.len() != 2 * k - 1 {
            return Err(Error::InvalidTriangulation(format!(
                "{} diagonals, expected {}",
                diagonals.len(),
                2 * k - 1
            )));
        }
        for d in diagonals.iter_mut() {
            if d.a > d.b {
                std::mem::swap(&mut d.a, &mut d.b);
            }
            let perimeter = d.b - d.a == 1 || (d.a == 1 && d.b == n);
            if d.a < 1 || d.b > n || d.a == d.b || perimeter {
                return Err(Error::InvalidTriangulation(format!(
                    "({}, {}) is not an internal diagonal",
                    d.a, d.b
                )));
            }
            if !d.touches(d.tail) {
                return Err(Error::InvalidTriangulation(format!(
                    "tail {} of ({}, {}) is not an endpoint",
                    d.tail, d.a, d.b
                )));
            }
        }
        let mut idx: Vec<usize> = diagonals.iter().map(|d| d.index).collect();
        idx.sort();
        if idx != (2..=2 * k).collect::<Vec<_>>() {
            return Err(Error::InvalidTriangulation(
                "diagonal labels must be a bijection onto y2..y2K".into(),
            ));
        }
        for i in 0..diagonals.len() {
            for j in i + 1..diagonals.len() {
                let (p, q) = (&diagonals[i], &diagonals[j]);
                if (p.a, p.b) == (q.a, q.b) || crosses((p.a, p.b), (q.a, q.b)) {
                    return Err(Error::InvalidTriangulation(format!(
                        "diagonals ({}, {}) and ({}, {}) overlap",
                        p.a, p.b, q.a, q.b
                    )));
                }
            }
        }
        diagonals.sort_by_key(|d| d.index);
        Ok(Triangulation {
            k,
            generation,
            diagonals,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of polygon vertices `2K + 2`.
    pub fn n(&self) -> usize {
        2 * self.k + 2
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    /// Diagonals sorted by label index.
    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    /// The diagonal joining `a` and `b`.
    pub fn diagonal(&self, a: usize, b: usize) -> Result<&Diagonal> {
        let (a, b) = (a.min(b), a.max(b));
        self.diagonals
            .iter()
            .find(|d| d.a == a && d.b == b)
            .ok_or(Error::NotADiagonal(a, b))
    }

    /// The diagonal carrying `y_index`.
    pub fn diagonal_by_index(&self, index: usize) -> Result<&Diagonal> {
        self.diagonals
            .iter()
            .find(|d| d.index == index)
            .ok_or_else(|| Error::InvalidArgument(format!("no diagonal carries y{index}")))
    }

    /// The variable `y_index` of this triangulation's generation.
    pub fn var(&self, index: usize) -> Var {
        Var::new(&label_name(index, self.generation))
    }

    /// `y_1..y_{2K}` of this generation.
    pub fn vars(&self) -> Vec<Var> {
        (1..=2 * self.k).map(|i| self.var(i)).collect()
    }

    /// Diagonals incident to vertex `v`.
    pub fn incident(&self, v: usize) -> Vec<&Diagonal> {
        self.diagonals.iter().filter(|d| d.touches(v)).collect()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let n = self.n();
        let gap = (u + n - v) % n;
        gap == 1 || gap == n - 1 || self.diagonal(u, v).is_ok()
    }

    /// Triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if !self.adjacent(a, b) {
                    continue;
                }
                for c in b + 1..=n {
                    if self.adjacent(a, c) && self.adjacent(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// The fan triangulation `T₀`: diagonals `(v_{2K+2}, v_j)`, `j = 2..2K`,
    /// carrying `y_j`; even `j` is oriented away from `v_{2K+2}`, odd `j`
    /// towards it.
    pub fn fan(k: usize) -> Result<Self> {
        let n = 2 * k + 2;
        let diagonals = (2..=2 * k)
            .map(|j| Diagonal {
                a: j,
                b: n,
                index: j,
                tail: if j % 2 == 0 { n } else { j },
            })
            .collect();
        Triangulation::new(k, 0, diagonals)
    }

    /// The two vertices opposite the diagonal `(a, b)`.
    fn apexes(&self, a: usize, b: usize) -> Result<[usize; 2]> {
        let n = self.n();
        let cs: Vec<usize> = (1..=n)
            .filter(|&c| c != a && c != b && self.adjacent(a, c) && self.adjacent(b, c))
            .collect();
        if cs.len() != 2 {
            return Err(Error::InvalidTriangulation(format!(
                "diagonal ({a}, {b}) borders {} triangles",
                cs.len()
            )));
        }
        Ok([cs[0], cs[1]])
    }

    /// Replaces `(a, b)` by the opposite diagonal of its quadrilateral. The
    /// new diagonal keeps the label index and is oriented from its smaller
    /// endpoint; every variable moves to the next generation.
    pub fn flip(&self, a: usize, b: usize) -> Result<Self> {
        let d = self.diagonal(a, b)?.clone();
        let [c, e] = self.apexes(d.a, d.b)?;
        let mut diagonals: Vec<Diagonal> = self
            .diagonals
            .iter()
            .filter(|x| x.index != d.index)
            .cloned()
            .collect();
        diagonals.push(Diagonal {
            a: c.min(e),
            b: c.max(e),
            index: d.index,
            tail: c.min(e),
        });
        Triangulation::new(self.k, self.generation + 1, diagonals)
    }

    /// The same triangulation with the orientation of the diagonal carrying
    /// `index` reversed.
    pub fn with_reversed(&self, index: usize) -> Result<Self> {
        let mut t = self.clone();
        let d = t
            .diagonals
            .iter_mut()
            .find(|d| d.index == index)
            .ok_or_else(|| Error::InvalidArgument(format!("no diagonal carries y{index}")))?;
        d.tail = d.other(d.tail);
        Ok(t)
    }

    /// The same triangulation with orientations from `tails` (indexed like
    /// [`Triangulation::diagonals`]).
    pub fn with_orientations(&self, tails: &[usize]) -> Result<Self> {
        let mut diagonals = self.diagonals.clone();
        if tails.len() != diagonals.len() {
            return Err(Error::InvalidArgument("one tail per diagonal".into()));
        }
        for (d, &t) in diagonals.iter_mut().zip(tails) {
            d.tail = t;
        }
        Triangulation::new(self.k, self.generation, diagonals)
    }

    /// The same diagonals in generation `g`.
    pub fn with_generation(&self, g: u32) -> Self {
        let mut t = self.clone();
        t.generation = g;
        t
    }

    /// Classifies the flip of `(a, b)` by its quadrilateral.
    pub fn classify_flip(&self, a: usize, b: usize) -> Result<FlipCase> {
        let d = self.diagonal(a, b)?;
        let [c, e] = self.apexes(d.a, d.b)?;
        let mut quad = [d.a, c, d.b, e];
        quad.sort();
        let n = self.n();
        let on_perimeter = |u: usize, v: usize| {
            let gap = (u + n - v) % n;
            gap == 1 || gap == n - 1
        };
        let sides = (0..4)
            .filter(|&i| on_perimeter(quad[i], quad[(i + 1) % 4]))
            .count();
        Ok(FlipCase {
            case: (4 - sides) as u8,
            quadrilateral: quad,
            flipped: (d.a, d.b),
        })
    }

    /// The quiver `Q(T)` on `y_1..y_{2K}`.
    ///
    /// At each polygon vertex the labelled edges (the distinguished edge
    /// `v_1 v_2` and the diagonals) are ordered counterclockwise, with the
    /// unlabelled perimeter edges as separators. Consecutive labelled edges
    /// `d_i, d_j` give an arrow `q_i → q_j`, reversed when one of them is
    /// the distinguished edge.
    pub fn quiver(&self) -> Quiver {
        let n = self.n();
        let m = 2 * self.k;
        let mut b = vec![vec![0i64; m]; m];
        let mut edges: Vec<(usize, usize, usize)> = vec![(1, 2, 1)];
        edges.extend(self.diagonals.iter().map(|d| (d.a, d.b, d.index)));
        for v in 1..=n {
            let mut inc: Vec<(usize, Option<usize>)> = edges
                .iter()
                .filter(|e| e.0 == v || e.1 == v)
                .map(|&(a, c, l)| {
                    let w = if a == v { c } else { a };
                    ((w + n - v) % n, Some(l))
                })
                .collect();
            for slot in [1, n - 1] {
                if !inc.iter().any(|t| t.0 == slot) {
                    inc.push((slot, None));
                }
            }
            inc.sort();
            for pair in inc.windows(2) {
                if let (Some(l1), Some(l2)) = (pair[0].1, pair[1].1) {
                    let sgn = if l1 == 1 || l2 == 1 { -1 } else { 1 };
                    b[l1 - 1][l2 - 1] += sgn;
                    b[l2 - 1][l1 - 1] -= sgn;
                }
            }
        }
        Quiver::new(self.vars(), b).expect("skew by construction")
    }

    /// The x-variables `x_2..x_{2K+2}` as monomials in `y`:
    /// `x_l = y_1 ∏_{2≤k≤l} ∏_{d ∋ v_k} y_d^{(−1)^{k+1}}` for `l < 2K+2`
    /// and `x_{2K+2} = y_1 ∏_{d ∋ v_1} y_d^{−1}`.
    pub fn x_variables(&self) -> BTreeMap<usize, Rf> {
        let n = self.n();
        let y1 = self.var(1);
        let mut out = BTreeMap::new();
        let mut acc: Vec<(Var, i32)> = vec![(y1, 1)];
        for l in 2..n {
            let sign = if l % 2 == 0 { -1 } else { 1 };
            for d in self.incident(l) {
                acc.push((self.var(d.index), sign));
            }
            out.insert(l, Rf::monomial(qi(1), Monomial::from_pairs(acc.clone())));
        }
        let mut last: Vec<(Var, i32)> = vec![(y1, 1)];
        for d in self.incident(1) {
            last.push((self.var(d.index), -1));
        }
        out.insert(n, Rf::monomial(qi(1), Monomial::from_pairs(last)));
        out
    }

    pub fn to_json(&self) -> TriangulationJson {
        let key = |d: &Diagonal| format!("{}-{}", d.a, d.b);
        let mut labels = BTreeMap::new();
        labels.insert("1-2".to_string(), label_name(1, self.generation));
        let mut orientations = BTreeMap::new();
        for d in &self.diagonals {
            labels.insert(key(d), label_name(d.index, self.generation));
            orientations.insert(key(d), d.tail);
        }
        TriangulationJson {
            k: self.k,
            diagonals: self.diagonals.iter().map(|d| [d.a, d.b]).collect(),
            labels,
            orientations,
            distinguished_edge: [1, 2],
        }
    }

    pub fn from_json(j: &TriangulationJson) -> Result<Self> {
        if j.distinguished_edge != [1, 2] {
            return Err(Error::InvalidTriangulation(
                "the distinguished edge must be [1, 2]".into(),
            ));
        }
        let mut generation = None;
        let mut diagonals = Vec::new();
        for &[a, b] in &j.diagonals {
            let (a, b) = (a.min(b), a.max(b));
            let key = format!("{a}-{b}");
            let label = j
                .labels
                .get(&key)
                .ok_or_else(|| Error::InvalidTriangulation(format!("no label for {key}")))?;
            let (index, g) = parse_label(label)
                .ok_or_else(|| Error::InvalidTriangulation(format!("bad label {label}")))?;
            if generation.is_some_and(|x| x != g) {
                return Err(Error::InvalidTriangulation(
                    "mixed label generations".into(),
                ));
            }
            generation = Some(g);
            let tail = *j
                .orientations
                .get(&key)
                .ok_or_else(|| Error::InvalidTriangulation(format!("no orientation for {key}")))?;
            diagonals.push(Diagonal { a, b, index, tail });
        }
        let g = generation.unwrap_or(0);
        match j.labels.get("1-2").and_then(|l| parse_label(l)) {
            Some((1, g1)) if g1 == g => {}
            _ => {
                return Err(Error::InvalidTriangulation(
                    "edge 1-2 must carry y1 of the same generation".into(),
                ))
            }
        }
        Triangulation::new(j.k, g, diagonals)
    }
}

/// Every triangulation reachable from `start` by at most `depth` flips,
/// identified by diagonal sets (labels and orientations are those of the
/// first path found, in breadth-first order).
pub fn reachable(start: &Triangulation, depth: usize) -> Vec<(Triangulation, Vec<usize>)> {
    let mut seen: HashMap<Vec<(usize, usize)>, ()> = HashMap::new();
    let shape = |t: &Triangulation| {
        let mut s: Vec<(usize, usize)> = t.diagonals.iter().map(|d| (d.a, d.b)).collect();
        s.sort();
        s
    };
    let mut frontier = vec![(start.clone(), Vec::new())];
    seen.insert(shape(start), ());
    let mut out = frontier.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (t, path) in &frontier {
            for d in t.diagonals() {
                let f = t.flip(d.a, d.b).expect("flip of a diagonal");
                if seen.insert(shape(&f), ()).is_none() {
                    let mut p = path.clone();
                    p.push(d.index);
                    next.push((f, p));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
