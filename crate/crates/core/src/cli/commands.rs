//! The verification behind each subcommand, returning a [`Report`].

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Report;
use crate::error::{Error, Result};
use crate::exactalg::{q, Field, Matrix, Var};
use crate::poisson::{fn_coords, fn_structure};
use crate::polygon::Triangulation;
use crate::slncore::{a_matrix_with, triple_vars, AConvention, TripleIndex, Which};
use crate::stokes2::{
    monodromy_check, param_names, prop1_parametrization, stokes_form, stokes_matrices,
    verify_flip_mutation, verify_prop_ideal,
};
use crate::{MatrixQ, MatrixRF, Rf, Q};

/// Default number of random points for pointwise checks.
pub const DEFAULT_POINTS: usize = 20;

/// Number of random points at which the corank of the Flaschka–Newell
/// bracket is measured.
pub const CORANK_POINTS: usize = 10;

fn matrix_strings<T: Field + std::fmt::Display>(m: &Matrix<T>) -> serde_json::Value {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into()
}

fn constant_matrix(m: &MatrixRF) -> Option<MatrixQ> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).as_constant()?);
        }
    }
    Some(out)
}

fn quarter_quiver(t: &Triangulation) -> MatrixQ {
    let b = t.quiver();
    Matrix::from_fn(b.len(), b.len(), |i, j| q(b.entry(i, j), 4))
}

/// `Σ_{l≥j} dlog y_{2j−1} ∧ dlog y_{2l}` as a skew matrix over `y₁..y_{2K}`.
pub fn fan_pattern(k: usize) -> MatrixQ {
    let n = 2 * k;
    Matrix::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j % 2 == 1 && j > i {
            q(1, 1)
        } else if j % 2 == 0 && i % 2 == 1 && i > j {
            q(-1, 1)
        } else {
            q(0, 1)
        }
    })
}

/// The ¼-tridiagonal matrix with superdiagonal `+¼`.
pub fn quarter_tridiagonal(n: usize) -> MatrixQ {
    Matrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            q(1, 4)
        } else if i == j + 1 {
            q(-1, 4)
        } else {
            q(0, 1)
        }
    })
}

/// The monodromy identity for the closed-form fan parameters, and their
/// agreement with the parameters solved from the jump graph.
pub fn monodromy_report(k: usize) -> Result<Report> {
    let mut r = Report::new("monodromy");
    r.param("K", k);
    r.convention("lambda", "(-1)^K prod_j y_{2j}^2");
    let cf = prop1_parametrization(k)?;
    let f = cf.monodromy()?;
    r.check(
        "S_1 ... S_{2K+2} diag(lambda, 1/lambda) = 1",
        f.is_identity(),
        || f.to_string(),
    );
    let solved = stokes_matrices(&Triangulation::fan(k)?)?;
    r.check(
        "graph-solved data satisfy the monodromy identity",
        monodromy_check(&solved),
        || "product is not the identity".into(),
    );
    for (name, (a, b)) in param_names(k)
        .iter()
        .zip(solved.params().iter().zip(cf.params()))
    {
        let d = a.sub(&b);
        r.check(
            &format!("{name} closed form equals graph solve"),
            d.is_zero(),
            || d.to_string(),
        );
    }
    let params: BTreeMap<String, String> = param_names(k)
        .into_iter()
        .zip(cf.params().iter().map(|p| p.to_string()))
        .collect();
    r.datum("parameters", serde_json::to_value(params).expect("json"));
    Ok(r.finish())
}

/// `𝒲 = ½Ω(Σ₀(T))`, its Poisson bivector and the comparison with the quiver.
/// For the fan the pattern and tridiagonal checks are included.
pub fn form_report(t: &Triangulation, is_fan: bool) -> Result<Report> {
    let mut r = Report::new("form");
    r.param("K", t.k());
    r.param(
        "triangulation",
        serde_json::to_value(t.to_json()).expect("json"),
    );
    let form = match stokes_form(t) {
        Ok(f) => f,
        Err(e @ Error::NotLogCanonical { .. }) => {
            r.fail("1/2 Omega is log-canonical", &e.to_string());
            return Ok(r.finish());
        }
        Err(e) => return Err(e),
    };
    r.pass("1/2 Omega is log-canonical");
    let w = &form.w.omega;
    r.datum("omega", matrix_strings(w));
    let bivector = constant_matrix(&form.log_bivector());
    r.check(
        "bivector is constant in log coordinates",
        bivector.is_some(),
        || "nonconstant entry".into(),
    );
    let Some(p) = bivector else {
        return Ok(r.finish());
    };
    r.datum("bivector", matrix_strings(&p));
    let quiver = quarter_quiver(t);
    r.datum(
        "quiver",
        serde_json::to_value(t.quiver().to_json()).expect("json"),
    );
    r.check("P = 1/4 Adj(Q(T))", p == quiver, || {
        format!("{p} != {quiver}")
    });
    if is_fan {
        let pat = fan_pattern(t.k()).scale(&q(4, 1));
        let sign = if *w == pat {
            Some(1)
        } else if *w == pat.scale(&q(-1, 1)) {
            Some(-1)
        } else {
            None
        };
        r.check(
            "1/2 Omega = 4 (sum_{l>=j} dlog y_{2j-1} ^ dlog y_{2l}) up to sign",
            sign.is_some(),
            || w.to_string(),
        );
        if let Some(s) = sign {
            r.datum("global_sign", s);
        }
        let tri = quarter_tridiagonal(2 * t.k());
        r.check("P is 1/4-tridiagonal", p == tri, || p.to_string());
    }
    Ok(r.finish())
}

/// Flips the diagonal carrying `y_index` and checks the mutation relations,
/// with the bivector of the flipped triangulation.
pub fn flip_report(t: &Triangulation, index: usize) -> Result<Report> {
    let d = t.diagonal_by_index(index)?.clone();
    let mut r = verify_flip_mutation(t, d.a, d.b)?;
    let t2 = t.flip(d.a, d.b)?;
    let f = form_report(&t2, false)?;
    r.param("index", index);
    if let Some(b) = f.data.get("bivector") {
        r.datum("flipped_bivector", b.clone());
    }
    if let Some(qv) = f.data.get("quiver") {
        r.datum("flipped_quiver", qv.clone());
    }
    r.absorb("flipped: ", f);
    Ok(r.finish())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(1..=12);
    let d: i64 = rng.gen_range(1..=9);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    q(s * n, d)
}

/// Jacobi identity on all coordinate triples, the ideal identities, the
/// Casimir `Tr F` and the corank of the Flaschka–Newell bracket.
pub fn ideal_check_report(k: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("ideal-check");
    r.param("K", k).param("seed", seed);
    let p = fn_structure(k)?;
    let coords = fn_coords(k);
    let fs: Vec<Rf> = coords.iter().map(|v| Rf::var(*v)).collect();
    let mut bad = Vec::new();
    let mut triples = 0usize;
    for a in 0..fs.len() {
        for b in a + 1..fs.len() {
            for c in b + 1..fs.len() {
                triples += 1;
                if !p.jacobiator(&fs[a], &fs[b], &fs[c])?.is_zero() {
                    bad.push(format!("({}, {}, {})", coords[a], coords[b], coords[c]));
                }
            }
        }
    }
    r.datum("jacobi_triples", triples);
    r.check(
        "Jacobi identity on all coordinate triples",
        bad.is_empty(),
        || bad.join(", "),
    );
    r.absorb("", verify_prop_ideal(k)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coranks = Vec::new();
    for _ in 0..CORANK_POINTS {
        let pt: HashMap<Var, Q> = coords
            .iter()
            .map(|v| (*v, random_rational(&mut rng)))
            .collect();
        coranks.push(p.dim() - p.rank_at(&pt)?);
    }
    r.datum("coranks", coranks.clone());
    r.check(
        &format!("corank 1 at {CORANK_POINTS} random points"),
        coranks.iter().all(|&c| c == 1),
        || format!("{coranks:?}"),
    );
    Ok(r.finish())
}

/// A seeded random sequence of flips from the fan, checking the mutation
/// relations and `P = ¼·Adj(Q)` after every step.
pub fn mutation_walk_report(k: usize, steps: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("mutation-walk");
    r.param("K", k).param("steps", steps).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Triangulation::fan(k)?;
    let mut path = Vec::new();
    for step in 1..=steps {
        let ds = t.diagonals();
        let d = ds[rng.gen_range(0..ds.len())].clone();
        path.push(d.index);
        let fr = verify_flip_mutation(&t, d.a, d.b)?;
        let case = fr.parameters.get("case").cloned().unwrap_or_default();
        r.absorb(&format!("step {step} (y{}, case {case}): ", d.index), fr);
        t = t.flip(d.a, d.b)?;
    }
    let fr = form_report(&t, false)?;
    r.absorb("final: ", fr);
    r.param("path", path);
    r.datum(
        "final_triangulation",
        serde_json::to_value(t.to_json()).expect("json"),
    );
    Ok(r.finish())
}

/// `A₁A₂A₃ = 1` for the triangle matrices of `SL_n`.
pub fn sln_triple_report(n: usize) -> Result<Report> {
    let mut r = Report::new("sln-triple");
    r.param("n", n);
    r.convention(
        "N_k",
        "factors x_{k, i-k+1, n-i-1}^{-h_{i+1}} F_i, closed with the plain antidiagonal P",
    );
    let x: BTreeMap<TripleIndex, Rf> = triple_vars(n, "x")
        .into_iter()
        .map(|(t, v)| (t, Rf::var(v)))
        .collect();
    let build = |conv: AConvention| -> Result<Vec<MatrixRF>> {
        [Which::A1, Which::A2, Which::A3]
            .iter()
            .map(|w| a_matrix_with(n, *w, &x, conv))
            .collect()
    };
    let ms = build(AConvention::WORKING)?;
    for (i, m) in ms.iter().enumerate() {
        let det = m.det()?;
        let unit = det.is_one() || det.neg().is_one();
        r.check(&format!("det A{} = +-1", i + 1), unit, || det.to_string());
    }
    let prod = Matrix::product(ms.iter())?;
    r.check("A1 A2 A3 = 1", prod.is_identity(), || prod.to_string());
    let printed = Matrix::product(build(AConvention::PRINTED)?.iter())?;
    r.diagnostic(
        "A1 A2 A3 = 1 with the formula as typeset",
        printed.is_identity(),
        None,
    );
    r.datum("A1", matrix_strings(&ms[0]));
    Ok(r.finish())
}

/// Validates an imported triangulation and reports its combinatorics.
pub fn triangulation_report(t: &Triangulation) -> Result<Report> {
    let mut r = Report::new("triangulation");
    r.param("K", t.k());
    r.pass("valid triangulation");
    let back = Triangulation::from_json(&t.to_json())?;
    r.check("JSON round trip", back == *t, || {
        "round trip changed the triangulation".into()
    });
    r.datum(
        "triangulation",
        serde_json::to_value(t.to_json()).expect("json"),
    );
    r.datum(
        "triangles",
        t.triangles().iter().map(|x| x.to_vec()).collect::<Vec<_>>(),
    );
    r.datum(
        "quiver",
        serde_json::to_value(t.quiver().to_json()).expect("json"),
    );
    let mut cases = BTreeMap::new();
    for d in t.diagonals() {
        let c = t.classify_flip(d.a, d.b)?;
        cases.insert(format!("y{}", d.index), c.case);
    }
    r.datum("flip_cases", serde_json::to_value(cases).expect("json"));
    let sd = stokes_matrices(t)?;
    r.check(
        "Stokes data satisfy the monodromy identity",
        monodromy_check(&sd),
        || "product is not the identity".into(),
    );
    Ok(r.finish())
}
