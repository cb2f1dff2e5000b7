//! The two-form of Σ₀ and the verifications built on the Stokes data.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sigma0::{build_sigma0, param_names, stokes_matrices, StokesData};
use super::sl2::{lambda_matrix, lower, sigma3, sigma_minus, sigma_plus, upper};
use crate::cli::Report;
use crate::cluster::{conjugated_y_seed_mutation, y_seed_mutation, Seed};
use crate::error::Result;
use crate::exactalg::{Matrix, Monomial, Polynomial, Var};
use crate::formcalc::{graph_two_form, poisson_from_form, to_log_canonical, LogCanonicalForm};
use crate::poisson::{fn_coords, fn_structure, PoissonStructure};
use crate::polygon::Triangulation;
use crate::{MatrixRF, Rf, Q};

/// Default bound on `K` for symbolic pushforward checks.
pub const STOKES_MAX_K: usize = 3;

/// Symbolic bound on `K`, overridable by the `STOKES_MAX_K` environment
/// variable.
pub fn symbolic_bound() -> usize {
    std::env::var("STOKES_MAX_K")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(STOKES_MAX_K)
}

/// The form `𝒲 = ½Ω(Σ₀)` of a triangulation and its Poisson bivector.
#[derive(Clone, Debug)]
pub struct StokesForm {
    pub w: LogCanonicalForm,
    pub p: PoissonStructure,
}

impl StokesForm {
    /// The constant matrix of the bivector in log coordinates.
    pub fn log_bivector(&self) -> MatrixRF {
        let n = self.p.dim();
        let vars = self.p.coords();
        Matrix::from_fn(n, n, |i, j| {
            let e = self.p.entry(i, j);
            let m = Rf::var(vars[i]).mul(&Rf::var(vars[j]));
            e.div(&m).expect("nonzero monomial")
        })
    }
}

/// `𝒲 = ½·Ω(Σ₀(T))` in log-canonical form and `P = 𝒲^{−t}`.
pub fn stokes_form(t: &Triangulation) -> Result<StokesForm> {
    let g = build_sigma0(t)?;
    let omega = graph_two_form(&g)?;
    let l = to_log_canonical(&omega, &t.vars())?;
    let w = l.scale(&Q::new(1.into(), 2.into()));
    let p = poisson_from_form(&w)?;
    Ok(StokesForm { w, p })
}

fn random_point(rng: &mut ChaCha8Rng, vars: &[Var]) -> HashMap<Var, Q> {
    vars.iter()
        .map(|v| {
            let n: i64 = rng.gen_range(1..=12);
            let d: i64 = rng.gen_range(1..=9);
            (*v, Q::new(n.into(), d.into()))
        })
        .collect()
}

fn pair_name(names: &[String], i: usize, j: usize) -> String {
    format!("{{{}, {}}}", names[i], names[j])
}

/// Checks that the Stokes parameters of the fan map the bracket of
/// `𝒲_K` onto the Flaschka–Newell bracket. Symbolic up to the bound from
/// [`symbolic_bound`], pointwise at `points` seeded random points beyond.
pub fn verify_fn_pushforward(k: usize, points: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("fn-check");
    r.param("K", k);
    let t = Triangulation::fan(k)?;
    let sd = stokes_matrices(&t)?;
    let form = stokes_form(&t)?;
    let fns = fn_structure(k)?;
    let coords = fn_coords(k);
    let params = sd.params();
    let names = param_names(k);
    let subst: HashMap<Var, Rf> = coords.iter().cloned().zip(params.iter().cloned()).collect();
    let symbolic = k <= symbolic_bound();
    r.param("mode", if symbolic { "symbolic" } else { "pointwise" });
    if symbolic {
        let grads: Vec<Vec<Rf>> = params
            .iter()
            .map(|f| form.p.gradient(f))
            .collect::<Result<_>>()?;
        for i in 0..params.len() {
            for j in i..params.len() {
                let lhs = form.p.bracket_gradients(&grads[i], &grads[j]);
                let rhs = fns.entry(i, j).substitute(&subst)?;
                let diff = lhs.sub(&rhs);
                r.check(&pair_name(&names, i, j), diff.is_zero(), || {
                    diff.to_string()
                });
            }
        }
    } else {
        r.param("points", points).param("seed", seed);
        let vars = t.vars();
        let grads: Vec<Vec<Rf>> = params
            .iter()
            .map(|f| vars.iter().map(|v| f.differentiate(*v)).collect())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: Vec<Option<String>> = vec![None; params.len() * params.len()];
        for _ in 0..points {
            let pt = random_point(&mut rng, &vars);
            let pi = form.p.matrix_at(&pt)?;
            let g: Vec<Vec<Q>> = grads
                .iter()
                .map(|row| row.iter().map(|e| e.eval_at(&pt)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let at: HashMap<Var, Q> = coords
                .iter()
                .zip(&params)
                .map(|(c, f)| Ok((*c, f.eval_at(&pt)?)))
                .collect::<Result<_>>()?;
            for i in 0..params.len() {
                for j in i..params.len() {
                    let mut lhs = Q::from_integer(0.into());
                    for a in 0..vars.len() {
                        for b in 0..vars.len() {
                            lhs += pi.get(a, b).clone() * g[i][a].clone() * g[j][b].clone();
                        }
                    }
                    let rhs = fns.entry(i, j).eval_at(&at)?;
                    if lhs != rhs && worst[i * params.len() + j].is_none() {
                        worst[i * params.len() + j] = Some(format!("{lhs} != {rhs}"));
                    }
                }
            }
        }
        for i in 0..params.len() {
            for j in i..params.len() {
                match &worst[i * params.len() + j] {
                    None => r.pass(&pair_name(&names, i, j)),
                    Some(m) => r.fail(&pair_name(&names, i, j), m),
                }
            }
        }
    }
    Ok(r.finish())
}

fn capital(v: Var) -> Var {
    let name = v.name();
    Var::new(&format!("Y{}", &name[1..]))
}

/// Rewrites `f`, even in each of `vars`, in the squares `Y = y²`.
fn in_squares(f: &Rf, vars: &[Var]) -> Option<Rf> {
    let halve = |p: &Polynomial<Q>| -> Option<Polynomial<Q>> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut pairs = Vec::new();
            for &(v, e) in m.pairs() {
                if vars.contains(&v) {
                    if e % 2 != 0 {
                        return None;
                    }
                    pairs.push((capital(v), e / 2));
                } else {
                    pairs.push((v, e));
                }
            }
            terms.push((Monomial::from_pairs(pairs), c.clone()));
        }
        Some(Polynomial::from_terms(terms))
    };
    let mut out = Rf::from_poly(halve(f.numerator())?);
    for (d, e) in f.denominator_factors() {
        let h = Rf::from_poly(halve(d)?);
        out = out.div(&h.pow(*e as i32).ok()?).ok()?;
    }
    Some(out)
}

/// True when every parameter is even in every variable of `vars`.
pub fn is_even_in(sd: &StokesData, vars: &[Var]) -> bool {
    sd.params()
        .iter()
        .chain(sd.s_mats.iter().flat_map(|m| m.entries()))
        .all(|f| in_squares(f, vars).is_some())
}

/// Verifies that flipping the diagonal `(a, b)` of `t` acts on the squared
/// Stokes variables as the Y-seed mutation of the quiver of `t` at that
/// diagonal, taken in the frame conjugated at the distinguished edge.
pub fn verify_flip_mutation(t: &Triangulation, a: usize, b: usize) -> Result<Report> {
    let mut r = Report::new("flip");
    let case = t.classify_flip(a, b)?;
    let index = t.diagonal(a, b)?.index;
    let t2 = t.flip(a, b)?;
    r.param("K", t.k())
        .param(
            "triangulation",
            serde_json::to_value(t.to_json()).expect("json"),
        )
        .param("diagonal", vec![a, b])
        .param("case", case.case)
        .param(
            "new_diagonal",
            t2.diagonal_by_index(index)
                .map(|d| vec![d.a, d.b])
                .unwrap_or_default(),
        );
    let sd = stokes_matrices(t)?;
    let sd2 = stokes_matrices(&t2)?;
    let (vars, vars2) = (t.vars(), t2.vars());
    let even = is_even_in(&sd, &vars) && is_even_in(&sd2, &vars2);
    r.check("stokes data even in every variable", even, || {
        "odd exponent present".into()
    });
    if !even {
        return Ok(r.finish());
    }
    let big: Vec<Var> = vars.iter().map(|v| capital(*v)).collect();
    let big2: Vec<Var> = vars2.iter().map(|v| capital(*v)).collect();
    let q = t.quiver().relabeled(big.clone())?;
    let seed = Seed::initial(q.clone());
    let mutated = conjugated_y_seed_mutation(&seed, index - 1, 0)?;
    let sigma: HashMap<Var, Rf> = big2
        .iter()
        .cloned()
        .zip(mutated.y.iter().cloned())
        .collect();
    let relations: Vec<String> = big2
        .iter()
        .zip(&mutated.y)
        .map(|(v, e)| format!("{} = {e}", v.name()))
        .collect();
    r.datum("relations", relations);
    let names = param_names(t.k());
    let compare = |seed_y: &HashMap<Var, Rf>| -> Result<Vec<(String, Rf)>> {
        let mut out = Vec::new();
        for ((name, f), f2) in names.iter().zip(sd.params()).zip(sd2.params()) {
            let lhs = in_squares(&f2, &vars2).expect("even").substitute(seed_y)?;
            let rhs = in_squares(&f, &vars).expect("even");
            out.push((name.clone(), lhs.sub(&rhs)));
        }
        Ok(out)
    };
    for (name, diff) in compare(&sigma)? {
        r.check(name.as_str(), diff.is_zero(), || diff.to_string());
    }
    let q2 = t2.quiver();
    r.check("quiver", q2.matrix() == mutated.quiver.matrix(), || {
        format!("{:?} != {:?}", q2.matrix(), mutated.quiver.matrix())
    });
    let plain = y_seed_mutation(&seed, index - 1)?;
    let plain_sigma: HashMap<Var, Rf> = big2.iter().cloned().zip(plain.y.iter().cloned()).collect();
    let plain_ok = compare(&plain_sigma)?.iter().all(|(_, d)| d.is_zero());
    r.diagnostic(
        "unconjugated Y-seed mutation reproduces the flip",
        plain_ok,
        None,
    );
    r.convention(
        "mutation",
        "Y-seed mutation of -tau_1(B) with the y1 slot inverted before and after",
    );
    Ok(r.finish())
}

fn entrywise(r: &mut Report, name: &str, lhs: &MatrixRF, rhs: &MatrixRF) {
    let diff = lhs.sub(rhs).expect("2x2");
    r.check(name, diff.is_zero(), || diff.to_string());
}

fn holds(lhs: &MatrixRF, rhs: &MatrixRF) -> bool {
    lhs.sub(rhs).map(|d| d.is_zero()).unwrap_or(false)
}

/// The monodromy `F = U(s₁)L(s₂)⋯L(s_{2K+2})·diag(λ, λ⁻¹)` over the
/// Flaschka–Newell coordinates.
pub fn monodromy_matrix(k: usize) -> Result<MatrixRF> {
    let coords = fn_coords(k);
    let n = 2 * k + 2;
    let mut f = Matrix::identity(2);
    for j in 0..n {
        let s = Rf::var(coords[j]);
        f = f.mul(&if j % 2 == 0 { upper(&s) } else { lower(&s) })?;
    }
    f.mul(&lambda_matrix(&Rf::var(coords[n]))?)
}

/// Checks the bracket relations of the Stokes parameters with the
/// monodromy matrix and that `Tr F` is a Casimir.
pub fn verify_prop_ideal(k: usize) -> Result<Report> {
    let mut r = Report::new("ideal-check");
    r.param("K", k);
    let p = fn_structure(k)?;
    let coords = fn_coords(k);
    let n = 2 * k + 2;
    let f = monodromy_matrix(k)?;
    let s3: MatrixRF = sigma3();
    let sp: MatrixRF = sigma_plus();
    let sm: MatrixRF = sigma_minus();
    let id: MatrixRF = Matrix::identity(2);
    let half = Rf::constant(Q::new(1.into(), 2.into()));
    let lam = Rf::var(coords[n]);
    let bracket_with = |g: &Rf| -> Result<MatrixRF> { f.try_map(|e| p.bracket(g, e)) };
    let comm = |a: &MatrixRF, b: &MatrixRF| a.commutator(b).expect("2x2");
    let lam_inv2 = lam.pow(-2)?;

    let rhs_s1 = |f: &MatrixRF, s1: &Rf| {
        comm(&s3, f)
            .scale(&s1.mul(&half))
            .add(&comm(&sm, f))
            .expect("2x2")
    };
    let rhs_sn = |f: &MatrixRF, sn: &Rf| {
        comm(f, &s3)
            .scale(&sn.mul(&half))
            .add(&comm(&sp, f).scale(&lam_inv2))
            .expect("2x2")
    };
    let sign = |l: usize| {
        if l.is_multiple_of(2) {
            Rf::one()
        } else {
            Rf::int(-1)
        }
    };
    let rhs_sl = |f: &MatrixRF, sl: &Rf, l: usize| comm(f, &s3).scale(&sign(l).mul(&sl.mul(&half)));
    let rhs_lam = |f: &MatrixRF| comm(&s3, f).scale(&lam.mul(&half));

    let s1 = Rf::var(coords[0]);
    let sn = Rf::var(coords[n - 1]);
    entrywise(&mut r, "{s1, F}", &bracket_with(&s1)?, &rhs_s1(&f, &s1));
    entrywise(
        &mut r,
        &format!("{{s{n}, F}}"),
        &bracket_with(&sn)?,
        &rhs_sn(&f, &sn),
    );
    for l in 2..n {
        let sl = Rf::var(coords[l - 1]);
        let lhs = bracket_with(&sl)?;
        entrywise(&mut r, &format!("{{s{l}, F}}"), &lhs, &rhs_sl(&f, &sl, l));
        let printed = comm(&f, &s3).scale(&sign(l));
        r.diagnostic(
            &format!("{{s{l}, F}} = (-1)^{l} [F, sigma3] without the factor s{l}/2"),
            holds(&lhs, &printed),
            None,
        );
    }
    let lhs_lam = bracket_with(&lam)?;
    entrywise(&mut r, "{lambda, F}", &lhs_lam, &rhs_lam(&f));
    r.diagnostic(
        "{lambda, F} = 1/2 [sigma3, F] without the factor lambda",
        holds(&lhs_lam, &comm(&s3, &f).scale(&half)),
        None,
    );
    let tr = f.trace()?;
    r.check("Tr F is a Casimir", p.is_casimir(&tr)?, || {
        "nonzero bracket".into()
    });
    for (name, m) in [
        ("{s1, F} vanishes at F = 1", rhs_s1(&id, &s1)),
        ("{lambda, F} vanishes at F = 1", rhs_lam(&id)),
    ] {
        r.check(name, m.is_zero(), || m.to_string());
    }
    for l in 2..n {
        let sl = Rf::var(coords[l - 1]);
        let m = rhs_sl(&id, &sl, l);
        r.check(
            &format!("{{s{l}, F}} vanishes at F = 1"),
            m.is_zero(),
            || m.to_string(),
        );
    }
    let m = rhs_sn(&id, &sn);
    r.check(
        &format!("{{s{n}, F}} vanishes at F = 1"),
        m.is_zero(),
        || m.to_string(),
    );
    Ok(r.finish())
}
