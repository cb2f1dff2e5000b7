//! Maurer–Cartan forms, the jump-graph two-form and log-canonical reduction.

use stokes_core::exactalg::{parse_rf, q, Matrix, Var};
use stokes_core::formcalc::{
    graph_two_form, maurer_cartan, poisson_from_form, sequence_two_form, to_log_canonical,
    wedge_trace, LogCanonicalForm, Side, TwoForm,
};
use stokes_core::polygon::Triangulation;
use stokes_core::stokes2::{build_sigma0, prop1_parametrization};
use stokes_core::{MatrixQ, MatrixRF, Rf};

fn rf(s: &str) -> Rf {
    parse_rf(s).unwrap()
}

fn graph_form(k: usize) -> TwoForm {
    graph_two_form(&build_sigma0(&Triangulation::fan(k).unwrap()).unwrap()).unwrap()
}

#[test]
fn maurer_cartan_of_diagonal() {
    let m: MatrixRF = Matrix::diag(vec![rf("x^2*y"), rf("x^-2*y^-1")]);
    let th = maurer_cartan(&m, Side::Left).unwrap();
    assert_eq!(
        th.component(Var::new("x")),
        Matrix::diag(vec![rf("2*x^-1"), rf("-2*x^-1")])
    );
    assert_eq!(
        th.component(Var::new("y")),
        Matrix::diag(vec![rf("y^-1"), rf("-y^-1")])
    );
}

#[test]
fn wedge_trace_is_antisymmetric() {
    let a: MatrixRF =
        Matrix::from_rows(vec![vec![rf("x"), rf("1")], vec![rf("0"), rf("x^-1")]]).unwrap();
    let b: MatrixRF =
        Matrix::from_rows(vec![vec![rf("1"), rf("0")], vec![rf("y"), rf("1")]]).unwrap();
    let ta = maurer_cartan(&a, Side::Left).unwrap();
    let tb = maurer_cartan(&b, Side::Left).unwrap();
    let ab = wedge_trace(&ta, &tb).unwrap();
    let ba = wedge_trace(&tb, &ta).unwrap();
    assert!(ab.add(&ba).is_zero());
    assert!(!ab.is_zero());
}

#[test]
fn rotation_invariance() {
    for k in 1..=3 {
        let g = build_sigma0(&Triangulation::fan(k).unwrap()).unwrap();
        let base = graph_two_form(&g).unwrap();
        for v in 0..g.vertex_count() {
            for shift in 1..g.rotation(v).len() {
                let rotated = graph_two_form(&g.rotated(v, shift)).unwrap();
                assert_eq!(rotated, base, "K = {k}, vertex {v}, shift {shift}");
            }
        }
    }
}

#[test]
fn merging_the_last_rays_leaves_the_star_form_unchanged() {
    for k in 1..=2 {
        let sd = prop1_parametrization(k).unwrap();
        let mut split: Vec<MatrixRF> = sd.s_mats.clone();
        split.push(sd.lambda_mat.clone());
        let mut merged: Vec<MatrixRF> = sd.s_mats[..sd.s_mats.len() - 1].to_vec();
        merged.push(sd.s_mats.last().unwrap().mul(&sd.lambda_mat).unwrap());
        assert_eq!(
            sequence_two_form(&split).unwrap(),
            sequence_two_form(&merged).unwrap(),
            "K = {k}"
        );
    }
}

#[test]
fn fan_form_has_entries_eight_on_the_pattern() {
    for k in 1..=4 {
        let t = Triangulation::fan(k).unwrap();
        let l = to_log_canonical(&graph_form(k), &t.vars()).unwrap();
        let n = 2 * k;
        for i in 0..n {
            for j in i + 1..n {
                let expect = if i % 2 == 0 && j % 2 == 1 { 8 } else { 0 };
                assert_eq!(*l.omega.get(i, j), q(expect, 1), "K = {k}, ({i}, {j})");
            }
        }
    }
}

#[test]
fn non_log_canonical_form_is_rejected() {
    let mut f = TwoForm::zero();
    f.add_term(Var::new("a"), Var::new("b"), &rf("1"));
    assert!(to_log_canonical(&f, &[Var::new("a"), Var::new("b")]).is_err());
}

#[test]
fn poisson_structure_inverts_the_form() {
    let omega: MatrixQ =
        Matrix::from_rows(vec![vec![q(0, 1), q(2, 1)], vec![q(-2, 1), q(0, 1)]]).unwrap();
    let l = LogCanonicalForm::new(vec![Var::new("a"), Var::new("b")], omega).unwrap();
    let p = poisson_from_form(&l).unwrap();
    assert_eq!(p.entry(0, 1), rf("1/2*a*b"));
    let json = l.to_json();
    assert_eq!(LogCanonicalForm::from_json(&json).unwrap(), l);
}
