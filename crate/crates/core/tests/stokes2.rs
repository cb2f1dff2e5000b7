//! Stokes data of triangulations, the form of Σ₀ and its verifications.

use std::collections::BTreeSet;

use stokes_core::cli::Status;
use stokes_core::exactalg::{parse_rf, q, Matrix};
use stokes_core::polygon::{reachable, Diagonal, Triangulation};
use stokes_core::stokes2::{
    build_sigma0, monodromy_check, prop1_parametrization, stokes_form, stokes_matrices,
    valid_orientations, verify_flip_mutation, verify_fn_pushforward, verify_prop_ideal, StokesData,
};
use stokes_core::{MatrixQ, Rf};

fn rf(s: &str) -> Rf {
    parse_rf(s).unwrap()
}

fn quarter(rows: [[i64; 4]; 4]) -> MatrixQ {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x, 4)).collect())
            .collect(),
    )
    .unwrap()
}

fn log_bivector(t: &Triangulation) -> MatrixQ {
    stokes_form(t)
        .unwrap()
        .log_bivector()
        .map(|e| e.as_constant().expect("constant bivector"))
}

fn quiver_quarter(t: &Triangulation) -> MatrixQ {
    let b = t.quiver();
    let n = b.len();
    Matrix::from_fn(n, n, |i, j| q(b.entry(i, j), 4))
}

fn octagon(diagonals: &[(usize, usize)]) -> Triangulation {
    let ds = diagonals
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Diagonal {
            a,
            b,
            index: i + 2,
            tail: a,
        })
        .collect();
    Triangulation::new(3, 0, ds).unwrap()
}

#[test]
fn fan_matches_closed_form() {
    for k in 1..=3 {
        let sd = stokes_matrices(&Triangulation::fan(k).unwrap()).unwrap();
        let cf = prop1_parametrization(k).unwrap();
        for (j, (a, b)) in sd.params().iter().zip(cf.params()).enumerate() {
            assert_eq!(*a, b, "K = {k}, parameter {}", j + 1);
        }
    }
}

#[test]
fn closed_form_examples() {
    let k1 = prop1_parametrization(1).unwrap();
    assert_eq!(k1.s[0], rf("-y1^-2"));
    assert_eq!(k1.s[1], rf("(1 + y2^2)*y1^2*y2^-2"));
    assert_eq!(k1.s[2], rf("-y1^-2*y2^2"));
    let k2 = prop1_parametrization(2).unwrap();
    assert_eq!(k2.lambda, rf("y2^2*y4^2"));
    assert_eq!(k2.s[4], rf("-y1^-2*y2^2*y3^-2*y4^2"));
    assert_eq!(
        k2.s[5],
        rf("y1^2*(1 + y2^2*(1 + y3^2*(1 + y4^2)))*y2^-4*y4^-4")
    );
    assert_ne!(k2.s[5], rf("y1^2*(1 + y2^2*(1 + y4^2))*y2^-4*y4^-4"));
    assert_eq!(
        prop1_parametrization(3).unwrap().lambda,
        rf("-y2^2*y4^2*y6^2")
    );
}

#[test]
fn stokes_matrices_alternate() {
    for k in 1..=3 {
        let sd = stokes_matrices(&Triangulation::fan(k).unwrap()).unwrap();
        for (j, m) in sd.s_mats.iter().enumerate() {
            if j % 2 == 0 {
                assert!(m.is_upper_unitriangular());
            } else {
                assert!(m.is_lower_unitriangular());
            }
        }
    }
}

#[test]
fn monodromy_of_closed_form() {
    for k in 1..=4 {
        assert!(
            monodromy_check(&prop1_parametrization(k).unwrap()),
            "K = {k}"
        );
    }
}

#[test]
fn perturbed_monodromy_fails() {
    let sd = prop1_parametrization(2).unwrap();
    let mut s = sd.s.clone();
    s[0] = s[0].add(&Rf::one());
    let bad = StokesData::from_params(2, s, sd.lambda.clone()).unwrap();
    assert!(!monodromy_check(&bad));
}

#[test]
fn trace_on_constraint_is_two() {
    let sd = prop1_parametrization(2).unwrap();
    assert_eq!(sd.monodromy().unwrap().trace().unwrap(), Rf::int(2));
}

#[test]
fn centers_close_and_vertices_close() {
    let t = Triangulation::fan(2).unwrap();
    let g = build_sigma0(&t).unwrap();
    assert_eq!(g.vertex_count(), 6 + 4);
    for v in 0..g.vertex_count() {
        let p = Matrix::product(g.vertex_jumps(v).unwrap().iter()).unwrap();
        assert!(p.is_identity(), "vertex {v}");
    }
}

#[test]
fn fan_form_is_quarter_tridiagonal() {
    for k in 1..=4 {
        let f = stokes_form(&Triangulation::fan(k).unwrap()).unwrap();
        let n = 2 * k;
        let w = &f.w.omega;
        for i in 0..n {
            for j in 0..n {
                let expect = if i % 2 == 0 && j % 2 == 1 && j > i {
                    4
                } else if j % 2 == 0 && i % 2 == 1 && i > j {
                    -4
                } else {
                    0
                };
                assert_eq!(*w.get(i, j), q(expect, 1), "K = {k}, ({i}, {j})");
            }
        }
        let p = log_bivector(&Triangulation::fan(k).unwrap());
        let tri = Matrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                q(1, 4)
            } else if i == j + 1 {
                q(-1, 4)
            } else {
                q(0, 1)
            }
        });
        assert_eq!(p, tri, "K = {k}");
    }
}

#[test]
fn hexagon_bivectors() {
    let t1 = Triangulation::fan(2).unwrap();
    let expected = [
        (
            (6, 2),
            [[0, -1, 0, 0], [1, 0, -1, 0], [0, 1, 0, 1], [0, 0, -1, 0]],
        ),
        (
            (6, 3),
            [[0, 1, 0, 0], [-1, 0, -1, 1], [0, 1, 0, -1], [0, -1, 1, 0]],
        ),
        (
            (6, 4),
            [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, -1], [0, 0, 1, 0]],
        ),
    ];
    assert_eq!(
        log_bivector(&t1),
        quarter([[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, 0]])
    );
    for ((a, b), m) in expected {
        let t = t1.flip(a, b).unwrap();
        assert_eq!(log_bivector(&t), quarter(m), "flip ({a}, {b})");
        assert_eq!(log_bivector(&t), quiver_quarter(&t));
    }
}

#[test]
fn bivector_is_quarter_quiver_near_fan() {
    for k in 2..=3 {
        let depth = if k == 2 { 3 } else { 2 };
        for (t, path) in reachable(&Triangulation::fan(k).unwrap(), depth) {
            assert!(monodromy_check(&stokes_matrices(&t).unwrap()));
            assert_eq!(
                log_bivector(&t),
                quiver_quarter(&t),
                "K = {k}, path {path:?}"
            );
        }
    }
}

#[test]
fn every_orientation_is_valid() {
    let t = Triangulation::fan(2).unwrap();
    assert_eq!(valid_orientations(&t).unwrap().len(), 8);
    let s0 = stokes_matrices(&t).unwrap();
    let s1 = stokes_matrices(&t.with_reversed(3).unwrap()).unwrap();
    assert_eq!(s0.params(), s1.params());
}

fn assert_all_pass(r: &stokes_core::cli::Report) {
    for it in &r.items {
        assert_eq!(it.status, Status::Pass, "{}: {:?}", it.name, it.residual);
    }
}

#[test]
fn hexagon_flips_are_mutations() {
    let t = Triangulation::fan(2).unwrap();
    let mut cases = BTreeSet::new();
    for j in 2..=4 {
        let r = verify_flip_mutation(&t, j, 6).unwrap();
        assert_all_pass(&r);
        cases.insert(r.parameters["case"].as_u64().unwrap());
    }
    assert_eq!(cases, BTreeSet::from([1, 2]));
}

#[test]
fn case_one_relation() {
    let t = Triangulation::fan(2).unwrap();
    let r = verify_flip_mutation(&t, 4, 6).unwrap();
    let rel: Vec<String> = serde_json::from_value(r.data["relations"].clone()).unwrap();
    assert!(
        rel.contains(&format!("Y3_t1 = {}", rf("Y3*(1 + Y4)"))),
        "{rel:?}"
    );
    assert!(rel.contains(&format!("Y4_t1 = {}", rf("Y4^-1"))), "{rel:?}");
}

#[test]
fn octagon_cases_three_and_four() {
    let four = octagon(&[(1, 3), (3, 5), (5, 7), (1, 7), (3, 7)]);
    let r = verify_flip_mutation(&four, 3, 7).unwrap();
    assert_eq!(r.parameters["case"], 4);
    assert_all_pass(&r);
    let three = octagon(&[(2, 4), (4, 6), (1, 6), (1, 4), (6, 8)]);
    let r = verify_flip_mutation(&three, 1, 4).unwrap();
    assert_eq!(r.parameters["case"], 3);
    assert_all_pass(&r);
}

#[test]
fn pushforward_small() {
    for k in 1..=2 {
        assert_all_pass(&verify_fn_pushforward(k, 0, 0).unwrap());
    }
}

#[test]
fn pushforward_pointwise() {
    std::env::set_var("STOKES_MAX_K", "1");
    let r = verify_fn_pushforward(2, 5, 7).unwrap();
    std::env::remove_var("STOKES_MAX_K");
    assert_eq!(r.parameters["mode"], "pointwise");
    assert_all_pass(&r);
}

#[test]
fn ideal_identities() {
    for k in 1..=2 {
        let r = verify_prop_ideal(k).unwrap();
        assert_all_pass(&r);
        assert!(r.diagnostics.iter().all(|d| !d.holds));
    }
}
