//! Poisson structures and the Flaschka–Newell bracket.

use std::collections::HashMap;

use proptest::prelude::*;
use stokes_core::exactalg::{parse_rf, q, Matrix, Var};
use stokes_core::poisson::{fn_coords, fn_structure, PoissonStructure};
use stokes_core::stokes2::monodromy_matrix;
use stokes_core::{Rf, Q};

fn rf(s: &str) -> Rf {
    parse_rf(s).unwrap()
}

fn vars(p: &PoissonStructure) -> Vec<Rf> {
    p.coords().iter().map(|v| Rf::var(*v)).collect()
}

#[test]
fn fn_bracket_examples() {
    let p = fn_structure(1).unwrap();
    let c = vars(&p);
    assert_eq!(p.bracket(&c[0], &c[1]).unwrap(), rf("1 + s1*s2"));
    assert_eq!(p.bracket(&c[0], &c[3]).unwrap(), rf("s1*s4 - lambda^-2"));
    assert_eq!(p.bracket(&c[1], &c[4]).unwrap(), rf("s2*lambda"));
    assert_eq!(p.bracket(&c[0], &c[2]).unwrap(), rf("-s1*s3"));
}

#[test]
fn fn_jacobi_casimir_and_corank() {
    for k in 1..=2 {
        let p = fn_structure(k).unwrap();
        let c = vars(&p);
        for a in 0..c.len() {
            for b in a + 1..c.len() {
                for d in b + 1..c.len() {
                    assert!(p.jacobiator(&c[a], &c[b], &c[d]).unwrap().is_zero());
                }
            }
        }
        let tr = monodromy_matrix(k).unwrap().trace().unwrap();
        assert!(p.is_casimir(&tr).unwrap());
        for seed in 0..10i64 {
            let pt: HashMap<Var, Q> = fn_coords(k)
                .iter()
                .enumerate()
                .map(|(i, v)| (*v, q(2 + (seed * 7 + i as i64 * 3) % 11, 1 + i as i64)))
                .collect();
            assert_eq!(p.dim() - p.rank_at(&pt).unwrap(), 1);
        }
    }
}

#[test]
fn log_canonical_structure() {
    let c = Matrix::from_rows(vec![vec![q(0, 1), q(3, 1)], vec![q(-3, 1), q(0, 1)]]).unwrap();
    let p = PoissonStructure::log_canonical(vec![Var::new("a"), Var::new("b")], &c).unwrap();
    assert_eq!(p.entry(0, 1), rf("3*a*b"));
    assert_eq!(p.entry(1, 0), rf("-3*a*b"));
    assert!(p
        .jacobiator(&rf("a"), &rf("b"), &rf("a*b"))
        .unwrap()
        .is_zero());
}

#[test]
fn json_round_trip() {
    let p = fn_structure(2).unwrap();
    assert_eq!(PoissonStructure::from_json(&p.to_json()).unwrap(), p);
}

fn small_poly() -> impl Strategy<Value = Rf> {
    (-3i64..4, -3i64..4, 0i32..3, 0i32..3, 0i32..3)
        .prop_map(|(a, b, e1, e2, e3)| rf(&format!("{a}*s1^{e1}*s2^{e2} + {b}*lambda^{e3}*s3")))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skew_symmetry_and_leibniz(f in small_poly(), g in small_poly(), h in small_poly()) {
        let p = fn_structure(1).unwrap();
        let fg = p.bracket(&f, &g).unwrap();
        prop_assert!(fg.add(&p.bracket(&g, &f).unwrap()).is_zero());
        let lhs = p.bracket(&f, &g.mul(&h)).unwrap();
        let rhs = p.bracket(&f, &g).unwrap().mul(&h).add(&g.mul(&p.bracket(&f, &h).unwrap()));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}
