//! Triangulations, flips, quivers and x-variables.

use std::collections::BTreeSet;

use stokes_core::cluster::{conjugated_quiver_mutation, quiver_mutation};
use stokes_core::exactalg::{qi, Monomial, Var};
use stokes_core::polygon::{reachable, Diagonal, Triangulation};
use stokes_core::Rf;

fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn fan_shape() {
    for k in 1..=4 {
        let t = Triangulation::fan(k).unwrap();
        assert_eq!(t.diagonals().len(), 2 * k - 1);
        assert_eq!(t.quiver().len(), 2 * k);
        assert_eq!(t.triangles().len(), 2 * k);
    }
}

#[test]
fn flip_graph_is_complete() {
    for k in 1..=3 {
        let n = 2 * k + 2;
        let all = reachable(&Triangulation::fan(k).unwrap(), 4 * k);
        assert_eq!(all.len(), catalan(n - 2), "K = {k}");
        for (t, _) in &all {
            assert_eq!(t.diagonals().len(), 2 * k - 1);
        }
    }
}

#[test]
fn flip_twice_restores_diagonals() {
    let t = Triangulation::fan(3).unwrap();
    for d in t.diagonals() {
        let f = t.flip(d.a, d.b).unwrap();
        let nd = f.diagonal_by_index(d.index).unwrap().clone();
        let back = f.flip(nd.a, nd.b).unwrap();
        let shape = |x: &Triangulation| {
            x.diagonals()
                .iter()
                .map(|d| (d.a, d.b))
                .collect::<BTreeSet<_>>()
        };
        assert_eq!(shape(&back), shape(&t));
        assert_eq!(back.generation(), 2);
    }
}

#[test]
fn invalid_triangulations_are_rejected() {
    let crossing = vec![
        Diagonal {
            a: 1,
            b: 3,
            index: 2,
            tail: 1,
        },
        Diagonal {
            a: 2,
            b: 4,
            index: 3,
            tail: 2,
        },
        Diagonal {
            a: 1,
            b: 5,
            index: 4,
            tail: 1,
        },
    ];
    assert!(Triangulation::new(2, 0, crossing).is_err());
    assert!(Triangulation::new(2, 0, vec![]).is_err());
    assert!(Triangulation::fan(2).unwrap().flip(1, 2).is_err());
}

#[test]
fn quiver_commutes_with_flips() {
    for k in 1..=3 {
        for (t, _) in reachable(&Triangulation::fan(k).unwrap(), 3) {
            for d in t.diagonals() {
                let f = t.flip(d.a, d.b).unwrap();
                let q = t.quiver();
                let m = conjugated_quiver_mutation(&q, d.index - 1, 0).unwrap();
                assert_eq!(
                    f.quiver().matrix(),
                    m.matrix(),
                    "K = {k}, flip y{}",
                    d.index
                );
                if q.entry(0, d.index - 1) == 0 {
                    let plain = quiver_mutation(&q, d.index - 1).unwrap();
                    assert_eq!(plain.matrix(), m.matrix());
                }
            }
        }
    }
}

#[test]
fn fan_x_variables_closed_form() {
    for k in 1..=4 {
        let t = Triangulation::fan(k).unwrap();
        let x = t.x_variables();
        let y = |j: usize| Var::new(&format!("y{j}"));
        for l in 2..=2 * k {
            let m = Monomial::from_pairs((1..=l).map(|j| (y(j), if j % 2 == 1 { 1 } else { -1 })));
            assert_eq!(x[&l], Rf::monomial(qi(1), m), "K = {k}, l = {l}");
        }
        assert_eq!(x[&(2 * k + 1)], x[&(2 * k)]);
        assert_eq!(x[&(2 * k + 2)], Rf::var(y(1)));
    }
}

#[test]
fn json_round_trip_and_flip_cases() {
    let t = Triangulation::fan(2).unwrap().flip(3, 6).unwrap();
    assert_eq!(Triangulation::from_json(&t.to_json()).unwrap(), t);
    let fan = Triangulation::fan(2).unwrap();
    let cases: Vec<u8> = (2..=4)
        .map(|j| fan.classify_flip(j, 6).unwrap().case)
        .collect();
    assert_eq!(cases, vec![1, 2, 1]);
}
