//! Cartan data and the triangle matrices.

use std::collections::BTreeMap;

use proptest::prelude::*;
use stokes_core::exactalg::{q, Matrix};
use stokes_core::slncore::{
    a_matrix, a_matrix_with, antidiagonal, cartan_data, star_matrix, triple_vars, triples,
    AConvention, TripleIndex, Which,
};
use stokes_core::{MatrixRF, Rf};

fn xs(n: usize) -> BTreeMap<TripleIndex, Rf> {
    triple_vars(n, "x")
        .into_iter()
        .map(|(t, v)| (t, Rf::var(v)))
        .collect()
}

fn product(n: usize, conv: AConvention) -> MatrixRF {
    let x = xs(n);
    let ms: Vec<MatrixRF> = [Which::A1, Which::A2, Which::A3]
        .iter()
        .map(|w| a_matrix_with(n, *w, &x, conv).unwrap())
        .collect();
    Matrix::product(ms.iter()).unwrap()
}

#[test]
fn cartan_examples() {
    let c = cartan_data(3).unwrap();
    assert_eq!(c.h(1), &[2, -1, -1]);
    assert_eq!(c.h(2), &[1, 1, -2]);
    assert_eq!(c.pairing(1, 1), 3);
    assert_eq!(c.pairing(1, 2), 0);
    assert_eq!(c.gram(1, 1), 6);
    let c2 = cartan_data(2).unwrap();
    assert_eq!(c2.h(1), c2.alpha(1));
    assert_eq!(c2.sigma, vec![1, -1]);
}

#[test]
fn triple_counts() {
    for n in 2..=7 {
        assert_eq!(triples(n).len(), (n - 1) * (n - 2) / 2);
        assert!(triples(n).iter().all(|t| t.a + t.b + t.c == n));
    }
}

#[test]
fn sl2_reduces_to_constant_order_three() {
    let a = a_matrix(2, Which::A1, &BTreeMap::new()).unwrap();
    assert_eq!(a.to_string(), "[[0, 1], [-1, -1]]");
    assert!(a.pow(3).unwrap().is_identity());
}

#[test]
fn triple_product_is_identity() {
    for n in 2..=5 {
        assert!(product(n, AConvention::WORKING).is_identity(), "n = {n}");
    }
}

#[test]
fn printed_reading_breaks_the_triple_product() {
    assert!(!product(3, AConvention::PRINTED).is_identity());
    assert!(!product(4, AConvention::PRINTED).is_identity());
}

#[test]
fn determinants_are_unit_monomials() {
    for n in 2..=4 {
        let x = xs(n);
        for w in [Which::A1, Which::A2, Which::A3] {
            let d = a_matrix(n, w, &x).unwrap().det().unwrap();
            let c = d.as_constant().expect("constant determinant");
            assert!(c == q(1, 1) || c == q(-1, 1), "n = {n}: {d}");
        }
    }
}

#[test]
fn star_reverses_diagonals() {
    let d: MatrixRF = Matrix::diag((1..=4).map(Rf::int).collect());
    let s = star_matrix(&d, 4).unwrap();
    assert_eq!(s, Matrix::diag((1..=4).rev().map(Rf::int).collect()));
    assert!(star_matrix(&d, 3).is_err());
    let p: MatrixRF = antidiagonal(3);
    assert!(p.pow(2).unwrap().is_identity());
}

proptest! {
    #[test]
    fn star_is_involutive(entries in proptest::collection::vec(-9i64..9, 9)) {
        let m: MatrixRF = Matrix::from_fn(3, 3, |i, j| Rf::int(entries[3 * i + j]));
        let back = star_matrix(&star_matrix(&m, 3).unwrap(), 3).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn triple_product_at_points(a in 1i64..20, b in 1i64..20, c in 1i64..20) {
        let vals = [a, b, c];
        let x: BTreeMap<TripleIndex, Rf> = triples(4)
            .into_iter()
            .zip(vals)
            .map(|(t, v)| (t, Rf::int(v)))
            .collect();
        let ms: Vec<MatrixRF> = [Which::A1, Which::A2, Which::A3]
            .iter()
            .map(|w| a_matrix(4, *w, &x).unwrap())
            .collect();
        prop_assert!(Matrix::product(ms.iter()).unwrap().is_identity());
    }
}
