//! Rational-function arithmetic, calculus, substitution and matrices.

use std::collections::HashMap;

use num_traits::Signed;
use proptest::prelude::*;
use stokes_core::exactalg::{parse_rf, q, qi, Field, Matrix, Monomial, Polynomial, Var};
use stokes_core::{MatrixRF, Rf, Q};

fn rf(s: &str) -> Rf {
    parse_rf(s).expect("parse")
}

fn pt(pairs: &[(&str, Q)]) -> HashMap<Var, Q> {
    pairs
        .iter()
        .map(|(n, v)| (Var::new(n), v.clone()))
        .collect()
}

#[test]
fn ring_examples() {
    assert_eq!(rf("(y+1)") + rf("(y-1)"), rf("2*y"));
    assert!((rf("1/y") * rf("y")).is_one());
    let f = rf("(1+y^2)/y").pow(2).unwrap();
    assert_eq!(f, rf("(1+2*y^2+y^4)/y^2"));
    assert!(f.is_polynomial());
}

#[test]
fn equality_by_cross_multiplication() {
    assert_eq!(rf("(y^2-1)/(y-1)"), rf("y+1"));
    assert_ne!(rf("1/y"), rf("y"));
    let a = rf("-y1^-2");
    let b = rf("(-1-y2)/(y1^2*(1+y2))");
    assert_eq!(a, b);
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(rf("y").div(&Rf::zero()).is_err());
    assert!(Rf::zero().pow(-1).is_err());
}

#[test]
fn derivative_examples() {
    let y = Var::new("y");
    assert_eq!(rf("-y^-2").differentiate(y), rf("2*y^-3"));
    assert_eq!(rf("1+y^2").differentiate(y), rf("2*y"));
    let f = rf("(1+y^2)/(x+y)");
    let d = f.differentiate(y);
    let h = q(1, 1000);
    for (xv, yv) in [(q(1, 2), q(3, 1)), (q(2, 3), q(5, 7)), (q(4, 1), q(1, 9))] {
        let p0 = pt(&[("x", xv.clone()), ("y", yv.clone())]);
        let exact = d.eval_at(&p0).unwrap();
        let p1 = pt(&[("x", xv.clone()), ("y", yv.clone() + h.clone())]);
        let m1 = pt(&[("x", xv.clone()), ("y", yv.clone() - h.clone())]);
        let fd = (f.eval_at(&p1).unwrap() - f.eval_at(&m1).unwrap()) / (qi(2) * h.clone());
        let err = (fd - exact).abs();
        assert!(err < q(1, 1000), "finite difference error {err}");
    }
}

#[test]
fn substitution_examples() {
    let y = Var::new("y");
    let f = rf("y^2");
    let s: HashMap<Var, Rf> = [(y, rf("1/y"))].into_iter().collect();
    assert_eq!(f.substitute(&s).unwrap(), rf("y^-2"));
    let id: HashMap<Var, Rf> = [(y, rf("y"))].into_iter().collect();
    let g = rf("(1+y^3)/(2+y)");
    assert_eq!(g.substitute(&id).unwrap(), g);
    let z: HashMap<Var, Rf> = [(y, Rf::zero())].into_iter().collect();
    assert!(rf("1/y").substitute(&z).is_err());
}

#[test]
fn evaluation_examples() {
    assert_eq!(rf("-y^-2").eval_at(&pt(&[("y", qi(2))])).unwrap(), q(-1, 4));
    let lam = rf("y2^2*y4^2");
    assert_eq!(
        lam.eval_at(&pt(&[("y2", qi(2)), ("y4", qi(3))])).unwrap(),
        qi(36)
    );
    assert!(rf("1/(y-1)").eval_at(&pt(&[("y", qi(1))])).is_err());
}

#[test]
fn canonical_string_round_trip() {
    for s in [
        "-3/2*y1^2*y2^-1 + y10",
        "(1 + y2^2)/(y1 + y3)^2",
        "0",
        "7/5",
    ] {
        let f = rf(s);
        let printed = f.to_string();
        assert_eq!(rf(&printed), f, "{printed}");
        assert_eq!(rf(&printed).to_string(), printed);
    }
    assert_eq!(rf("y10 + y2").to_string(), "y2 + y10");
}

fn v_mat(y: &Rf) -> MatrixRF {
    Matrix::from_rows(vec![
        vec![Rf::zero(), -y.clone()],
        vec![y.inv().unwrap(), Rf::zero()],
    ])
    .unwrap()
}

#[test]
fn matrix_examples() {
    let y = rf("y");
    let vi = v_mat(&y).inverse().unwrap();
    assert_eq!(
        vi,
        Matrix::from_rows(vec![
            vec![Rf::zero(), y.clone()],
            vec![-y.inv().unwrap(), Rf::zero()]
        ])
        .unwrap()
    );
    let a: MatrixRF = Matrix::from_rows(vec![
        vec![Rf::int(0), Rf::int(1)],
        vec![Rf::int(-1), Rf::int(-1)],
    ])
    .unwrap();
    assert!(a.pow(3).unwrap().is_identity());
    let d = Matrix::diag(vec![rf("1/x"), rf("x")]);
    assert!(d.det().unwrap().is_one());
    assert!(a.mul(&Matrix::identity(3)).is_err());
    let sing: MatrixRF =
        Matrix::from_rows(vec![vec![rf("x"), rf("y")], vec![rf("x^2"), rf("x*y")]]).unwrap();
    assert!(sing.inverse().is_err());
}

#[test]
fn large_inverse_uses_elimination() {
    let n = 6;
    let m: MatrixRF = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            rf("1 + x")
        } else if j == i + 1 {
            rf("y")
        } else if i == j + 2 {
            rf("x*y")
        } else {
            Rf::zero()
        }
    });
    let inv = m.inverse().unwrap();
    assert!(m.mul(&inv).unwrap().is_identity());
    let d = m.det().unwrap();
    assert_eq!(d, m.transpose().det().unwrap());
    assert!((d * inv.det().unwrap()).is_one());
}

fn small_poly() -> impl Strategy<Value = Rf> {
    let term = (-3i64..=3, 0i32..=2, -1i32..=2, 0i32..=1);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let (a, b, c) = (Var::new("a"), Var::new("b"), Var::new("c"));
        let p = Polynomial::from_terms(
            ts.into_iter()
                .map(|(k, ea, eb, ec)| (Monomial::from_pairs([(a, ea), (b, eb), (c, ec)]), qi(k))),
        );
        Rf::from_poly(p)
    })
}

fn small_rf() -> impl Strategy<Value = Rf> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            n
        } else {
            n.div(&(d + Rf::int(7))).unwrap_or_else(|_| Rf::one())
        }
    })
}

fn sample_point() -> HashMap<Var, Q> {
    pt(&[("a", q(3, 7)), ("b", q(-5, 2)), ("c", q(11, 13))])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(f in small_rf(), g in small_rf(), h in small_rf()) {
        prop_assert_eq!((&f + &g) + h.clone(), f.clone() + (g.clone() + h.clone()));
        prop_assert_eq!((&f * &g) * h.clone(), f.clone() * (g.clone() * h.clone()));
        prop_assert_eq!(&f * &(&g + &h), (&f * &g) + (&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
        if !f.is_zero() {
            prop_assert!((&f * &f.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn leibniz_rule(f in small_rf(), g in small_rf()) {
        let b = Var::new("b");
        let lhs = (&f * &g).differentiate(b);
        let rhs = &f * &g.differentiate(b) + &g * &f.differentiate(b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in small_rf(), g in small_rf()) {
        let p = sample_point();
        if let (Ok(fv), Ok(gv)) = (f.eval_at(&p), g.eval_at(&p)) {
            prop_assert_eq!((&f * &g).eval_at(&p).unwrap(), fv.clone() * gv.clone());
            prop_assert_eq!((&f + &g).eval_at(&p).unwrap(), fv.clone() + gv.clone());
            if !gv.is_zero() {
                prop_assert_eq!((&f / &g).eval_at(&p).unwrap(), fv / gv);
            }
        }
    }

    #[test]
    fn print_parse_round_trip(f in small_rf()) {
        prop_assert_eq!(rf(&f.to_string()), f);
    }

    #[test]
    fn inverse_times_matrix_is_identity(entries in prop::collection::vec(small_poly(), 9)) {
        let m: MatrixRF = Matrix::new(3, 3, entries).unwrap();
        if !m.det().unwrap().is_zero() {
            let inv = m.inverse().unwrap();
            prop_assert!(m.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&m).unwrap().is_identity());
        }
    }
}
