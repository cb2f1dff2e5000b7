//! Quivers, mutations and type-A recognition.

use proptest::prelude::*;
use stokes_core::cluster::{
    conjugated_quiver_mutation, conjugated_y_seed_mutation, default_labels, dynkin_a, is_dynkin_a,
    quiver_mutation, y_seed_mutation, Quiver, Seed,
};
use stokes_core::exactalg::parse_rf;

fn a_quiver(forward: &[bool]) -> Quiver {
    dynkin_a(default_labels(forward.len() + 1), forward).unwrap()
}

#[test]
fn mutation_of_a3() {
    let q = a_quiver(&[true, true]);
    let m = quiver_mutation(&q, 1).unwrap();
    assert_eq!(
        m.matrix(),
        &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]
    );
    assert!(is_dynkin_a(&m).is_none());
    let s = y_seed_mutation(&Seed::initial(q), 1).unwrap();
    assert_eq!(s.y[0], parse_rf("y1*y2*(1 + y2)^-1").unwrap());
    assert_eq!(s.y[1], parse_rf("y2^-1").unwrap());
    assert_eq!(s.y[2], parse_rf("y3*(1 + y2)").unwrap());
}

#[test]
fn recognizes_paths() {
    let q = a_quiver(&[true, false, true]);
    let d = is_dynkin_a(&q).unwrap();
    assert_eq!(d.path, vec![0, 1, 2, 3]);
    assert_eq!(d.forward, vec![true, false, true]);
    let bad = Quiver::new(default_labels(2), vec![vec![0, 2], vec![-2, 0]]).unwrap();
    assert!(is_dynkin_a(&bad).is_none());
}

#[test]
fn rejects_non_skew() {
    assert!(Quiver::new(default_labels(2), vec![vec![0, 1], vec![1, 0]]).is_err());
    assert!(quiver_mutation(&a_quiver(&[true]), 5).is_err());
}

#[test]
fn json_round_trip() {
    let q = a_quiver(&[false, true, true]);
    assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quiver_mutation_is_an_involution(forward in prop::collection::vec(any::<bool>(), 1..6), k in 0usize..7) {
        let q = a_quiver(&forward);
        let k = k % q.len();
        let twice = quiver_mutation(&quiver_mutation(&q, k).unwrap(), k).unwrap();
        prop_assert_eq!(&twice, &q);
        let c = conjugated_quiver_mutation(&conjugated_quiver_mutation(&q, k, 0).unwrap(), k, 0).unwrap();
        prop_assert_eq!(c, q);
    }

    #[test]
    fn y_seed_mutation_is_an_involution(forward in prop::collection::vec(any::<bool>(), 1..5), k in 0usize..6) {
        let q = a_quiver(&forward);
        let k = k % q.len();
        let s = Seed::initial(q);
        let twice = y_seed_mutation(&y_seed_mutation(&s, k).unwrap(), k).unwrap();
        prop_assert_eq!(&twice, &s);
        let c = conjugated_y_seed_mutation(&conjugated_y_seed_mutation(&s, k, 0).unwrap(), k, 0).unwrap();
        prop_assert_eq!(c, s);
    }
}
