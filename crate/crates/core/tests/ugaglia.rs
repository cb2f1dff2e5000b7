//! The Ugaglia graph, its two-form and the comparison with the Ugaglia
//! bracket.

use stokes_core::cli::Status;
use stokes_core::exactalg::{parse_rf, qi, Field, Matrix, Var};
use stokes_core::slncore::TripleIndex;
use stokes_core::ugaglia::{
    build_ugaglia, f_coefficients, graph_form, stokes_pairs, ugaglia_bracket, ugaglia_form,
    verify_ugaglia, UgagliaCoords,
};
use stokes_core::{MatrixQ, Rf};

fn rf(s: &str) -> Rf {
    parse_rf(s).unwrap()
}

fn entry(n: usize, a: &str, b: &str) -> Rf {
    let p = ugaglia_bracket(n).unwrap();
    let i = p.index_of(Var::new(a)).unwrap();
    let j = p.index_of(Var::new(b)).unwrap();
    p.entry(i, j)
}

fn item_status(r: &stokes_core::cli::Report, name: &str) -> Status {
    r.items
        .iter()
        .find(|i| i.name == name)
        .unwrap_or_else(|| panic!("missing item {name}"))
        .status
}

#[test]
fn bracket_examples() {
    assert_eq!(entry(3, "s12", "s13"), rf("2*s23 - s12*s13"));
    assert_eq!(entry(3, "s12", "s23"), rf("s12*s23 - 2*s13"));
    assert_eq!(entry(3, "s13", "s23"), rf("2*s12 - s13*s23"));
    assert_eq!(entry(4, "s13", "s24"), rf("2*s12*s34 - 2*s14*s23"));
    assert!(entry(4, "s12", "s34").is_zero());
    assert!(entry(4, "s14", "s23").is_zero());
}

#[test]
fn bracket_satisfies_jacobi() {
    for n in 3..=4 {
        let p = ugaglia_bracket(n).unwrap();
        let vars: Vec<Rf> = stokes_pairs(n)
            .iter()
            .map(|&(i, j)| Rf::var(Var::new(&format!("s{i}{j}"))))
            .collect();
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                for c in b + 1..vars.len() {
                    let j = p.jacobiator(&vars[a], &vars[b], &vars[c]).unwrap();
                    assert!(j.is_zero(), "n = {n}: ({a}, {b}, {c})");
                }
            }
        }
    }
}

#[test]
fn f_coefficient_examples() {
    let f = f_coefficients(3).unwrap();
    let t = TripleIndex { a: 1, b: 1, c: 1 };
    assert_eq!(f.len(), 1);
    assert_eq!(f[&(t, t)], 0);
    let f4 = f_coefficients(4).unwrap();
    for (&(a, b), &v) in &f4 {
        assert_eq!(f4[&(b, a)], -v, "{a} {b}");
    }
}

#[test]
fn coordinates_and_printed_assembly_shape() {
    let c = UgagliaCoords::new(3);
    assert_eq!(c.dim(), 4);
    let names: Vec<String> = c.log_vars().iter().map(|v| v.name().to_string()).collect();
    assert_eq!(names, ["xi111", "zeta1", "zeta2", "gamma1"]);
    let w = ugaglia_form(3).unwrap();
    assert_eq!(w.omega.rows(), 4);
    assert_eq!(w.omega.transpose(), w.omega.scale(&qi(-1)));
    assert_eq!(UgagliaCoords::new(4).dim(), 8);
}

#[test]
fn stokes_matrix_is_unitriangular() {
    let g = build_ugaglia(3).unwrap();
    assert!(g.s.is_upper_triangular());
    assert!((0..3).all(|i| g.s.get(i, i).is_one()));
    assert_eq!(g.stokes_entries().len(), 3);
    assert!(g.m0.is_lower_triangular());
    let d = g.m0.diagonal();
    assert!(d[0].mul(&d[2]).is_one());
}

#[test]
fn graph_form_n3() {
    let g = build_ugaglia(3).unwrap();
    let w = graph_form(&g, 0, 0).unwrap();
    let expected: MatrixQ = Matrix::from_rows(
        [
            [0, 6, -12, -12],
            [-6, 0, 0, -4],
            [12, 0, 0, -4],
            [12, 4, 4, 0],
        ]
        .iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect(),
    )
    .unwrap();
    assert_eq!(w.omega, expected);
    assert_eq!(w.omega.det().unwrap(), qi(5184));
}

#[test]
fn graph_form_n4_is_constant_and_nondegenerate() {
    let g = build_ugaglia(4).unwrap();
    let w = graph_form(&g, 3, 7).unwrap();
    assert_eq!(w.omega.rows(), 8);
    assert!(!w.omega.det().unwrap().is_zero());
}

#[test]
fn observed_ratio_n3() {
    let r = verify_ugaglia(3, 0, 0).unwrap();
    assert_eq!(r.data["observed_ratio"], "-1/8");
    assert_eq!(item_status(&r, "Omega nondegenerate"), Status::Pass);
    assert_eq!(
        item_status(&r, "m1 is a Casimir on the Stokes entries"),
        Status::Pass
    );
    assert_eq!(item_status(&r, "{s12, s13} = -8 Ugaglia"), Status::Fail);
    assert_eq!(
        item_status(&r, "diag(M0) equals the eigenvalue closed form"),
        Status::Fail
    );
    let inverse = r
        .diagnostics
        .iter()
        .find(|d| d.name.starts_with("diag(M0)^-1"))
        .unwrap();
    assert!(inverse.holds);
}

#[test]
fn observed_ratio_n4_pointwise() {
    let r = verify_ugaglia(4, 2, 3).unwrap();
    assert!(!r.data.contains_key("observed_ratio"));
    assert_eq!(item_status(&r, "Omega nondegenerate"), Status::Pass);
    assert_eq!(
        item_status(&r, "m2 is a Casimir on the Stokes entries"),
        Status::Pass
    );
    let f = r
        .items
        .iter()
        .find(|i| i.name == "{s12, s13} = -8 Ugaglia")
        .unwrap();
    assert_eq!(f.residual.as_deref(), Some("observed ratio -1/8"));
}
