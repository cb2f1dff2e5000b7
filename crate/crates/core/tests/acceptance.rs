//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the README
//! explains each of them. The process exits nonzero when any other
//! criterion fails or when a known failure starts passing.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use stokes_core::cli::{
    flip_report, form_report, ideal_check_report, monodromy_report, sln_triple_report, Report,
    Status,
};
use stokes_core::cluster::{conjugated_quiver_mutation, is_dynkin_a};
use stokes_core::exactalg::{q, Matrix};
use stokes_core::polygon::{Diagonal, Triangulation};
use stokes_core::stokes2::{verify_flip_mutation, verify_fn_pushforward};
use stokes_core::ugaglia::verify_ugaglia;
use stokes_core::MatrixQ;

const KNOWN_FAILURES: &[usize] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn first_failure(r: &Report) -> Option<String> {
    r.failures()
        .first()
        .map(|i| format!("{}: {}", i.name, i.residual.as_deref().unwrap_or("failed")))
}

fn require_all(reports: &[(String, Report)]) -> Outcome {
    for (label, r) in reports {
        if let Some(f) = first_failure(r) {
            return fail(format!("{label}: {f}"));
        }
    }
    let items: usize = reports.iter().map(|(_, r)| r.items.len()).sum();
    ok(format!("{items} items"))
}

fn item_passes(r: &Report, name: &str) -> bool {
    r.items
        .iter()
        .any(|i| i.name == name && i.status == Status::Pass)
}

fn quarter(rows: [[i64; 4]; 4]) -> MatrixQ {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x, 4)).collect())
            .collect(),
    )
    .expect("4x4")
}

fn bivector(r: &Report, key: &str) -> Option<MatrixQ> {
    let rows: Vec<Vec<String>> = serde_json::from_value(r.data.get(key)?.clone()).ok()?;
    let parsed: Option<Vec<Vec<_>>> = rows
        .iter()
        .map(|row| row.iter().map(|s| s.parse().ok()).collect())
        .collect();
    Matrix::from_rows(parsed?).ok()
}

fn monodromy() -> stokes_core::Result<Outcome> {
    let reports = (1..=4)
        .map(|k| Ok((format!("K = {k}"), monodromy_report(k)?)))
        .collect::<stokes_core::Result<Vec<_>>>()?;
    Ok(require_all(&reports))
}

fn two_form() -> stokes_core::Result<Outcome> {
    for k in 1..=4 {
        let r = form_report(&Triangulation::fan(k)?, true)?;
        let pattern = "1/2 Omega = 4 (sum_{l>=j} dlog y_{2j-1} ^ dlog y_{2l}) up to sign";
        for name in [
            "1/2 Omega is log-canonical",
            pattern,
            "P is 1/4-tridiagonal",
        ] {
            if !item_passes(&r, name) {
                return Ok(fail(format!("K = {k}: {name}")));
            }
        }
    }
    Ok(ok("K = 1..4"))
}

fn pushforward() -> stokes_core::Result<Outcome> {
    let mut reports = Vec::new();
    for k in 1..=3 {
        let r = verify_fn_pushforward(k, 0, 0)?;
        if r.parameters["mode"] != "symbolic" {
            return Ok(fail(format!("K = {k} was not checked symbolically")));
        }
        reports.push((format!("K = {k}"), r));
    }
    Ok(require_all(&reports))
}

fn hexagon() -> stokes_core::Result<Outcome> {
    let displays = [
        [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, 0]],
        [[0, -1, 0, 0], [1, 0, -1, 0], [0, 1, 0, 1], [0, 0, -1, 0]],
        [[0, 1, 0, 0], [-1, 0, -1, 1], [0, 1, 0, -1], [0, -1, 1, 0]],
        [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, -1], [0, 0, 1, 0]],
    ];
    let fan = Triangulation::fan(2)?;
    let a4 = fan.quiver();
    if is_dynkin_a(&a4).is_none() {
        return Ok(fail("the fan quiver is not of type A4"));
    }
    for (j, display) in displays.iter().enumerate() {
        let label = j + 1;
        let (p, mutated) = if label == 1 {
            let r = form_report(&fan, true)?;
            (bivector(&r, "bivector"), a4.clone())
        } else {
            let r = flip_report(&fan, label)?;
            if let Some(f) = first_failure(&r) {
                return Ok(fail(format!("T{label}: {f}")));
            }
            let m = conjugated_quiver_mutation(&a4, label - 1, 0)?;
            (bivector(&r, "flipped_bivector"), m)
        };
        let Some(p) = p else {
            return Ok(fail(format!("T{label}: no bivector")));
        };
        if p != quarter(*display) {
            return Ok(fail(format!("T{label}: P = {p} differs from the display")));
        }
        let adj = Matrix::from_fn(4, 4, |a, b| q(mutated.entry(a, b), 4));
        if p != adj {
            return Ok(fail(format!(
                "T{label}: P differs from 1/4 Adj of the mutation"
            )));
        }
    }
    Ok(ok("T1..T4"))
}

fn octagon(diagonals: &[(usize, usize)]) -> stokes_core::Result<Triangulation> {
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
    Triangulation::new(3, 0, ds)
}

fn flip_cases() -> stokes_core::Result<Outcome> {
    let hexagon = Triangulation::fan(2)?;
    let case3 = octagon(&[(2, 4), (4, 6), (1, 6), (1, 4), (6, 8)])?;
    let case4 = octagon(&[(1, 3), (3, 5), (5, 7), (1, 7), (3, 7)])?;
    let runs = [
        (1u64, &hexagon, (4, 6)),
        (2, &hexagon, (3, 6)),
        (3, &case3, (1, 4)),
        (4, &case4, (3, 7)),
    ];
    let mut reports = Vec::new();
    for (case, t, (a, b)) in runs {
        let r = verify_flip_mutation(t, a, b)?;
        if r.parameters["case"] != case {
            return Ok(fail(format!(
                "flip ({a}, {b}) is case {}",
                r.parameters["case"]
            )));
        }
        reports.push((format!("case {case}"), r));
    }
    Ok(require_all(&reports))
}

fn fn_structure() -> stokes_core::Result<Outcome> {
    let reports = (1..=2)
        .map(|k| Ok((format!("K = {k}"), ideal_check_report(k, 0)?)))
        .collect::<stokes_core::Result<Vec<_>>>()?;
    Ok(require_all(&reports))
}

fn sln_triple() -> stokes_core::Result<Outcome> {
    let reports = (2..=4)
        .map(|n| Ok((format!("n = {n}"), sln_triple_report(n)?)))
        .collect::<stokes_core::Result<Vec<_>>>()?;
    Ok(require_all(&reports))
}

fn ugaglia() -> stokes_core::Result<Outcome> {
    let r3 = verify_ugaglia(3, 0, 0)?;
    let r4 = verify_ugaglia(4, 20, 0)?;
    let failures: Vec<String> = [("n = 3", &r3), ("n = 4", &r4)]
        .iter()
        .map(|(label, r)| format!("{label}: {} failing items", r.failures().len()))
        .collect();
    let ratio = r3
        .data
        .get("observed_ratio")
        .and_then(|v| v.as_str())
        .unwrap_or("none")
        .to_string();
    if r3.all_pass() && r4.all_pass() {
        Ok(ok("n = 3 symbolic, n = 4 at 20 points"))
    } else {
        Ok(fail(format!(
            "{}; observed bracket ratio {ratio} instead of -8; diag(M0) is the inverse of the eigenvalue closed form",
            failures.join(", ")
        )))
    }
}

fn determinism() -> stokes_core::Result<Outcome> {
    let bin = env!("CARGO_BIN_EXE_stokes");
    let tri = std::env::temp_dir().join(format!("stokes-acceptance-{}.json", std::process::id()));
    let export = Command::new(bin)
        .args(["triangulation", "export", "--K", "3", "--flip", "2,5"])
        .output()
        .map_err(|e| stokes_core::Error::InvalidArgument(e.to_string()))?;
    std::fs::write(&tri, &export.stdout)
        .map_err(|e| stokes_core::Error::InvalidArgument(e.to_string()))?;
    let tri_path = tri.to_str().expect("utf-8 path").to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["monodromy", "--K", "3"],
        vec!["form", "--K", "2"],
        vec!["form", "--K", "3", "--triangulation", &tri_path],
        vec!["flip", "--K", "2", "--diagonal", "3"],
        vec!["fn-check", "--K", "2"],
        vec!["fn-check", "--K", "4", "--points", "3", "--seed", "9"],
        vec!["ideal-check", "--K", "1", "--seed", "4"],
        vec!["mutation-walk", "--K", "3", "--steps", "5", "--seed", "17"],
        vec!["sln-triple", "--n", "3"],
        vec!["ugaglia", "--n", "3"],
        vec!["ugaglia", "--n", "4", "--points", "3", "--seed", "5"],
        vec!["triangulation", "export", "--K", "3", "--flip", "2,5"],
        vec!["triangulation", "import", &tri_path],
    ];
    let mut result = ok(format!("{} commands", commands.len()));
    for args in &commands {
        let run = || {
            Command::new(bin)
                .args(args)
                .arg("--no-timing")
                .env_remove("STOKES_MAX_K")
                .output()
                .map_err(|e| stokes_core::Error::InvalidArgument(e.to_string()))
        };
        let (a, b) = (run()?, run()?);
        if a.stdout.is_empty() || a.status.code() == Some(2) {
            result = fail(format!("`{}` did not produce a report", args.join(" ")));
            break;
        }
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            result = fail(format!("`{}` differs between runs", args.join(" ")));
            break;
        }
    }
    let _ = std::fs::remove_file(&tri);
    Ok(result)
}

type Criterion = (
    usize,
    &'static str,
    Option<Duration>,
    fn() -> stokes_core::Result<Outcome>,
);

fn main() -> ExitCode {
    std::env::remove_var("STOKES_MAX_K");
    let criteria: [Criterion; 9] = [
        (
            1,
            "monodromy identity, K = 1..4",
            Some(Duration::from_secs(10)),
            monodromy,
        ),
        (
            2,
            "log-canonical form of the fan, K = 1..4",
            Some(Duration::from_secs(60)),
            two_form,
        ),
        (
            3,
            "pushforward onto the Flaschka-Newell bracket, K = 1..3",
            Some(Duration::from_secs(300)),
            pushforward,
        ),
        (4, "hexagon bivectors and quiver mutations", None, hexagon),
        (
            5,
            "flip cases 1-4 agree with Y-seed mutation",
            None,
            flip_cases,
        ),
        (6, "Flaschka-Newell structure, K = 1, 2", None, fn_structure),
        (
            7,
            "A1 A2 A3 = 1, n = 2, 3, 4",
            Some(Duration::from_secs(30)),
            sln_triple,
        ),
        (
            8,
            "Ugaglia bracket, n = 3 symbolic and n = 4 pointwise",
            Some(Duration::from_secs(300)),
            ugaglia,
        ),
        (9, "CLI determinism", None, determinism),
    ];
    let mut unexpected = 0;
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let mut out = match f() {
            Ok(o) => o,
            Err(e) => fail(format!("error: {e}")),
        };
        let elapsed = start.elapsed();
        if let Some(l) = limit {
            if elapsed > l {
                out = fail(format!(
                    "took {:.1} s, limit {} s",
                    elapsed.as_secs_f64(),
                    l.as_secs()
                ));
            }
        }
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (out.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected to fail)",
        };
        if out.pass == known {
            unexpected += 1;
        }
        println!(
            "criterion {id} [{title}]: {tag} ({:.2} s; {})",
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the expected outcome");
        ExitCode::FAILURE
    }
}
