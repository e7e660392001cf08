//! Acceptance checks, one line per criterion.

use std::process::ExitCode;

use ito_hermite::cli;
use ito_hermite::report::VerificationReport;
use ito_hermite::suite::{run_suites, Suite, SuiteConfig};

struct Check {
    passed: bool,
    detail: String,
}

/// Every listed row must exist, pass, run at a tolerance no looser than
/// `max_tol` and have at least `min_samples` samples.
fn rows_pass(rows: &[VerificationReport], ids: &[&str], max_tol: f64, min_samples: usize) -> Check {
    let mut passed = true;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for id in ids {
        match rows.iter().find(|r| r.identity_id == *id) {
            None => {
                passed = false;
                notes.push(format!("{id} missing"));
            }
            Some(r) => {
                worst = worst.max(r.max_rel_residual / r.tolerance.max(f64::MIN_POSITIVE));
                if !r.passed || r.tolerance > max_tol || r.samples < min_samples {
                    passed = false;
                    notes.push(format!("{id}: rel {:e} tol {:e} n {}", r.max_rel_residual, r.tolerance, r.samples));
                }
            }
        }
    }
    let detail = if notes.is_empty() { format!("{} rows, worst residual/tolerance {worst:.2e}", ids.len()) } else { notes.join("; ") };
    Check { passed, detail }
}

fn all_of(checks: Vec<Check>) -> Check {
    Check {
        passed: checks.iter().all(|c| c.passed),
        detail: checks.into_iter().map(|c| c.detail).collect::<Vec<_>>().join(" | "),
    }
}

fn verify_bytes(threads: &str) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["ito-hermite", "verify", "--threads", threads], &mut out, &mut err);
    (code, out)
}

fn main() -> ExitCode {
    let start = std::time::Instant::now();
    let rows = run_suites(&Suite::ALL, &SuiteConfig::default());
    let routes: Vec<String> = {
        let names = ["explicit", "laguerre", "kummer", "hyp2f0", "rodrigues"];
        let mut v = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                v.push(format!("route-{}-{}", names[i], names[j]));
            }
        }
        v
    };
    let route_ids: Vec<&str> = routes.iter().map(String::as_str).collect();

    let criteria: Vec<(&str, Check)> = vec![
        ("closed-form anchors (5 routes, 50 points, 1e-12)", rows_pass(&rows, &["closed-form-psi0", "closed-form-psi1", "closed-form-psi2"], 1e-12, 250)),
        ("cross-route agreement (500 samples, 1e-9)", rows_pass(&rows, &route_ids, 1e-9, 500)),
        ("orthogonality and norms (1e-10)", rows_pass(&rows, &["norm-diagonal", "orthogonality"], 1e-10, 1)),
        (
            "spectral eigen-residuals (50 points, 1e-9)",
            rows_pass(&rows, &["eigen-delta", "eigen-tilde-delta", "eigen-euler", "eigen-magnetic", "eigen-landau"], 1e-9, 50),
        ),
        (
            "identity suite and printed-form regressions",
            all_of(vec![
                rows_pass(
                    &rows,
                    &["recurrence-main", "magnus-1", "magnus-2", "magnus-3", "magnus-4", "magnus-5", "symmetry", "burchnall", "ladders"],
                    1e-9,
                    1,
                ),
                rows_pass(&rows, &["monomial-expansion", "beta-half"], 1e-10, 1),
                rows_pass(&rows, &["monomial-expansion-printed-form-fails", "beta-half-printed-form-fails"], 0.5, 1),
            ]),
        ),
        (
            "generating functions (max(1e-9, 10 x tail))",
            rows_pass(&rows, &["gen-full", "gen-partial-v", "gen-partial-u", "gen-weighted", "bilinear"], 1e-9, 20),
        ),
        (
            "integral representations (1e-7)",
            rows_pass(
                &rows,
                &["bessel-rep", "bessel-x-form", "gaussian-rep-c2", "ga3-rep", "monomial-projection", "laguerre-integral", "laguerre-integral-special-cases"],
                1e-7,
                1,
            ),
        ),
        (
            "transforms (forward 1e-8, inverse/S/unitarity 1e-7)",
            all_of(vec![
                rows_pass(&rows, &["bargmann-forward"], 1e-8, 1),
                rows_pass(&rows, &["bargmann-inverse", "s-transform", "bargmann-unitarity"], 1e-7, 1),
            ]),
        ),
        ("bi-order case table and explicit-sum oracle", rows_pass(&rows, &["biorder-case-table", "biorder-leading-terms"], 0.0, 400)),
        ("determinism across thread counts", {
            let (c1, a) = verify_bytes("1");
            let (c4, b) = verify_bytes("4");
            let (c1b, a2) = verify_bytes("1");
            Check {
                passed: c1 == 0 && c4 == 0 && c1b == 0 && a == b && a == a2 && !a.is_empty(),
                detail: format!("{} bytes, exit codes {c1}/{c4}/{c1b}, identical: {}", a.len(), a == b && a == a2),
            }
        }),
    ];

    let mut ok = true;
    for (k, (name, check)) in criteria.iter().enumerate() {
        ok &= check.passed;
        println!("criterion {:>2}: {} {name}: {}", k + 1, if check.passed { "PASS" } else { "FAIL" }, check.detail);
    }
    println!("acceptance: {} in {:.1?}", if ok { "PASS" } else { "FAIL" }, start.elapsed());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
