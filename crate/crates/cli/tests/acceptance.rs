//! Acceptance battery: one test per criterion, each driving the verification
//! suites through the public API, printing a pass line with its wall-clock
//! time and asserting the per-criterion runtime bound.

use std::time::{Duration, Instant};

use qimm_core::report::Report;
use qimm_core::suites::{run, VerifyConfig};

fn base() -> VerifyConfig {
    VerifyConfig::default()
}

fn run_expect_pass(label: &str, config: &VerifyConfig) -> Report<VerifyConfig> {
    let report = run(config).expect("configuration is valid");
    for check in &report.checks {
        assert!(
            check.passed(),
            "{}: suite {} with {:?} failed: {}",
            label,
            check.suite,
            check.params,
            check.witness.clone().unwrap_or_default()
        );
    }
    report
}

fn finish(label: &str, start: Instant, bound: Option<Duration>) {
    let elapsed = start.elapsed();
    match bound {
        Some(bound) => {
            println!(
                "{}: PASS in {:.1}s (bound {}s)",
                label,
                elapsed.as_secs_f64(),
                bound.as_secs()
            );
            assert!(
                elapsed < bound,
                "{} exceeded its runtime bound: {:.1}s",
                label,
                elapsed.as_secs_f64()
            );
        }
        None => println!("{}: PASS in {:.1}s", label, elapsed.as_secs_f64()),
    }
}

#[test]
fn r_matrix_relations_for_both_sample_parameters() {
    let start = Instant::now();
    for n in [2, 3] {
        for q in ["3/2", "5/7"] {
            let config = VerifyConfig {
                suites: vec!["rmatrix".into()],
                n,
                q: q.into(),
                ..base()
            };
            run_expect_pass("r-matrix relations", &config);
        }
    }
    finish("r-matrix relations", start, Some(Duration::from_secs(1)));
}

#[test]
fn hecke_idempotent_families_to_degree_four() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["hecke".into()],
            n,
            ..base()
        };
        run_expect_pass("hecke idempotents", &config);
    }
    finish("hecke idempotents", start, Some(Duration::from_secs(30)));
}

#[test]
fn rtt_representations_up_to_three_legs() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["rtt".into()],
            n,
            ..base()
        };
        run_expect_pass("rtt representations", &config);
    }
    finish("rtt representations", start, Some(Duration::from_secs(60)));
}

#[test]
fn immanant_centrality_and_tableau_independence() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["centrality".into(), "tableau-independence".into()],
            n,
            ..base()
        };
        run_expect_pass("centrality", &config);
    }
    finish("centrality", start, Some(Duration::from_secs(300)));
}

#[test]
fn eigenvalues_match_the_tableau_sum_oracle() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["eigenvalues".into()],
            n,
            ..base()
        };
        run_expect_pass("factorial Schur eigenvalues", &config);
    }
    finish(
        "factorial Schur eigenvalues",
        start,
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn eigenvalue_matrix_has_full_row_rank() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["independence".into()],
            n,
            ..base()
        };
        let report = run_expect_pass("eigenvalue independence", &config);
        let values = report.checks[0].values.as_ref().expect("rank values");
        assert_eq!(values["rank"], values["rows"]);
    }
    finish("eigenvalue independence", start, None);
}

#[test]
fn capelli_identities_certified_by_ideal_membership() {
    let start = Instant::now();
    let config = VerifyConfig {
        suites: vec!["capelli".into()],
        ..base()
    };
    let report = run_expect_pass("capelli identities", &config);
    let single_box = report
        .checks
        .iter()
        .find(|c| {
            c.params.get("mu").map(String::as_str) == Some("(1)")
                && c.params.get("check").map(String::as_str) == Some("entrywise")
        })
        .expect("single-box entrywise check present");
    assert_eq!(
        single_box.values.as_ref().expect("residual counts")["nonzero_residuals"],
        "0"
    );
    finish("capelli identities", start, Some(Duration::from_secs(600)));
}

#[test]
fn newton_identities_as_operator_and_eigenvalue_series() {
    let start = Instant::now();
    for n in [2, 3] {
        let config = VerifyConfig {
            suites: vec!["newton".into()],
            n,
            ..base()
        };
        run_expect_pass("newton identities", &config);
    }
    finish("newton identities", start, Some(Duration::from_secs(120)));
}

#[test]
fn full_runs_are_byte_identical() {
    let start = Instant::now();
    let config = base();
    let first = run_expect_pass("determinism", &config).to_json();
    let second = run(&config).expect("configuration is valid").to_json();
    assert!(
        first == second,
        "consecutive full runs rendered different reports"
    );
    finish("determinism", start, None);
}
