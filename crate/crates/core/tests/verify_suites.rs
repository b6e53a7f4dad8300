use qtop_core::verify::{run_suite, CheckReport, DEFAULT_SEED, SUITES};
use qtop_core::QParams;

fn assert_all_pass(reports: &[CheckReport], r: u32) {
    assert!(!reports.is_empty());
    for rep in reports {
        if rep.skipped.is_some() {
            continue;
        }
        assert!(
            rep.pass,
            "r={r} {}: {:e} > {:e}; failures {:?}",
            rep.name,
            rep.max_abs_error,
            rep.tolerance,
            rep.failures
        );
    }
}

fn run(r: u32, suite: &str) {
    let reports = run_suite(QParams::new(r).unwrap(), suite, None, DEFAULT_SEED).unwrap();
    assert_all_pass(&reports, r);
}

#[test]
fn all_suites_r3() {
    run(3, "all");
}

#[test]
fn all_suites_r5() {
    run(5, "all");
}

#[test]
fn r4_skips_manifold_checks() {
    let reports = run_suite(QParams::new(4).unwrap(), "knot-surgery", None, DEFAULT_SEED).unwrap();
    assert!(reports.iter().all(|r| r.skipped.is_some()));
    run(4, "axioms");
    run(4, "jones");
    run(4, "symmetry");
}

#[test]
fn even_orders() {
    for r in [2u32, 6] {
        for s in ["axioms", "constants", "symmetry", "shift", "residue", "knot-surgery", "vanishing"] {
            run(r, s);
        }
    }
}

#[test]
fn r7_core_identities() {
    for s in ["axioms", "constants", "knot-surgery", "limit"] {
        run(7, s);
    }
}

#[test]
fn single_knot_and_unknown_suite() {
    let p = QParams::new(3).unwrap();
    let reports = run_suite(p, "jones", Some("hopf"), DEFAULT_SEED).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].parameters.iter().any(|(k, v)| k == "knots" && v == "hopf"));
    assert!(run_suite(p, "nope", None, DEFAULT_SEED).is_err());
    assert!(run_suite(p, "jones", Some("nope"), DEFAULT_SEED).is_err());
    assert!(SUITES.contains(&"markov"));
}

#[test]
fn reports_are_deterministic() {
    let p = QParams::new(3).unwrap();
    let a = run_suite(p, "shift", None, 7).unwrap();
    let b = run_suite(p, "shift", None, 7).unwrap();
    assert_eq!(a, b);
}

#[test]
fn failing_report_is_detected() {
    let mut rep = CheckReport::new("probe", 1e-9);
    rep.record("equal", 1.0.into(), 1.0.into());
    assert!(rep.pass);
    rep.record("off", 1.0.into(), 1.1.into());
    assert!(!rep.pass);
    assert!(rep.max_abs_error > 0.09);
    assert!(rep.clone().with_tolerance(0.1).pass);
}
