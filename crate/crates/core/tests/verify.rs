use wallcx::homology::Verdict;
use wallcx::verify::{run_suite, Suite, VerifyOptions, REPORT_SCHEMA};

#[test]
fn algebra_suite_is_deterministic_and_passes() {
    let opts = VerifyOptions { seed: 7, budget: 0 };
    let a = run_suite(Suite::Algebra, &opts).unwrap();
    let b = run_suite(Suite::Algebra, &opts).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.verdict, Verdict::Pass);
    assert_eq!(a.schema, REPORT_SCHEMA);
    assert!(a.get("wall_axioms").is_some());
    let csv = a.to_csv();
    assert_eq!(csv.lines().count(), a.checks.len() + 1);
}

#[test]
fn seeds_change_random_inputs_only() {
    let a = run_suite(Suite::Posets, &VerifyOptions { seed: 1, budget: 0 }).unwrap();
    let b = run_suite(Suite::Posets, &VerifyOptions { seed: 2, budget: 0 }).unwrap();
    let ids = |r: &wallcx::verify::VerificationReport| {
        r.checks.iter().map(|c| c.id.clone()).collect::<Vec<_>>()
    };
    assert_eq!(ids(&a), ids(&b));
    assert_eq!(a.verdict, Verdict::Pass);
    assert_eq!(b.verdict, Verdict::Pass);
}

#[test]
fn complexes_and_connectivity_pass() {
    let opts = VerifyOptions::default();
    for s in [Suite::Complexes, Suite::Connectivity] {
        let r = run_suite(s, &opts).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.to_json());
    }
}
