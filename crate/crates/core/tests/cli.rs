use std::fs;

use prymconic::cli::{run, run_suite, Suite, VerificationReport};
use prymconic::conicbundle::ConicBundleInstance;

fn args(list: &[&str]) -> Vec<String> {
    std::iter::once("prymconic").chain(list.iter().copied()).map(String::from).collect()
}

#[test]
fn verify_writes_sorted_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(args(&["verify", "--suite", "all", "--seed", "3", "--json", p])), 0);
    let report: VerificationReport = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.passed);
    assert_eq!(report.seed, 3);
    assert!(report.checks.windows(2).all(|w| w[0].id < w[1].id));
    for c in &report.checks {
        assert_eq!(c.computed_value().unwrap().unwrap(), c.expected_value().unwrap(), "{}", c.id);
    }
}

#[test]
fn each_suite_selects_its_prefix() {
    for (suite, prefix) in [(Suite::Chow, "chow."), (Suite::Counts, "counts."), (Suite::Slope, "slope.")] {
        let r = run_suite(suite, 1);
        assert!(r.passed && !r.checks.is_empty());
        assert!(r.checks.iter().all(|c| c.id.starts_with(prefix)), "{prefix}");
    }
}

#[test]
fn unknown_suite_or_flag_exits_one() {
    assert_eq!(run(args(&["verify", "--suite", "nonsense"])), 1);
    assert_eq!(run(args(&["construct", "--bogus"])), 1);
}

#[test]
fn construct_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert_eq!(run(args(&["construct", "--seed", "6", "--json", p.to_str().unwrap()])), 0);
    }
    let (ta, tb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    let inst = ConicBundleInstance::from_json(&ta).unwrap();
    assert_eq!(inst.seed, Some(6));
}

#[test]
fn sweep_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sweep.json");
    assert_eq!(run(args(&["sweep", "--seed", "7", "--samples", "1", "--json", p.to_str().unwrap()])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 1);
}
