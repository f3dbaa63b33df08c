use specradius::harness::{run_suite, run_suites, Seed, SUITE_NAMES};
use specradius::tensorlaw::TensorConfig;
use specradius::Error;

#[test]
fn every_suite_passes_on_fixed_seeds() {
    let cfg = TensorConfig::default();
    for seed in [1, 2] {
        for name in SUITE_NAMES {
            let r = run_suite(name, 20, Seed(seed), &cfg).unwrap();
            assert_eq!(r.trials, 20);
            assert!(r.passed(), "{name} seed {seed}: {}", serde_json::to_string(&r.failures).unwrap());
        }
    }
}

#[test]
fn all_runs_each_suite_once() {
    let results = run_suites("all", 2, Seed(3), &TensorConfig::default()).unwrap();
    let names: Vec<&str> = results.iter().map(|r| r.suite_name.as_str()).collect();
    assert_eq!(names, SUITE_NAMES);
}

#[test]
fn small_size_cap_is_a_resource_error() {
    let cfg = TensorConfig::default().with_size_cap(3);
    assert!(matches!(run_suite("prop_2_8", 1, Seed(0), &cfg), Err(Error::Resource(_))));
}
