//! Seeded generators and the theorem-verification suites.

pub mod generators;
pub mod instances;
mod suites;

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::tensorlaw::TensorConfig;

pub use generators::{gen_contraction, gen_nonneg_irreducible, gen_sn_matrix, gen_unitary, Gen, Seed};

/// Suite names, in run order for `all`.
pub const SUITE_NAMES: [&str; 19] = [
    "prop_1_1",
    "prop_1_2",
    "prop_1_3",
    "lemma_2_1",
    "thm_2_2",
    "thm_2_5",
    "prop_2_8",
    "prop_2_9",
    "thm_2_10",
    "lemma_2_11",
    "cor_2_12",
    "thm_2_13",
    "prop_2_14",
    "lemma_3_2",
    "lemma_3_3",
    "thm_3_1",
    "example_3_4",
    "cor_3_5",
    "cor_3_6",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite_name: String,
    pub trials: usize,
    pub failures: Vec<VerificationReport>,
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Trial = fn(&mut Gen, usize, &TensorConfig) -> Result<VerificationReport>;

fn trial_fn(name: &str) -> Option<Trial> {
    Some(match name {
        "prop_1_1" => suites::prop_1_1,
        "prop_1_2" => suites::prop_1_2,
        "prop_1_3" => suites::prop_1_3,
        "lemma_2_1" => suites::lemma_2_1,
        "thm_2_2" => suites::thm_2_2,
        "thm_2_5" => suites::thm_2_5,
        "prop_2_8" => suites::prop_2_8,
        "prop_2_9" => suites::prop_2_9,
        "thm_2_10" => suites::thm_2_10,
        "lemma_2_11" => suites::lemma_2_11,
        "cor_2_12" => suites::cor_2_12,
        "thm_2_13" => suites::thm_2_13,
        "prop_2_14" => suites::prop_2_14,
        "lemma_3_2" => suites::lemma_3_2,
        "lemma_3_3" => suites::lemma_3_3,
        "thm_3_1" => suites::thm_3_1,
        "example_3_4" => suites::example_3_4,
        "cor_3_5" => suites::cor_3_5,
        "cor_3_6" => suites::cor_3_6,
        _ => return None,
    })
}

fn lookup(name: &str) -> Result<Trial> {
    trial_fn(name).ok_or_else(|| {
        Error::Usage(format!("unknown suite {name:?}; expected one of {} or all", SUITE_NAMES.join(", ")))
    })
}

fn trial_report(f: Trial, name: &str, trial: usize, seed: Seed, cfg: &TensorConfig) -> Result<VerificationReport> {
    let mut g = seed.derive_str(name).derive(trial as u64).rng();
    let report = match f(&mut g, trial, cfg) {
        Ok(r) => r,
        Err(e @ Error::Resource(_)) => return Err(e),
        Err(e) => VerificationReport::new(name).quantity("error", e.to_string()).verdict(false),
    };
    Ok(report.input("suite_seed", seed.value()).input("trial", trial))
}

/// Replays trial `trial` of a suite exactly as [`run_suite`] runs it.
pub fn run_trial(name: &str, trial: usize, seed: Seed, cfg: &TensorConfig) -> Result<VerificationReport> {
    let f = lookup(name)?;
    cfg.tol.validate()?;
    trial_report(f, name, trial, seed, cfg)
}

/// Runs `trials` trials of one suite. Trial `i` draws from
/// `seed.derive_str(name).derive(i)`, and its report records both.
pub fn run_suite(name: &str, trials: usize, seed: Seed, cfg: &TensorConfig) -> Result<SuiteResult> {
    let f = lookup(name)?;
    cfg.tol.validate()?;
    let start = Instant::now();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let report = trial_report(f, name, trial, seed, cfg)?;
        if !report.passed() {
            failures.push(report);
        }
    }
    Ok(SuiteResult { suite_name: name.to_string(), trials, failures, elapsed: start.elapsed() })
}

/// One suite by name, or every suite for `"all"`.
pub fn run_suites(name: &str, trials: usize, seed: Seed, cfg: &TensorConfig) -> Result<Vec<SuiteResult>> {
    if name == "all" {
        SUITE_NAMES.iter().map(|s| run_suite(s, trials, seed, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, trials, seed, cfg)?])
    }
}
